#include "kontact/structure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kontact/error.hpp"

namespace kontact {

namespace {

GeometryData from_chart(const ChartGeometry& cg) {
  GeometryData g;
  g.dim = cg.dim;
  g.eta = cg.eta;
  g.xi = cg.xi;
  g.phi = cg.phi;
  g.g = cg.g;
  g.ginv = cg.ginv;
  g.deta = cg.deta;
  g.h = cg.h;
  g.l = cg.l;
  g.nabla_xi_h = cg.nabla_xi_h;
  g.lie_xi_h = cg.lie_xi_h;
  g.curvature = cg.curvature;
  g.nabla_phi = cg.nabla_phi;
  return g;
}

GeometryData from_frame(const FrameGeometry& fg) {
  GeometryData g;
  g.dim = fg.dim;
  g.eta = fg.eta;
  g.xi = fg.xi;
  g.phi = fg.phi;
  g.g = fg.g;
  g.ginv = fg.ginv;
  g.deta = fg.deta;
  g.h = fg.h;
  g.l = fg.l;
  g.nabla_xi_h = fg.nabla_xi_h;
  g.lie_xi_h = fg.lie_xi_h;
  g.curvature = fg.curvature;
  g.nabla_phi = fg.nabla_phi;
  return g;
}

/// Values of (eta, xi, phi, g, deta) only; never inverts g, so a degenerate
/// metric surfaces as a failed check instead of an exception.
struct PointState {
  int dim = 0;
  Vec eta, xi;
  Matrix phi, g, deta;
};

PointState point_state(const ContactMetricStructure& s, const Vec& x) {
  PointState ps;
  if (s.is_chart()) {
    const ChartStructureData& cd = s.chart();
    Point p(x);
    ps.dim = cd.dim;
    std::vector<Jet> eta = eval_field(cd.eta, p, 1);
    ps.eta.resize(static_cast<std::size_t>(cd.dim));
    ps.deta = Matrix(cd.dim, cd.dim);
    for (int i = 0; i < cd.dim; ++i) {
      ps.eta[static_cast<std::size_t>(i)] = eta[i].v;
      for (int j = 0; j < cd.dim; ++j) ps.deta(i, j) = eta[j].g[i] - eta[i].g[j];
    }
    ps.xi = value_of(cd.xi, p).to_vector();
    ps.phi = value_of(cd.phi, p).to_matrix();
    ps.g = value_of(cd.g, p).to_matrix();
    return ps;
  }
  const LieFrameModel& m = s.frame();
  ps.dim = m.dim;
  ps.eta = m.eta;
  ps.xi = m.xi;
  ps.phi = m.phi;
  ps.g = m.g;
  ps.deta = Matrix(m.dim, m.dim);
  for (int i = 0; i < m.dim; ++i)
    for (int j = 0; j < m.dim; ++j) {
      double v = 0.0;
      for (int k = 0; k < m.dim; ++k) v += m.eta[static_cast<std::size_t>(k)] * m.c_at(k, i, j);
      ps.deta(i, j) = -v;
    }
  return ps;
}

int permutation_sign(const std::vector<int>& perm) {
  int inv = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inv;
  return (inv % 2 == 0) ? 1 : -1;
}

Matrix outer(const Vec& u, const Vec& v) {
  Matrix m(static_cast<int>(u.size()), static_cast<int>(v.size()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m(i, j) = u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
  return m;
}

} // namespace

int ContactMetricStructure::dim() const {
  return is_chart() ? chart().dim : frame().dim;
}

std::string ContactMetricStructure::name() const {
  return is_chart() ? chart().name : frame().name;
}

std::vector<Vec> ContactMetricStructure::sample_points() const {
  if (!is_chart()) return {Vec{}};
  return kontact::sample_points(chart().plan);
}

GeometryData geometry_at(const ContactMetricStructure& s, const Vec& x) {
  if (s.is_chart()) {
    const ChartStructureData& cd = s.chart();
    return from_chart(compute_chart_geometry(cd.eta, cd.xi, cd.phi, cd.g, Point(x)));
  }
  return from_frame(compute_frame_geometry(s.frame()));
}

double volume_form_coefficient(const Vec& eta, const Matrix& deta) {
  const int d = static_cast<int>(eta.size());
  const int n = (d - 1) / 2;
  std::vector<int> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), 0);
  double sum = 0.0;
  do {
    double term = eta[static_cast<std::size_t>(perm[0])];
    if (term == 0.0) continue;
    for (int i = 0; i < n; ++i) term *= deta(perm[static_cast<std::size_t>(1 + 2 * i)],
                                             perm[static_cast<std::size_t>(2 + 2 * i)]);
    sum += permutation_sign(perm) * term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  double norm = 1.0;
  for (int i = 1; i <= n; ++i) norm *= 2.0 * i;   // 2^n n!
  return sum / norm;
}

VerificationReport verify_axioms(const ContactMetricStructure& s, const Vec& x, double tol) {
  PointState ps = point_state(s, x);
  const int d = ps.dim;
  VerificationReport rep;
  rep.subject = s.name();

  double r1 = std::fabs(dot(ps.eta, ps.xi) - 1.0);
  rep.add("reeb-normalization", r1, tol);

  Matrix phi2 = ps.phi * ps.phi;
  Matrix expected = outer(ps.xi, ps.eta) - Matrix::identity(d);
  rep.add("phi-square", max_abs(phi2 - expected), tol);

  rep.add("phi-xi", max_abs(ps.phi * ps.xi), tol);

  Matrix gphi = ps.g * ps.phi;
  rep.add("deta-compatibility", max_abs(ps.deta - 2.0 * gphi), tol);

  Matrix gs = 0.5 * (ps.g + transpose(ps.g));
  double asym = max_abs(ps.g - transpose(ps.g));
  auto [emin, emax] = symmetric_eigen_range(gs);
  (void)emax;
  double spd_deficit = std::max(0.0, 1e-9 - emin);
  rep.add("metric-spd", std::max(asym, spd_deficit), tol);

  double vol = std::fabs(volume_form_coefficient(ps.eta, ps.deta));
  rep.add("volume-form", std::max(0.0, 1e-6 - vol), tol);

  return rep;
}

DerivedTensorsReport derived_tensors(const ContactMetricStructure& s, const Vec& x, double tol) {
  DerivedTensorsReport out;
  out.geo = geometry_at(s, x);
  const GeometryData& geo = out.geo;
  VerificationReport& rep = out.invariants;
  rep.subject = s.name();

  Matrix gh = geo.g * geo.h;
  rep.add("h-symmetric", max_abs(gh - transpose(gh)), tol);
  rep.add("h-anticommutes-phi", max_abs(geo.h * geo.phi + geo.phi * geo.h), tol);
  rep.add("h-xi", max_abs(geo.h * geo.xi), tol);
  Matrix gl = geo.g * geo.l;
  rep.add("l-symmetric", max_abs(gl - transpose(gl)), tol);
  return out;
}

VerificationReport check_structural_identities(const ContactMetricStructure& s, const Vec& x,
                                               double tol) {
  GeometryData geo = geometry_at(s, x);
  VerificationReport rep;
  rep.subject = s.name();

  Matrix h2 = geo.h * geo.h;
  Matrix rhs1 = geo.phi - h2 * geo.phi - geo.phi * geo.l;
  rep.add("nabla-xi-h-identity", max_abs(geo.nabla_xi_h - rhs1), tol);

  Matrix lhs2 = geo.phi * geo.l * geo.phi - geo.l;
  Matrix rhs2 = 2.0 * (h2 + geo.phi * geo.phi);
  rep.add("phi-l-phi-identity", max_abs(lhs2 - rhs2), tol);

  Matrix rhs3 = geo.nabla_xi_h + 2.0 * (geo.phi * geo.h) + 2.0 * (geo.phi * h2);
  rep.add("lie-xi-h-identity", max_abs(geo.lie_xi_h - rhs3), tol);

  return rep;
}

VerificationReport check_sasakian(const ContactMetricStructure& s, const Vec& x, double tol) {
  GeometryData geo = geometry_at(s, x);
  const int d = geo.dim;
  VerificationReport rep;
  rep.subject = s.name();

  // R(e_i, e_j) xi = eta_j e_i - eta_i e_j.
  double r_curv = 0.0;
  for (int l = 0; l < d; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double v = 0.0;
        for (int k = 0; k < d; ++k)
          v += geo.curvature.at({l, i, j, k}) * geo.xi[static_cast<std::size_t>(k)];
        double want = geo.eta[static_cast<std::size_t>(j)] * (l == i ? 1.0 : 0.0) -
                      geo.eta[static_cast<std::size_t>(i)] * (l == j ? 1.0 : 0.0);
        r_curv = std::max(r_curv, std::fabs(v - want));
      }
  rep.add("sasakian-curvature", r_curv, tol);

  // (grad_{e_i} phi) e_j = g_{ij} xi - eta_j e_i.
  double r_cov = 0.0;
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j) {
        double want = geo.g(i, j) * geo.xi[static_cast<std::size_t>(k)] -
                      geo.eta[static_cast<std::size_t>(j)] * (k == i ? 1.0 : 0.0);
        r_cov = std::max(r_cov, std::fabs(geo.nabla_phi_at(i, k, j) - want));
      }
  rep.add("sasakian-covariant", r_cov, tol);

  // The two characterisations must agree (both pass or both fail).
  bool agree = ((r_curv <= tol) == (r_cov <= 10.0 * tol)) &&
               ((r_cov <= tol) == (r_curv <= 10.0 * tol));
  rep.add("sasakian-equivalence", agree ? 0.0 : 1.0, 0.5);

  return rep;
}

VerificationReport check_kcontact(const ContactMetricStructure& s, const Vec& x, double tol) {
  GeometryData geo = geometry_at(s, x);
  VerificationReport rep;
  rep.subject = s.name();
  rep.add("h-vanishes", max_abs(geo.h), tol);
  Matrix expected = Matrix::identity(geo.dim) - outer(geo.xi, geo.eta);
  rep.add("kcontact-curvature", max_abs(geo.l - expected), tol);
  return rep;
}

VerificationReport verify_axioms_sampled(const ContactMetricStructure& s, double tol) {
  return worst_over_samples(
      s, [tol](const ContactMetricStructure& st, const Vec& x) { return verify_axioms(st, x, tol); });
}

VerificationReport check_structural_identities_sampled(const ContactMetricStructure& s,
                                                       double tol) {
  return worst_over_samples(s, [tol](const ContactMetricStructure& st, const Vec& x) {
    return check_structural_identities(st, x, tol);
  });
}

VerificationReport check_sasakian_sampled(const ContactMetricStructure& s, double tol) {
  return worst_over_samples(
      s, [tol](const ContactMetricStructure& st, const Vec& x) { return check_sasakian(st, x, tol); });
}

VerificationReport check_kcontact_sampled(const ContactMetricStructure& s, double tol) {
  return worst_over_samples(
      s, [tol](const ContactMetricStructure& st, const Vec& x) { return check_kcontact(st, x, tol); });
}

double default_tol(const ContactMetricStructure& s) {
  return s.is_chart() ? 1e-8 : 1e-12;
}

} // namespace kontact
