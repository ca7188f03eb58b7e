#include "kontact/deform.hpp"

#include <cmath>

#include "kontact/error.hpp"

namespace kontact {

namespace {

std::string format_a(double a) { return format_real(a); }

Matrix outer(const Vec& u, const Vec& v) {
  Matrix m(static_cast<int>(u.size()), static_cast<int>(v.size()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      m(i, j) = u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
  return m;
}

ChartStructureData deform_chart(const ChartStructureData& cd, double a) {
  ChartStructureData out = cd;
  out.name = cd.name + "@a=" + format_a(a);
  const int d = cd.dim;
  ExprPtr ea = expr_num(a);
  for (int i = 0; i < d; ++i) {
    const ExprPtr& ei = cd.eta.comps[static_cast<std::size_t>(i)];
    if (ei) out.eta.comps[static_cast<std::size_t>(i)] = expr_mul(ea, ei);
    const ExprPtr& xii = cd.xi.comps[static_cast<std::size_t>(i)];
    if (xii) out.xi.comps[static_cast<std::size_t>(i)] = expr_div(xii, ea);
  }
  ExprPtr caa = expr_num(a * (a - 1.0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      std::size_t off = static_cast<std::size_t>(i) * d + j;
      const ExprPtr& gij = cd.g.comps[off];
      const ExprPtr& ei = cd.eta.comps[static_cast<std::size_t>(i)];
      const ExprPtr& ej = cd.eta.comps[static_cast<std::size_t>(j)];
      ExprPtr scaled = gij ? expr_mul(ea, gij) : nullptr;
      ExprPtr corr = (ei && ej && a != 1.0) ? expr_mul(caa, expr_mul(ei, ej)) : nullptr;
      if (scaled && corr)
        out.g.comps[off] = expr_add(scaled, corr);
      else if (scaled)
        out.g.comps[off] = scaled;
      else
        out.g.comps[off] = corr;
    }
  return out;
}

LieFrameModel deform_frame(const LieFrameModel& m, double a) {
  LieFrameModel out = m;
  out.name = m.name + "@a=" + format_a(a);
  for (double& v : out.eta) v *= a;
  for (double& v : out.xi) v /= a;
  out.g = a * m.g + (a * (a - 1.0)) * outer(m.eta, m.eta);
  return out;
}

} // namespace

ContactMetricStructure apply_deformation(const ContactMetricStructure& s, double a) {
  if (!(a > 0.0)) throw Error("deformation parameter must be positive");
  if (a == 1.0) return s;
  if (s.is_chart()) return ContactMetricStructure(deform_chart(s.chart(), a));
  return ContactMetricStructure(deform_frame(s.frame(), a));
}

std::pair<double, double> predict_kmu(double kappa, double mu, double a) {
  if (!(a > 0.0)) throw Error("deformation parameter must be positive");
  return {(kappa + a * a - 1.0) / (a * a), (mu + 2.0 * a - 2.0) / a};
}

VerificationReport check_curvature_transform(const ContactMetricStructure& s, double a,
                                             const Vec& x, double tol) {
  ContactMetricStructure deformed = apply_deformation(s, a);
  GeometryData geo = geometry_at(s, x);
  GeometryData geod = geometry_at(deformed, x);
  const int d = geo.dim;

  VerificationReport rep;
  rep.subject = s.name() + "@a=" + format_a(a);

  Matrix rhs = (1.0 / (a * a)) * geo.l +
               ((a * a - 1.0) / (a * a)) * (Matrix::identity(d) - outer(geod.xi, geod.eta)) +
               ((2.0 * a - 2.0) / a) * geod.h;
  rep.add("curvature-transform", max_abs(geod.l - rhs), tol);

  // Deformed h relation h = a h'.
  rep.add("h-rescaling", max_abs(geo.h - a * geod.h), tol);

  KappaMuReport before = estimate_kappa_mu_from(geo);
  KappaMuReport after = estimate_kappa_mu_from(geod);
  auto [kp, mp] = predict_kmu(before.kappa, before.mu_present ? before.mu : 0.0, a);
  rep.add("deformed-kappa-prediction", std::fabs(after.kappa - kp), tol);
  if (before.mu_present && after.mu_present)
    rep.add("deformed-mu-prediction", std::fabs(after.mu - mp), tol);
  return rep;
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::Kcontact: return "Kcontact";
    case Regime::AboveOne: return "AboveOne";
    case Regime::BelowMinusOne: return "BelowMinusOne";
    case Regime::Interior: return "Interior";
    case Regime::Boundary: return "Boundary";
  }
  return "unknown";
}

BoeckxReport boeckx_invariant(double kappa, double mu) {
  if (kappa > 1.0 + 1e-9) throw Error("kappa > 1 is impossible for a weak (kappa,mu) space");
  BoeckxReport rep;
  rep.alpha = (2.0 - mu) * (2.0 - mu) - 4.0 * (1.0 - kappa);
  if (kappa >= 1.0 - 1e-12) {
    rep.defined = false;
    rep.regime = Regime::Kcontact;
    rep.lambda = 0.0;
    rep.epsilon = 1;
    return rep;
  }
  rep.defined = true;
  rep.lambda = std::sqrt(1.0 - kappa);
  rep.invariant = (1.0 - mu / 2.0) / rep.lambda;
  rep.epsilon = rep.invariant >= 0.0 ? 1 : -1;
  double dist = std::fabs(std::fabs(rep.invariant) - 1.0);
  if (dist <= 1e-9)
    rep.regime = Regime::Boundary;
  else if (rep.invariant > 1.0)
    rep.regime = Regime::AboveOne;
  else if (rep.invariant < -1.0)
    rep.regime = Regime::BelowMinusOne;
  else
    rep.regime = Regime::Interior;
  return rep;
}

SignPredicates regime_sign_predicates(double kappa, double mu) {
  if (kappa >= 1.0) throw Error("sign predicates require kappa < 1");
  double lambda = std::sqrt(1.0 - kappa);
  SignPredicates p;
  p.p_i = (2.0 - mu - lambda) > 0.0;
  p.p_ii = (2.0 - mu + lambda) < 0.0;
  p.p_iii_a = (2.0 * lambda + 2.0 - mu) > 0.0;
  p.p_iii_b = (2.0 * lambda + mu - 2.0) > 0.0;
  return p;
}

} // namespace kontact
