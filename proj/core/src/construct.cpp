#include "kontact/construct.hpp"

#include <cmath>

#include "kontact/error.hpp"

namespace kontact {

namespace {

constexpr double kBuildTol = 1e-10;

std::string format_a(double a) { return format_real(a); }

Matrix outer(const Vec& u, const Vec& v) {
  Matrix m(static_cast<int>(u.size()), static_cast<int>(v.size()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      m(i, j) = u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
  return m;
}

/// g_new = -1/2 d eta(., phi_new .) + eta (x) eta.
Matrix metric_from_phi(const GeometryData& geo, const Matrix& phi_new) {
  Matrix g = (-0.5) * (geo.deta * phi_new) + outer(geo.eta, geo.eta);
  return g;
}

double spd_deficiency(const Matrix& g) {
  Matrix gs = 0.5 * (g + transpose(g));
  double asym = max_abs(g - transpose(g));
  auto [emin, emax] = symmetric_eigen_range(gs);
  (void)emax;
  return std::max(asym, std::max(0.0, 1e-9 - emin));
}

StructureKmuFit gated_fit(const ContactMetricStructure& s) {
  StructureKmuFit fit = fit_structure_kmu(s);
  if (!fit.constant)
    throw RegimeError("construction refused: fitted (kappa, mu) is not constant across the sample set");
  if (fit.combined.residual_weak > 1e-8)
    throw RegimeError("construction refused: structure is not weakly (kappa, mu)");
  return fit;
}

} // namespace

ConstructionPlan plan_construction(double kappa, double mu, ConstructionTarget target) {
  BoeckxReport b = boeckx_invariant(kappa, mu);
  if (!b.defined)
    throw RegimeError("construction refused: structure is K-contact (kappa = 1)");

  ConstructionPlan plan;
  plan.target = target;
  plan.kappa = kappa;
  plan.mu = mu;
  plan.lambda = b.lambda;
  plan.epsilon = b.epsilon;
  plan.alpha = b.alpha;

  if (target == ConstructionTarget::Kcontact) {
    if (b.regime != Regime::AboveOne && b.regime != Regime::BelowMinusOne)
      throw RegimeError("construction requires |I| > 1; regime is " + regime_name(b.regime));
    plan.normalizer = 1.0 / ((1.0 - kappa) * std::sqrt(plan.alpha));
    return plan;
  }

  if (b.regime != Regime::Interior)
    throw RegimeError("construction requires |I| < 1; regime is " + regime_name(b.regime));
  double half = 1.0 - mu / 2.0;
  plan.radicand = 1.0 - kappa - half * half;
  plan.normalizer = 1.0 / (2.0 * b.lambda * std::sqrt(plan.radicand));
  plan.kappa1 = kappa + half * half;
  plan.mu1 = 2.0;
  plan.h1_scale = std::sqrt(1.0 - b.invariant * b.invariant);
  plan.lambda1 = std::sqrt(plan.radicand);
  return plan;
}

ConstructionResult build_kcontact(const ContactMetricStructure& s) {
  if (s.is_chart())
    throw Error("K-contact construction needs the frame backend; charts are pointwise only");
  const LieFrameModel& m = s.frame();
  StructureKmuFit fit = gated_fit(s);
  double mu = fit.combined.mu_present ? fit.combined.mu : 0.0;

  ConstructionResult out;
  out.plan = plan_construction(fit.combined.kappa, mu, ConstructionTarget::Kcontact);
  const ConstructionPlan& plan = out.plan;

  GeometryData geo = geometry_at(s, {});
  const int d = geo.dim;
  Matrix core = geo.lie_xi_h * geo.h;   // (L_xi h) o h

  out.report.subject = s.name() + ":kcontact";
  out.report.add("xi-invariance", max_abs(frame_lie_derivative_operator(m, core, m.xi)), kBuildTol);
  double l4a = plan.lambda * plan.lambda * plan.lambda * plan.lambda * plan.alpha;
  Matrix square_expected = l4a * (outer(geo.xi, geo.eta) - Matrix::identity(d));
  out.report.add("square-law", max_abs(core * core - square_expected), kBuildTol);

  double c_plus = plan.epsilon * (2.0 - plan.mu - 2.0 * plan.lambda);
  double c_minus = plan.epsilon * (2.0 - plan.mu + 2.0 * plan.lambda);
  out.report.add("positivity-case-plus", std::max(0.0, -c_plus), 0.0);
  out.report.add("positivity-case-minus", std::max(0.0, -c_minus), 0.0);

  Matrix phi_new = (plan.epsilon * plan.normalizer) * core;
  Matrix g_new = metric_from_phi(geo, phi_new);

  LieFrameModel built = m;
  built.name = m.name + ":kcontact";
  built.phi = phi_new;
  built.g = g_new;
  out.structure = ContactMetricStructure(built);

  out.report.merge(verify_axioms(out.structure, {}, kBuildTol));
  out.report.merge(check_kcontact(out.structure, {}, kBuildTol));
  out.report.add("metric-positivity", spd_deficiency(g_new), 0.0);
  return out;
}

ConstructionResult build_mu2(const ContactMetricStructure& s) {
  if (s.is_chart())
    throw Error("mu = 2 construction needs the frame backend; charts are pointwise only");
  const LieFrameModel& m = s.frame();
  StructureKmuFit fit = gated_fit(s);
  double mu = fit.combined.mu_present ? fit.combined.mu : 0.0;

  ConstructionResult out;
  out.plan = plan_construction(fit.combined.kappa, mu, ConstructionTarget::Mu2);
  const ConstructionPlan& plan = out.plan;

  GeometryData geo = geometry_at(s, {});
  Matrix phi_new = plan.normalizer * geo.lie_xi_h;
  Matrix g_new = metric_from_phi(geo, phi_new);

  LieFrameModel built = m;
  built.name = m.name + ":mu2";
  built.phi = phi_new;
  built.g = g_new;
  out.structure = ContactMetricStructure(built);
  out.report.subject = built.name;

  out.report.merge(verify_axioms(out.structure, {}, kBuildTol));

  GeometryData geod = geometry_at(out.structure, {});
  KappaMuReport refit = estimate_kappa_mu_from(geod);
  out.report.add("fitted-kappa1", std::fabs(refit.kappa - plan.kappa1), 1e-9);
  out.report.add("fitted-mu1", refit.mu_present ? std::fabs(refit.mu - 2.0) : 1.0, 1e-9);

  out.report.add("h1-scale", max_abs(geod.h - plan.h1_scale * geo.h), kBuildTol);

  SymEigenResult eig = sym_eigen(geod.h, geod.g);
  double lam_max = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
  out.report.add("lambda1-eigenvalue", std::fabs(lam_max - plan.lambda1), 1e-9);

  double lam1sq = plan.lambda1 * plan.lambda1;
  Matrix chain = 2.0 * geod.h - (1.0 + lam1sq) * (phi_new * phi_new) + phi_new * geod.lie_xi_h;
  out.report.add("jacobi-chain", max_abs(geod.l - chain), 1e-9);

  double c_a = 2.0 * plan.lambda + 2.0 - plan.mu;
  double c_b = 2.0 * plan.lambda + plan.mu - 2.0;
  out.report.add("positivity-case-plus", std::max(0.0, -c_a), 0.0);
  out.report.add("positivity-case-minus", std::max(0.0, -c_b), 0.0);
  out.report.add("metric-positivity", spd_deficiency(g_new), 0.0);
  return out;
}

PointwiseConstruction build_construction_pointwise(const ContactMetricStructure& s, const Vec& x,
                                                   ConstructionTarget target) {
  GeometryData geo = geometry_at(s, x);
  KappaMuReport kmu = estimate_kappa_mu_from(geo);
  if (kmu.residual_weak > 1e-8)
    throw RegimeError("construction refused: structure is not weakly (kappa, mu) at this point");

  PointwiseConstruction out;
  out.plan = plan_construction(kmu.kappa, kmu.mu_present ? kmu.mu : 0.0, target);
  const ConstructionPlan& plan = out.plan;
  const int d = geo.dim;

  Matrix core = (target == ConstructionTarget::Kcontact) ? Matrix(geo.lie_xi_h * geo.h)
                                                         : geo.lie_xi_h;
  double coef = (target == ConstructionTarget::Kcontact) ? plan.epsilon * plan.normalizer
                                                         : plan.normalizer;
  out.phi_new = coef * core;
  out.g_new = metric_from_phi(geo, out.phi_new);

  VerificationReport& rep = out.report;
  rep.subject = s.name();
  Matrix expected_sq = outer(geo.xi, geo.eta) - Matrix::identity(d);
  rep.add("phi-square", max_abs(out.phi_new * out.phi_new - expected_sq), kBuildTol);
  rep.add("phi-xi", max_abs(out.phi_new * geo.xi), kBuildTol);
  rep.add("phi-new-h-anticommute", max_abs(out.phi_new * geo.h + geo.h * out.phi_new), kBuildTol);
  rep.add("metric-symmetric", max_abs(out.g_new - transpose(out.g_new)), kBuildTol);
  rep.add("metric-positivity", spd_deficiency(out.g_new), 0.0);
  rep.add("deta-compatibility", max_abs(geo.deta - 2.0 * (out.g_new * out.phi_new)), kBuildTol);
  Vec eta_dual = transpose(out.g_new) * geo.xi;
  for (std::size_t i = 0; i < eta_dual.size(); ++i) eta_dual[i] -= geo.eta[i];
  rep.add("eta-metric-duality", max_abs(eta_dual), kBuildTol);
  if (target == ConstructionTarget::Kcontact) {
    double l4a = plan.lambda * plan.lambda * plan.lambda * plan.lambda * plan.alpha;
    Matrix sq = l4a * expected_sq;
    rep.add("square-law", max_abs(core * core - sq), kBuildTol);
  }
  return out;
}

VerificationReport verify_fixedness(const ContactMetricStructure& s_new, ConstructionTarget target,
                                    const std::vector<double>& a_samples, double tol) {
  VerificationReport rep;
  rep.subject = s_new.name();
  for (double a : a_samples) {
    ContactMetricStructure deformed = apply_deformation(s_new, a);
    StructureKmuFit fit = fit_structure_kmu(deformed);
    if (target == ConstructionTarget::Kcontact) {
      rep.add("fixed-kappa@a=" + format_a(a), std::fabs(fit.combined.kappa - 1.0), tol);
    } else {
      double r = fit.combined.mu_present ? std::fabs(fit.combined.mu - 2.0) : 1.0;
      rep.add("fixed-mu@a=" + format_a(a), r, tol);
    }
  }
  return rep;
}

} // namespace kontact
