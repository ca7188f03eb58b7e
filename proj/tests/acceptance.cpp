// Acceptance gate: one pass/fail line per criterion, exit code = failure count.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "kontact/chart.hpp"
#include "kontact/construct.hpp"
#include "kontact/deform.hpp"
#include "kontact/kmu.hpp"
#include "kontact/registry.hpp"

using namespace kontact;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int g_failures = 0;

void run_criterion(int id, const char* title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  std::printf("[%2d] %s  %s%s%s%s\n", id, o.pass ? "PASS" : "FAIL", title,
              o.detail.empty() ? "" : " (", o.detail.c_str(), o.detail.empty() ? "" : ")");
  std::fflush(stdout);
  if (!o.pass) ++g_failures;
}

std::string fmt(double v) { return format_real(v); }

std::vector<ContactMetricStructure> chart_catalogue() {
  return {darboux_sasakian(1), darboux_sasakian(2), darboux_weak(1), darboux_weak(2)};
}

std::vector<ContactMetricStructure> frame_catalogue() {
  std::vector<ContactMetricStructure> v;
  for (double c1 : {-6.0, -3.0, 0.0, 3.0, 6.0})
    for (double c2 : {-6.0, -3.0, 0.0, 3.0, 6.0}) v.push_back(lie_family(c1, c2));
  return v;
}

// Base catalogue plus its a = 0.5 and a = 2 deformations.
void for_each_catalogue_structure(const std::function<void(const ContactMetricStructure&)>& fn) {
  for (const auto& list : {chart_catalogue(), frame_catalogue()}) {
    for (const auto& s : list) {
      fn(s);
      for (double a : {0.5, 2.0}) fn(apply_deformation(s, a));
    }
  }
}

double mu_or_zero(const KappaMuReport& r) { return r.mu_present ? r.mu : 0.0; }

}  // namespace

int main() {
  run_criterion(1, "contact metric axioms hold across the catalogue and its deformations", [] {
    auto t0 = std::chrono::steady_clock::now();
    double worst_chart = 0.0, worst_frame = 0.0;
    int structures = 0;
    for_each_catalogue_structure([&](const ContactMetricStructure& s) {
      double tol = s.is_chart() ? 1e-8 : 1e-12;
      VerificationReport rep = verify_axioms_sampled(s, tol);
      ++structures;
      double& worst = s.is_chart() ? worst_chart : worst_frame;
      worst = std::max(worst, rep.max_residual());
      if (!rep.passed())
        throw Error(s.name() + " fails the axioms: worst " + fmt(rep.max_residual()));
    });
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1fs", secs);
    Outcome o;
    o.pass = secs < 30.0;
    o.detail = std::to_string(structures) + " structures, worst chart " + fmt(worst_chart) +
               ", worst frame " + fmt(worst_frame) + ", " + buf;
    return o;
  });

  run_criterion(2, "structural identities stay below 1e-8 on weakly verified structures", [] {
    int verified = 0;
    double worst = 0.0;
    for_each_catalogue_structure([&](const ContactMetricStructure& s) {
      StructureKmuFit fit = fit_structure_kmu(s);
      if (!fit.constant || fit.combined.residual_weak > 1e-8) return;
      ++verified;
      VerificationReport ids = check_structural_identities_sampled(s, 1e-8);
      double kappa = fit.combined.kappa, mu = mu_or_zero(fit.combined);
      VerificationReport kmu =
          worst_over_samples(s, [&](const ContactMetricStructure& t, const Vec& x) {
            return check_weak_kmu_identities(t, x, kappa, mu, 1e-8);
          });
      worst = std::max({worst, ids.max_residual(), kmu.max_residual()});
      if (!ids.passed() || !kmu.passed())
        throw Error(s.name() + " identity residual " +
                    fmt(std::max(ids.max_residual(), kmu.max_residual())));
    });
    return Outcome{verified > 0, std::to_string(verified) + " structures verified, worst residual " +
                                     fmt(worst)};
  });

  run_criterion(3, "deformations of the weak model transform constants and curvature as derived", [] {
    ContactMetricStructure weak = darboux_weak(2);
    std::vector<Vec> pts = weak.sample_points();
    double worst_fit = 0.0, worst_curv = 0.0;
    for (double a : {0.5, 2.0, 3.7}) {
      auto [pk, pm] = predict_kmu(0.0, 0.0, a);
      StructureKmuFit fit = fit_structure_kmu(apply_deformation(weak, a));
      if (!fit.constant) throw Error("deformed fit is not constant at a = " + fmt(a));
      worst_fit = std::max({worst_fit, std::abs(fit.combined.kappa - pk),
                            std::abs(mu_or_zero(fit.combined) - pm)});
      for (std::size_t i = 0; i < 10; ++i) {
        VerificationReport rep = check_curvature_transform(weak, a, pts[i], 1e-6);
        worst_curv = std::max(worst_curv, rep.max_residual());
        if (!rep.passed())
          throw Error("curvature transform fails at a = " + fmt(a) + ": " +
                      fmt(rep.max_residual()));
      }
    }
    return Outcome{worst_fit < 1e-6,
                   "worst constant delta " + fmt(worst_fit) + ", worst curvature residual " +
                       fmt(worst_curv)};
  });

  run_criterion(4, "the Boeckx invariant is unchanged by 1000 random deformations", [] {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> uk(-5.0, 0.999);
    std::uniform_real_distribution<double> um(-6.0, 6.0);
    std::uniform_real_distribution<double> ua(0.05, 4.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      double k = uk(rng), m = um(rng), a = ua(rng);
      auto [kd, md] = predict_kmu(k, m, a);
      double before = boeckx_invariant(k, m).invariant;
      double after = boeckx_invariant(kd, md).invariant;
      worst = std::max(worst, std::abs(before - after));
    }
    return Outcome{worst < 1e-9, "worst drift " + fmt(worst)};
  });

  run_criterion(5, "sign predicates follow the invariant on a 200 x 200 grid", [] {
    int cells = 0, violations = 0;
    for (int i = 0; i < 200; ++i) {
      double k = -5.0 + (0.999 + 5.0) * i / 199.0;
      for (int j = 0; j < 200; ++j) {
        double m = -6.0 + 12.0 * j / 199.0;
        BoeckxReport b = boeckx_invariant(k, m);
        if (!b.defined) continue;
        SignPredicates p = regime_sign_predicates(k, m);
        ++cells;
        if (b.invariant > 1.0 + 1e-12 && !p.p_i) ++violations;
        if (b.invariant < -1.0 - 1e-12 && !p.p_ii) ++violations;
        if (std::abs(b.invariant) < 1.0 - 1e-12 && !(p.p_iii_a && p.p_iii_b)) ++violations;
      }
    }
    return Outcome{cells > 30000 && violations == 0,
                   std::to_string(cells) + " cells, " + std::to_string(violations) + " violations"};
  });

  run_criterion(6, "the K-contact construction succeeds wherever |I| > 1 and refuses |I| = 1", [] {
    int built = 0;
    double worst_h = 0.0, worst_check = 0.0;
    for (int c1 = -6; c1 <= 6; ++c1) {
      for (int c2 = -6; c2 <= 6; ++c2) {
        double d = (c1 - c2) / 2.0, s = (c1 + c2) / 2.0;
        if (d == 0.0) continue;
        double kappa = 1.0 - d * d, mu = 2.0 - 2.0 * s;
        if (boeckx_invariant(kappa, mu).regime == Regime::Boundary) continue;
        if (std::abs(boeckx_invariant(kappa, mu).invariant) < 1.0) continue;
        ConstructionResult res = build_kcontact(lie_family(c1, c2));
        ++built;
        worst_check = std::max(worst_check, res.report.max_residual());
        if (!res.report.passed())
          throw Error(res.structure.name() + " construction check " +
                      fmt(res.report.max_residual()));
        worst_h = std::max(worst_h, max_abs(geometry_at(res.structure, Vec{}).h));
        cholesky(res.structure.frame().g);  // throws unless positive definite
      }
    }
    bool refused = false;
    try {
      ContactMetricStructure weak = darboux_weak(2);
      build_construction_pointwise(weak, weak.sample_points().front(),
                                   ConstructionTarget::Kcontact);
    } catch (const RegimeError&) {
      refused = true;
    }
    return Outcome{built > 0 && worst_h < 1e-10 && refused,
                   std::to_string(built) + " models built, worst new h " + fmt(worst_h) +
                       ", worst check " + fmt(worst_check) +
                       (refused ? ", |I| = 1 refused" : ", |I| = 1 NOT refused")};
  });

  run_criterion(7, "the mu = 2 construction lands on (kappa1, 2) and stays fixed", [] {
    int built = 0;
    double worst_fit = 0.0, worst_h1 = 0.0;
    for (int c1 = -6; c1 <= 6; ++c1) {
      for (int c2 = -6; c2 <= 6; ++c2) {
        double d = (c1 - c2) / 2.0, s = (c1 + c2) / 2.0;
        if (d == 0.0) continue;
        double kappa = 1.0 - d * d, mu = 2.0 - 2.0 * s;
        BoeckxReport b = boeckx_invariant(kappa, mu);
        if (b.regime != Regime::Interior) continue;
        ContactMetricStructure base = lie_family(c1, c2);
        ConstructionResult res = build_mu2(base);
        ++built;
        double target_kappa = kappa + (1.0 - mu / 2.0) * (1.0 - mu / 2.0);
        KappaMuReport est = estimate_kappa_mu(res.structure, Vec{});
        worst_fit = std::max({worst_fit, std::abs(est.kappa - target_kappa),
                              std::abs(mu_or_zero(est) - 2.0)});
        Matrix h_old = geometry_at(base, Vec{}).h;
        Matrix h_new = geometry_at(res.structure, Vec{}).h;
        worst_h1 = std::max(worst_h1, max_abs(h_new - res.plan.h1_scale * h_old));
        VerificationReport fixed =
            verify_fixedness(res.structure, ConstructionTarget::Mu2, {0.5, 2.0, 3.7}, 1e-8);
        if (!fixed.passed())
          throw Error(res.structure.name() + " drifts under deformation: " +
                      fmt(fixed.max_residual()));
      }
    }
    return Outcome{built > 0 && worst_fit < 1e-8 && worst_h1 < 1e-10,
                   std::to_string(built) + " models built, worst fit delta " + fmt(worst_fit) +
                       ", worst h rescaling delta " + fmt(worst_h1)};
  });

  run_criterion(8, "weak (kappa,0) + semisymmetry forces the strong condition", [] {
    int gated = 0;
    double worst_strong = 0.0;
    for_each_catalogue_structure([&](const ContactMetricStructure& s) {
      StructureKmuFit fit = fit_structure_kmu(s);
      if (!fit.constant || fit.combined.residual_weak > 1e-8) return;
      if (std::abs(mu_or_zero(fit.combined)) > 1e-8) return;
      if (std::abs(fit.combined.kappa) <= 1e-6) return;  // degenerate flat-Jacobi case
      double instance = 0.0;
      for (const Vec& x : s.sample_points())
        instance = std::max(instance, check_weak_semisymmetry(s, x).instance_residual);
      if (instance > 1e-8) return;
      ++gated;
      double strong = 0.0;
      for (const Vec& x : s.sample_points())
        strong = std::max(strong, check_strong_kmu(s, x, fit.combined.kappa, 0.0));
      worst_strong = std::max(worst_strong, strong);
      if (strong > 1e-7) throw Error(s.name() + " strong residual " + fmt(strong));
    });
    bool sasakian_case = true;
    for (int n : {1, 2}) {
      ContactMetricStructure s = darboux_sasakian(n);
      if (!check_sasakian_sampled(s, 1e-8).passed()) sasakian_case = false;
      for (const Vec& x : s.sample_points())
        if (check_weak_semisymmetry(s, x).instance_residual > 1e-8) sasakian_case = false;
    }
    return Outcome{gated > 0 && sasakian_case,
                   std::to_string(gated) + " structures pass both gates, worst strong residual " +
                       fmt(worst_strong) +
                       (sasakian_case ? ", Sasakian case holds" : ", Sasakian case FAILS")};
  });

  run_criterion(9, "the weak model is weakly but not strongly (0,0)", [] {
    Vec witness{1.0, 1.0, 0.5, -0.5, 0.3};
    KappaMuReport est = estimate_kappa_mu(darboux_weak(2), witness);
    return Outcome{est.residual_weak < 1e-8 && est.residual_strong > 0.1,
                   "weak " + fmt(est.residual_weak) + ", strong " + fmt(est.residual_strong) +
                       " at the recorded witness"};
  });

  run_criterion(10, "analytic jets agree with the finite-difference oracle", [] {
    double worst = 0.0;
    for (const auto& s : chart_catalogue()) {
      const ChartStructureData& cd = s.chart();
      std::vector<Vec> pts = s.sample_points();
      for (std::size_t pi = 0; pi < 5; ++pi) {
        Point p;
        p.x = pts[pi];
        for (int i = 0; i < cd.dim; ++i) {
          for (int j = 0; j < cd.dim; ++j) {
            const ExprPtr& e = cd.g.at({i, j});
            if (!e) continue;
            Jet a = eval_jet(e, p.x, 2);
            Jet fd = finite_difference_oracle(e, p, 1e-4);
            double diff = std::abs(a.v - fd.v);
            for (int k = 0; k < cd.dim; ++k)
              diff = std::max(diff, std::abs(a.g[static_cast<std::size_t>(k)] -
                                             fd.g[static_cast<std::size_t>(k)]));
            diff = std::max(diff, max_abs(a.h - fd.h));
            worst = std::max(worst, diff);
          }
        }
      }
    }
    return Outcome{worst < 1e-5, "worst jet deviation " + fmt(worst)};
  });

  if (g_failures == 0)
    std::printf("all 10 criteria passed\n");
  else
    std::printf("%d of 10 criteria FAILED\n", g_failures);
  return g_failures;
}
