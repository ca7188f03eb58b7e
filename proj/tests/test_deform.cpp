#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "kontact/deform.hpp"
#include "kontact/registry.hpp"

using namespace kontact;

TEST_CASE("constant transformation law") {
  auto [k2, m2] = predict_kmu(0.0, 0.0, 2.0);
  CHECK(k2 == doctest::Approx(0.75));
  CHECK(m2 == doctest::Approx(1.0));

  auto [k1, m1] = predict_kmu(-3.0, 5.0, 1.0);
  CHECK(k1 == doctest::Approx(-3.0));
  CHECK(m1 == doctest::Approx(5.0));

  auto [kh, mh] = predict_kmu(-8.0, 0.0, 0.5);
  CHECK(kh == doctest::Approx(-35.0));
  CHECK(mh == doctest::Approx(-2.0));
}

TEST_CASE("deformation parameter domain") {
  ContactMetricStructure s = darboux_weak(1);
  CHECK_THROWS_AS(apply_deformation(s, 0.0), Error);
  CHECK_THROWS_AS(apply_deformation(s, -2.0), Error);

  // a = 1 returns the structure unchanged, sharing component expressions.
  ContactMetricStructure same = apply_deformation(s, 1.0);
  CHECK(same.name() == s.name());
  CHECK(same.chart().g.comps[0].get() == s.chart().g.comps[0].get());
}

TEST_CASE("deformed components follow the definition") {
  // Frame: eta' = a eta, xi' = xi / a, g' = a g + a(a-1) eta (x) eta.
  ContactMetricStructure s = lie_family(4.0, 0.0);
  ContactMetricStructure d = apply_deformation(s, 2.0);
  CHECK(d.name() == "lie(4,0)@a=2");
  const LieFrameModel& m = d.frame();
  CHECK(m.eta[2] == doctest::Approx(2.0));
  CHECK(m.xi[2] == doctest::Approx(0.5));
  CHECK(m.g(0, 0) == doctest::Approx(2.0));
  CHECK(m.g(1, 1) == doctest::Approx(2.0));
  CHECK(m.g(2, 2) == doctest::Approx(4.0));
  CHECK(m.g(0, 1) == doctest::Approx(0.0));
  CHECK(max_abs(m.phi - s.frame().phi) == 0.0);

  // Chart: evaluate the deformed expressions at one point.
  ContactMetricStructure c = darboux_sasakian(1);
  ContactMetricStructure cd = apply_deformation(c, 2.0);
  Vec x{0.3, -0.5, 0.7};
  GeometryData g0 = geometry_at(c, x);
  GeometryData g1 = geometry_at(cd, x);
  for (int i = 0; i < 3; ++i) {
    CHECK(g1.eta[static_cast<std::size_t>(i)] ==
          doctest::Approx(2.0 * g0.eta[static_cast<std::size_t>(i)]));
    CHECK(g1.xi[static_cast<std::size_t>(i)] ==
          doctest::Approx(0.5 * g0.xi[static_cast<std::size_t>(i)]));
    for (int j = 0; j < 3; ++j)
      CHECK(g1.g(i, j) == doctest::Approx(2.0 * g0.g(i, j) +
                                          2.0 * g0.eta[static_cast<std::size_t>(i)] *
                                              g0.eta[static_cast<std::size_t>(j)]));
  }
  CHECK(max_abs(g1.phi - g0.phi) < 1e-14);
}

TEST_CASE("deformations preserve the axioms") {
  for (double a : {0.5, 2.0}) {
    for (const auto& base : {darboux_weak(2), darboux_sasakian(1)}) {
      ContactMetricStructure d = apply_deformation(base, a);
      VerificationReport rep = verify_axioms_sampled(d, default_tol(d));
      CHECK_MESSAGE(rep.passed(), d.name(), " worst ", rep.max_residual());
    }
    ContactMetricStructure fd = apply_deformation(lie_family(4.0, 0.0), a);
    CHECK(verify_axioms_sampled(fd, 1e-12).passed());
  }
}

TEST_CASE("deformation preserves the Sasakian and K-contact properties") {
  ContactMetricStructure d = apply_deformation(darboux_sasakian(1), 4.0);
  CHECK(check_sasakian_sampled(d, 1e-8).passed());
  CHECK(check_kcontact_sampled(d, 1e-8).passed());
}

TEST_CASE("fitted constants transform as predicted") {
  ContactMetricStructure weak = darboux_weak(2);
  for (double a : {0.5, 2.0, 3.7}) {
    ContactMetricStructure d = apply_deformation(weak, a);
    StructureKmuFit fit = fit_structure_kmu(d);
    auto [pk, pm] = predict_kmu(0.0, 0.0, a);
    CHECK_MESSAGE(fit.constant, "a = ", a);
    CHECK(std::abs(fit.combined.kappa - pk) < 1e-6);
    CHECK(std::abs(fit.combined.mu - pm) < 1e-6);
  }

  // Frame case lands exactly on (0,0): kappa = (-3+3)/4, mu = (-2+2)/2.
  StructureKmuFit ffit = fit_structure_kmu(apply_deformation(lie_family(4.0, 0.0), 2.0));
  CHECK(std::abs(ffit.combined.kappa) < 1e-12);
  CHECK(std::abs(ffit.combined.mu) < 1e-12);
}

TEST_CASE("curvature transformation law at sample points") {
  ContactMetricStructure weak = darboux_weak(2);
  std::vector<Vec> pts = weak.sample_points();
  for (std::size_t i = 0; i < 10; ++i) {
    VerificationReport rep = check_curvature_transform(weak, 2.0, pts[i], 1e-6);
    CHECK_MESSAGE(rep.passed(), "point ", i, " worst ", rep.max_residual());
    CHECK(rep.find("curvature-transform") != nullptr);
    CHECK(rep.find("h-rescaling") != nullptr);
  }
  VerificationReport frep = check_curvature_transform(lie_family(4.0, -2.0), 3.7, Vec{}, 1e-9);
  CHECK_MESSAGE(frep.passed(), "worst ", frep.max_residual());
}

TEST_CASE("invariant values and regimes") {
  BoeckxReport b = boeckx_invariant(0.0, 0.0);
  CHECK(b.defined);
  CHECK(b.invariant == doctest::Approx(1.0));
  CHECK(b.regime == Regime::Boundary);
  CHECK(b.alpha == doctest::Approx(0.0));

  b = boeckx_invariant(0.0, -4.0);
  CHECK(b.invariant == doctest::Approx(3.0));
  CHECK(b.regime == Regime::AboveOne);
  CHECK(b.epsilon == 1);
  CHECK(b.alpha == doctest::Approx(32.0));

  b = boeckx_invariant(-8.0, 0.0);
  CHECK(b.invariant == doctest::Approx(1.0 / 3.0));
  CHECK(b.regime == Regime::Interior);
  CHECK(b.lambda == doctest::Approx(3.0));

  b = boeckx_invariant(0.0, 6.0);
  CHECK(b.invariant == doctest::Approx(-2.0));
  CHECK(b.regime == Regime::BelowMinusOne);
  CHECK(b.epsilon == -1);

  b = boeckx_invariant(1.0, 0.0);
  CHECK_FALSE(b.defined);
  CHECK(b.regime == Regime::Kcontact);

  CHECK_THROWS_AS(boeckx_invariant(1.1, 0.0), Error);

  // Boundary detection tolerance.
  CHECK(boeckx_invariant(0.0, 2e-10).regime == Regime::Boundary);
  CHECK(boeckx_invariant(0.0, 2e-8).regime == Regime::Interior);
}

TEST_CASE("invariant is preserved under deformation") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uk(-5.0, 0.999);
  std::uniform_real_distribution<double> um(-6.0, 6.0);
  std::uniform_real_distribution<double> ua(0.05, 4.0);
  for (int i = 0; i < 200; ++i) {
    double k = uk(rng), m = um(rng), a = ua(rng);
    auto [kd, md] = predict_kmu(k, m, a);
    BoeckxReport before = boeckx_invariant(k, m);
    BoeckxReport after = boeckx_invariant(kd, md);
    REQUIRE(before.defined);
    REQUIRE(after.defined);
    CHECK(std::abs(before.invariant - after.invariant) < 1e-9);
  }
}

TEST_CASE("sign predicates by regime") {
  // I > 1.
  SignPredicates p = regime_sign_predicates(0.0, -4.0);
  CHECK(p.p_i);
  // I < -1.
  p = regime_sign_predicates(0.0, 6.0);
  CHECK(p.p_ii);
  // |I| < 1: both interior predicates.
  p = regime_sign_predicates(-8.0, 0.0);
  CHECK(p.p_iii_a);
  CHECK(p.p_iii_b);

  CHECK_THROWS_AS(regime_sign_predicates(1.0, 0.0), Error);
}
