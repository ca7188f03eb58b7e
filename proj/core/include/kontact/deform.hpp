#ifndef KONTACT_DEFORM_HPP
#define KONTACT_DEFORM_HPP

#include <string>
#include <utility>

#include "kontact/kmu.hpp"
#include "kontact/structure.hpp"

namespace kontact {

/// Homothetic deformation along the contact subbundle with parameter a > 0:
/// eta' = a eta, xi' = xi / a, phi' = phi, g' = a g + a(a-1) eta (x) eta.
/// a = 1 returns the structure unchanged (component expressions shared).
ContactMetricStructure apply_deformation(const ContactMetricStructure& s, double a);

/// Transformation law of the fitted constants under the deformation:
/// kappa' = (kappa + a^2 - 1) / a^2,  mu' = (mu + 2a - 2) / a.
std::pair<double, double> predict_kmu(double kappa, double mu, double a);

/// Checks the curvature transformation law at x:
/// R'(X,xi')xi' = (1/a^2) R(X,xi)xi + ((a^2-1)/a^2)(X - eta'(X)xi') + ((2a-2)/a) h'X,
/// plus agreement of the fitted deformed constants with predict_kmu.
VerificationReport check_curvature_transform(const ContactMetricStructure& s, double a,
                                             const Vec& x, double tol);

enum class Regime { Kcontact, AboveOne, BelowMinusOne, Interior, Boundary };
std::string regime_name(Regime r);

/// The deformation invariant I = (1 - mu/2)/sqrt(1-kappa) with the derived
/// regime data used by the construction gates.
struct BoeckxReport {
  bool defined = false;    // false iff kappa = 1 (K-contact)
  double invariant = 0.0;
  double lambda = 0.0;
  Regime regime = Regime::Kcontact;
  int epsilon = 1;         // sign of the invariant, +1 at zero
  double alpha = 0.0;      // (2-mu)^2 - 4(1-kappa); > 0 iff |I| > 1
};

/// Throws when kappa > 1 + 1e-9 (impossible for a weak (kappa,mu) space).
BoeckxReport boeckx_invariant(double kappa, double mu);

/// The four sign conditions tied to the invariant's regime:
///   p_i:     2 - mu - lambda > 0     (expected when I > 1)
///   p_ii:    2 - mu + lambda < 0     (expected when I < -1)
///   p_iii_a: 2 lambda + 2 - mu > 0   (together with p_iii_b iff |I| < 1)
///   p_iii_b: 2 lambda + mu - 2 > 0
struct SignPredicates {
  bool p_i = false, p_ii = false, p_iii_a = false, p_iii_b = false;
};

/// Throws when kappa >= 1.
SignPredicates regime_sign_predicates(double kappa, double mu);

} // namespace kontact

#endif
