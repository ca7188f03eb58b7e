#ifndef KONTACT_CONSTRUCT_HPP
#define KONTACT_CONSTRUCT_HPP

#include <vector>

#include "kontact/deform.hpp"
#include "kontact/kmu.hpp"
#include "kontact/structure.hpp"

namespace kontact {

enum class ConstructionTarget { Kcontact, Mu2 };

/// Scalar plan derived from a structure-level (kappa, mu): gate checks,
/// sign and normalizer data, and the predicted outputs.
struct ConstructionPlan {
  ConstructionTarget target = ConstructionTarget::Kcontact;
  double kappa = 0.0, mu = 0.0, lambda = 0.0;
  int epsilon = 1;
  double alpha = 0.0;         // (2-mu)^2 - 4(1-kappa), K-contact branch gate
  double normalizer = 0.0;    // 1/((1-k) sqrt(alpha)) or 1/(2 sqrt(1-k) sqrt(radicand))
  double radicand = 0.0;      // 1 - kappa - (1-mu/2)^2, mu-2 branch gate
  double kappa1 = 0.0;        // kappa + (1-mu/2)^2
  double mu1 = 2.0;
  double h1_scale = 0.0;      // sqrt(1 - I^2)
  double lambda1 = 0.0;       // sqrt(1 - kappa1) = sqrt(radicand)
};

/// Throws RegimeError when the invariant regime does not admit the target
/// (K-contact branch needs |I| > 1, the mu = 2 branch needs |I| < 1).
ConstructionPlan plan_construction(double kappa, double mu, ConstructionTarget target);

struct ConstructionResult {
  ConstructionPlan plan;
  ContactMetricStructure structure;   // the produced (eta, xi, phi_new, g_new)
  VerificationReport report;
};

/// K-contact production on the frame backend:
///   phi' = (epsilon / ((1-kappa) sqrt(alpha))) (L_xi h) o h
///   g'   = -1/2 d eta (., phi' .) + eta (x) eta
/// Verifies axioms, h' = 0, the curvature characterisation, xi-invariance of
/// (L_xi h) o h, its square law, and the two positivity sign cases.
ConstructionResult build_kcontact(const ContactMetricStructure& s);

/// mu = 2 production on the frame backend:
///   phi_1 = L_xi h / (2 sqrt(1-kappa) sqrt(1 - kappa - (1-mu/2)^2))
///   g_1   = -1/2 d eta (., phi_1 .) + eta (x) eta
/// Verifies axioms, the fitted (kappa1, 2), h_1 = sqrt(1-I^2) h, the positive
/// eigenvalue lambda_1, and the Jacobi-operator chain
/// l_1 = 2 h_1 - (1 + lambda_1^2) phi_1^2 + phi_1 L_xi h_1.
ConstructionResult build_mu2(const ContactMetricStructure& s);

/// Pointwise construction data on either backend (charts expose the
/// construction pointwise only: the produced tensors at x plus their
/// algebraic checks; no derivatives of the new fields are available).
struct PointwiseConstruction {
  ConstructionPlan plan;
  Matrix phi_new, g_new;
  VerificationReport report;
};
PointwiseConstruction build_construction_pointwise(const ContactMetricStructure& s, const Vec& x,
                                                   ConstructionTarget target);

/// Deformation-fixedness of a produced structure: for each a, deform and
/// refit; K-contact outputs must keep kappa = 1, mu = 2 outputs keep mu = 2.
VerificationReport verify_fixedness(const ContactMetricStructure& s_new, ConstructionTarget target,
                                    const std::vector<double>& a_samples, double tol);

} // namespace kontact

#endif
