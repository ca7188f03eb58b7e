#ifndef KONTACT_KMU_HPP
#define KONTACT_KMU_HPP

#include <vector>

#include "kontact/structure.hpp"

namespace kontact {

/// Per-point fit of l = kappa (Id - eta (x) xi) + mu h.
struct KappaMuReport {
  double kappa = 0.0;
  double mu = 0.0;
  bool mu_present = false;       // false when h = 0 (mu is meaningless)
  double lambda = 0.0;           // sqrt(max(0, 1 - kappa))
  double residual_weak = 0.0;    // operator residual of the fit
  double residual_strong = 0.0;  // residual of the two-argument curvature form
  bool is_kcontact = false;
  bool rank_deficient_mu = false;
};

/// Least-squares (kappa, mu) estimate at one point, sampled on a
/// g-orthonormal frame of the contact subbundle (xi last, deterministic
/// Gram-Schmidt order). When ‖h‖ < h_tol, mu is omitted.
KappaMuReport estimate_kappa_mu(const ContactMetricStructure& s, const Vec& x,
                                double h_tol = 1e-9);
KappaMuReport estimate_kappa_mu_from(const GeometryData& geo, double h_tol = 1e-9);

/// Structure-level fit: per-point estimates plus a constancy verdict
/// (declared constant only if point values agree within 1e-6).
struct StructureKmuFit {
  std::vector<KappaMuReport> per_point;
  KappaMuReport combined;
  bool constant = false;
  double kappa_spread = 0.0;
  double mu_spread = 0.0;
};
StructureKmuFit fit_structure_kmu(const ContactMetricStructure& s, double h_tol = 1e-9);

/// The three weak-(kappa,mu) consequences, checked with given constants:
///   h^2 = (kappa - 1) phi^2      (plus kappa <= 1)
///   grad_xi h = -mu phi h
///   L_xi h = (2 - mu) phi h + 2 (1 - kappa) phi
VerificationReport check_weak_kmu_identities(const ContactMetricStructure& s, const Vec& x,
                                             double kappa, double mu, double tol);

/// Max residual of R(X,Y)xi = kappa (eta(Y)X - eta(X)Y) + mu (eta(Y)hX - eta(X)hY)
/// over all basis pairs.
double check_strong_kmu(const ContactMetricStructure& s, const Vec& x, double kappa, double mu);
double check_strong_kmu_from(const GeometryData& geo, double kappa, double mu);

/// Eigenbundle decomposition of h for a non-K-contact weak (kappa,mu) point:
/// D(lambda), D(-lambda), D(0) with lambda = sqrt(1-kappa).
struct EigenbundleDecomposition {
  double lambda = 0.0;
  int dim_plus = 0, dim_minus = 0, dim_zero = 0;
  Matrix basis_plus, basis_minus;   // columns
  Vec basis_zero;
  double orthogonality_residual = 0.0;
  double phi_mapping_residual = 0.0;   // phi D(lambda) inside D(-lambda)
  double xi_alignment_residual = 0.0;  // D(0) spanned by xi
};

/// Throws when kappa is within 1e-6 of 1 (degenerate decomposition).
EigenbundleDecomposition eigenbundles(const ContactMetricStructure& s, const Vec& x, double kappa);

/// Weak semisymmetry data: the derivation R(X,xi).R contracted back to
/// (Y,xi,xi) (instance_residual) and over all slots (full_residual), both
/// algebraic in R and maximised over basis tuples.
struct SemisymmetryReport {
  double instance_residual = 0.0;
  double full_residual = 0.0;
};
SemisymmetryReport check_weak_semisymmetry(const ContactMetricStructure& s, const Vec& x);
SemisymmetryReport check_weak_semisymmetry_from(const GeometryData& geo);

/// g-orthonormal frame with xi as the last column; the first dim-1 columns
/// span the contact subbundle ker eta.
Matrix orthonormal_frame_xi_last(const GeometryData& geo);

} // namespace kontact

#endif
