#include "kontact/kmu.hpp"

#include <cmath>

#include "kontact/error.hpp"

namespace kontact {

namespace {

double g_inner(const Matrix& g, const Vec& u, const Vec& v) {
  double s = 0.0;
  for (int i = 0; i < g.rows; ++i)
    for (int j = 0; j < g.cols; ++j)
      s += g(i, j) * u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
  return s;
}

Vec column(const Matrix& m, int j) {
  Vec v(static_cast<std::size_t>(m.rows));
  for (int i = 0; i < m.rows; ++i) v[static_cast<std::size_t>(i)] = m(i, j);
  return v;
}

Matrix operator_of_weak_form(const GeometryData& geo, double kappa, double mu, bool with_mu) {
  const int d = geo.dim;
  Matrix rhs(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double v = kappa * ((i == j ? 1.0 : 0.0) -
                          geo.xi[static_cast<std::size_t>(i)] * geo.eta[static_cast<std::size_t>(j)]);
      if (with_mu) v += mu * geo.h(i, j);
      rhs(i, j) = v;
    }
  return rhs;
}

} // namespace

Matrix orthonormal_frame_xi_last(const GeometryData& geo) {
  const int d = geo.dim;
  std::vector<Vec> basis;
  basis.reserve(static_cast<std::size_t>(d));

  Vec xi = geo.xi;
  double nxi = std::sqrt(g_inner(geo.g, xi, xi));
  if (nxi <= 0.0) throw Error("orthonormal frame: xi has nonpositive norm");
  for (double& v : xi) v /= nxi;
  basis.push_back(xi);

  for (int cand = 0; cand < d && static_cast<int>(basis.size()) < d; ++cand) {
    Vec v(static_cast<std::size_t>(d), 0.0);
    v[static_cast<std::size_t>(cand)] = 1.0;
    double orig = g_inner(geo.g, v, v);
    for (const Vec& u : basis) {
      double c = g_inner(geo.g, v, u);
      for (int i = 0; i < d; ++i) v[static_cast<std::size_t>(i)] -= c * u[static_cast<std::size_t>(i)];
    }
    double rem = g_inner(geo.g, v, v);
    if (rem <= 1e-12 * std::max(orig, 1.0)) continue;
    double n = std::sqrt(rem);
    for (double& w : v) w /= n;
    basis.push_back(std::move(v));
  }
  if (static_cast<int>(basis.size()) != d)
    throw Error("orthonormal frame: Gram-Schmidt failed to complete a basis");

  Matrix frame(d, d);
  for (int j = 1; j < d; ++j)
    for (int i = 0; i < d; ++i) frame(i, j - 1) = basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  for (int i = 0; i < d; ++i) frame(i, d - 1) = basis[0][static_cast<std::size_t>(i)];
  return frame;
}

KappaMuReport estimate_kappa_mu_from(const GeometryData& geo, double h_tol) {
  const int d = geo.dim;
  KappaMuReport rep;
  Matrix frame = orthonormal_frame_xi_last(geo);

  double h_norm = max_abs(geo.h);
  rep.is_kcontact = h_norm < h_tol;
  const bool fit_mu = !rep.is_kcontact;

  const int rows = d * (d - 1);
  Matrix a(rows, fit_mu ? 2 : 1);
  Vec b(static_cast<std::size_t>(rows), 0.0);
  int r = 0;
  for (int col = 0; col < d - 1; ++col) {
    Vec u = column(frame, col);
    Vec lu = geo.l * u;
    Vec hu = geo.h * u;
    double eta_u = 0.0;
    for (int i = 0; i < d; ++i) eta_u += geo.eta[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
    for (int i = 0; i < d; ++i, ++r) {
      a(r, 0) = u[static_cast<std::size_t>(i)] - eta_u * geo.xi[static_cast<std::size_t>(i)];
      if (fit_mu) a(r, 1) = hu[static_cast<std::size_t>(i)];
      b[static_cast<std::size_t>(r)] = lu[static_cast<std::size_t>(i)];
    }
  }

  LstsqResult sol = lstsq(a, b);
  rep.kappa = sol.x[0];
  if (fit_mu) {
    rep.mu = sol.x[1];
    rep.mu_present = true;
    rep.rank_deficient_mu = sol.rank_deficient;
  } else {
    rep.mu_present = false;
    rep.rank_deficient_mu = true;
  }

  Matrix rhs = operator_of_weak_form(geo, rep.kappa, rep.mu, rep.mu_present);
  rep.residual_weak = max_abs(geo.l - rhs);
  rep.lambda = std::sqrt(std::max(0.0, 1.0 - rep.kappa));
  rep.residual_strong = check_strong_kmu_from(geo, rep.kappa, rep.mu_present ? rep.mu : 0.0);
  return rep;
}

KappaMuReport estimate_kappa_mu(const ContactMetricStructure& s, const Vec& x, double h_tol) {
  return estimate_kappa_mu_from(geometry_at(s, x), h_tol);
}

StructureKmuFit fit_structure_kmu(const ContactMetricStructure& s, double h_tol) {
  StructureKmuFit fit;
  for (const Vec& x : s.sample_points()) fit.per_point.push_back(estimate_kappa_mu(s, x, h_tol));
  if (fit.per_point.empty()) return fit;

  double kmin = fit.per_point.front().kappa, kmax = kmin;
  bool mu_everywhere = true;
  double mmin = 0.0, mmax = 0.0;
  bool mu_init = false;
  double worst_weak = 0.0, worst_strong = 0.0;
  bool all_kcontact = true;
  for (const KappaMuReport& r : fit.per_point) {
    kmin = std::min(kmin, r.kappa);
    kmax = std::max(kmax, r.kappa);
    if (r.mu_present) {
      if (!mu_init) {
        mmin = mmax = r.mu;
        mu_init = true;
      } else {
        mmin = std::min(mmin, r.mu);
        mmax = std::max(mmax, r.mu);
      }
    } else {
      mu_everywhere = false;
    }
    worst_weak = std::max(worst_weak, r.residual_weak);
    worst_strong = std::max(worst_strong, r.residual_strong);
    all_kcontact = all_kcontact && r.is_kcontact;
  }
  fit.kappa_spread = kmax - kmin;
  fit.mu_spread = mu_init ? mmax - mmin : 0.0;
  fit.constant = fit.kappa_spread <= 1e-6 && (!mu_init || fit.mu_spread <= 1e-6);

  fit.combined.kappa = 0.5 * (kmin + kmax);
  fit.combined.mu_present = mu_everywhere && mu_init;
  fit.combined.mu = fit.combined.mu_present ? 0.5 * (mmin + mmax) : 0.0;
  fit.combined.lambda = std::sqrt(std::max(0.0, 1.0 - fit.combined.kappa));
  fit.combined.residual_weak = worst_weak;
  fit.combined.residual_strong = worst_strong;
  fit.combined.is_kcontact = all_kcontact;
  fit.combined.rank_deficient_mu = !fit.combined.mu_present;
  return fit;
}

VerificationReport check_weak_kmu_identities(const ContactMetricStructure& s, const Vec& x,
                                             double kappa, double mu, double tol) {
  GeometryData geo = geometry_at(s, x);
  VerificationReport rep;
  rep.subject = s.name();

  Matrix h2 = geo.h * geo.h;
  Matrix phi2 = geo.phi * geo.phi;
  rep.add("h-square-identity", max_abs(h2 - (kappa - 1.0) * phi2), tol);
  rep.add("kappa-bound", std::max(0.0, kappa - 1.0), tol);
  rep.add("nabla-xi-h-mu-identity", max_abs(geo.nabla_xi_h + mu * (geo.phi * geo.h)), tol);
  Matrix rhs = (2.0 - mu) * (geo.phi * geo.h) + (2.0 * (1.0 - kappa)) * geo.phi;
  rep.add("lie-xi-h-kmu-identity", max_abs(geo.lie_xi_h - rhs), tol);
  return rep;
}

double check_strong_kmu_from(const GeometryData& geo, double kappa, double mu) {
  const int d = geo.dim;
  double worst = 0.0;
  for (int l = 0; l < d; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double v = 0.0;
        for (int k = 0; k < d; ++k)
          v += geo.curvature.at({l, i, j, k}) * geo.xi[static_cast<std::size_t>(k)];
        double ei = geo.eta[static_cast<std::size_t>(i)];
        double ej = geo.eta[static_cast<std::size_t>(j)];
        double want = kappa * (ej * (l == i ? 1.0 : 0.0) - ei * (l == j ? 1.0 : 0.0)) +
                      mu * (ej * geo.h(l, i) - ei * geo.h(l, j));
        worst = std::max(worst, std::fabs(v - want));
      }
  return worst;
}

double check_strong_kmu(const ContactMetricStructure& s, const Vec& x, double kappa, double mu) {
  return check_strong_kmu_from(geometry_at(s, x), kappa, mu);
}

EigenbundleDecomposition eigenbundles(const ContactMetricStructure& s, const Vec& x,
                                      double kappa) {
  if (kappa > 1.0 - 1e-6)
    throw Error("eigenbundle decomposition is degenerate on a K-contact structure");
  GeometryData geo = geometry_at(s, x);
  const int d = geo.dim;

  EigenbundleDecomposition dec;
  dec.lambda = std::sqrt(1.0 - kappa);
  SymEigenResult eig = sym_eigen(geo.h, geo.g);

  const double cluster_tol = 1e-6 * std::max(1.0, dec.lambda);
  std::vector<int> plus, minus, zero;
  for (int i = 0; i < d; ++i) {
    double ev = eig.eigenvalues[static_cast<std::size_t>(i)];
    if (std::fabs(ev - dec.lambda) <= cluster_tol)
      plus.push_back(i);
    else if (std::fabs(ev + dec.lambda) <= cluster_tol)
      minus.push_back(i);
    else if (std::fabs(ev) <= cluster_tol)
      zero.push_back(i);
  }
  dec.dim_plus = static_cast<int>(plus.size());
  dec.dim_minus = static_cast<int>(minus.size());
  dec.dim_zero = static_cast<int>(zero.size());

  dec.basis_plus = Matrix(d, dec.dim_plus);
  for (int j = 0; j < dec.dim_plus; ++j)
    for (int i = 0; i < d; ++i) dec.basis_plus(i, j) = eig.eigenvectors(i, plus[static_cast<std::size_t>(j)]);
  dec.basis_minus = Matrix(d, dec.dim_minus);
  for (int j = 0; j < dec.dim_minus; ++j)
    for (int i = 0; i < d; ++i) dec.basis_minus(i, j) = eig.eigenvectors(i, minus[static_cast<std::size_t>(j)]);
  dec.basis_zero = Vec(static_cast<std::size_t>(d), 0.0);
  if (!zero.empty())
    for (int i = 0; i < d; ++i) dec.basis_zero[static_cast<std::size_t>(i)] = eig.eigenvectors(i, zero[0]);

  // g-orthonormality across all returned eigenvectors.
  for (int c1 = 0; c1 < d; ++c1)
    for (int c2 = 0; c2 < d; ++c2) {
      double ip = g_inner(geo.g, column(eig.eigenvectors, c1), column(eig.eigenvectors, c2));
      dec.orthogonality_residual =
          std::max(dec.orthogonality_residual, std::fabs(ip - (c1 == c2 ? 1.0 : 0.0)));
    }

  // phi maps D(lambda) into D(-lambda): remove the D(-lambda) projection.
  for (int j = 0; j < dec.dim_plus; ++j) {
    Vec w = geo.phi * column(dec.basis_plus, j);
    for (int k = 0; k < dec.dim_minus; ++k) {
      Vec u = column(dec.basis_minus, k);
      double c = g_inner(geo.g, w, u);
      for (int i = 0; i < d; ++i) w[static_cast<std::size_t>(i)] -= c * u[static_cast<std::size_t>(i)];
    }
    dec.phi_mapping_residual = std::max(dec.phi_mapping_residual, max_abs(w));
  }

  if (!zero.empty()) {
    Vec v0 = dec.basis_zero;
    double c = g_inner(geo.g, v0, geo.xi);
    for (int i = 0; i < d; ++i) v0[static_cast<std::size_t>(i)] -= c * geo.xi[static_cast<std::size_t>(i)];
    dec.xi_alignment_residual = max_abs(v0);
  }
  return dec;
}

SemisymmetryReport check_weak_semisymmetry_from(const GeometryData& geo) {
  const int d = geo.dim;
  SemisymmetryReport rep;

  // Precompute the operator of R(e_i, e_j) and of R(e_i, xi).
  std::vector<Matrix> rop(static_cast<std::size_t>(d) * d, Matrix(d, d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Matrix m(d, d);
      for (int l = 0; l < d; ++l)
        for (int k = 0; k < d; ++k) m(l, k) = geo.curvature.at({l, i, j, k});
      rop[static_cast<std::size_t>(i) * d + j] = std::move(m);
    }
  std::vector<Matrix> rxi(static_cast<std::size_t>(d), Matrix(d, d));
  for (int i = 0; i < d; ++i) {
    Matrix m(d, d);
    for (int j = 0; j < d; ++j) m = m + geo.xi[static_cast<std::size_t>(j)] * rop[static_cast<std::size_t>(i) * d + j];
    rxi[static_cast<std::size_t>(i)] = std::move(m);
  }

  // Instance: (R(X,xi).R)(Y,xi)xi for X = e_a, Y = e_b.
  for (int a = 0; a < d; ++a) {
    const Matrix& A = rxi[static_cast<std::size_t>(a)];
    Vec axi = A * geo.xi;   // = l(e_a) when xi is normalized; kept general
    for (int b = 0; b < d; ++b) {
      Vec t1 = A * column(geo.l, b);
      Vec ab = column(A, b);
      Vec t2 = geo.l * ab;
      // t3 = R(e_b, A xi) xi.
      Vec t3(static_cast<std::size_t>(d), 0.0);
      for (int j = 0; j < d; ++j) {
        if (axi[static_cast<std::size_t>(j)] == 0.0) continue;
        Vec contrib = rop[static_cast<std::size_t>(b) * d + j] * geo.xi;
        for (int i = 0; i < d; ++i)
          t3[static_cast<std::size_t>(i)] += axi[static_cast<std::size_t>(j)] * contrib[static_cast<std::size_t>(i)];
      }
      Vec t4 = rxi[static_cast<std::size_t>(b)] * axi;
      for (int i = 0; i < d; ++i) {
        double v = t1[static_cast<std::size_t>(i)] - t2[static_cast<std::size_t>(i)] -
                   t3[static_cast<std::size_t>(i)] - t4[static_cast<std::size_t>(i)];
        rep.instance_residual = std::max(rep.instance_residual, std::fabs(v));
      }
    }
  }

  // Full derivation over all slots: (R(X,xi).R)(Y,Z)W.
  for (int a = 0; a < d; ++a) {
    const Matrix& A = rxi[static_cast<std::size_t>(a)];
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c) {
        const Matrix& rbc = rop[static_cast<std::size_t>(b) * d + c];
        for (int e = 0; e < d; ++e) {
          Vec t1 = A * column(rbc, e);
          Vec t2(static_cast<std::size_t>(d), 0.0);
          Vec t3(static_cast<std::size_t>(d), 0.0);
          for (int m = 0; m < d; ++m) {
            double ab = A(m, b);
            double ac = A(m, c);
            if (ab != 0.0) {
              const Matrix& rmc = rop[static_cast<std::size_t>(m) * d + c];
              for (int i = 0; i < d; ++i) t2[static_cast<std::size_t>(i)] += ab * rmc(i, e);
            }
            if (ac != 0.0) {
              const Matrix& rbm = rop[static_cast<std::size_t>(b) * d + m];
              for (int i = 0; i < d; ++i) t3[static_cast<std::size_t>(i)] += ac * rbm(i, e);
            }
          }
          Vec t4 = rbc * column(A, e);
          for (int i = 0; i < d; ++i) {
            double v = t1[static_cast<std::size_t>(i)] - t2[static_cast<std::size_t>(i)] -
                       t3[static_cast<std::size_t>(i)] - t4[static_cast<std::size_t>(i)];
            rep.full_residual = std::max(rep.full_residual, std::fabs(v));
          }
        }
      }
  }
  return rep;
}

SemisymmetryReport check_weak_semisymmetry(const ContactMetricStructure& s, const Vec& x) {
  return check_weak_semisymmetry_from(geometry_at(s, x));
}

} // namespace kontact
