#include "kontact/chart.hpp"

#include <cmath>
#include <cstddef>
#include <utility>

#include "kontact/error.hpp"

namespace kontact {

namespace {

std::size_t pow_dim(int dim, int rank) {
  std::size_t n = 1;
  for (int i = 0; i < rank; ++i) n *= static_cast<std::size_t>(dim);
  return n;
}

Jet eval_component(const ExprPtr& e, const Vec& x, int order) {
  if (!e) return Jet::constant(static_cast<int>(x.size()), order, 0.0);
  return eval_jet(e, x, order);
}

double eval_value(const ExprPtr& e, const Vec& x) {
  if (!e) return 0.0;
  return eval_jet(e, x, 0).v;
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw Error(msg);
}

void require_valence(const ChartField& f, const std::vector<SlotKind>& slots,
                     const std::string& what) {
  require(f.slots == slots, what + ": unexpected field valence");
}

void require_point(const ChartField& f, const Point& p, const std::string& what) {
  require(p.dim() == f.dim, what + ": point dimension does not match chart dimension");
}

const std::vector<SlotKind> kVector{SlotKind::Up};
const std::vector<SlotKind> kCovector{SlotKind::Down};
const std::vector<SlotKind> kOperator{SlotKind::Up, SlotKind::Down};
const std::vector<SlotKind> kBilinear{SlotKind::Down, SlotKind::Down};

/// Christoffel symbols as order-1 jets, from order-2 metric jets.
std::vector<Jet> christoffel_jets(const std::vector<Jet>& g_jets, int d) {
  std::vector<Jet> ginv = jet_matrix_inverse(g_jets, d);
  std::vector<Jet> gamma(pow_dim(d, 3), Jet::constant(d, 1, 0.0));
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Jet s = Jet::constant(d, 1, 0.0);
        for (int l = 0; l < d; ++l) {
          Jet dg = g_jets[j * d + l].partial(i) + g_jets[i * d + l].partial(j) -
                   g_jets[i * d + j].partial(l);
          s = s + ginv[k * d + l] * dg;
        }
        gamma[(static_cast<std::size_t>(k) * d + i) * d + j] = 0.5 * s;
      }
  return gamma;
}

ChristoffelSymbols christoffel_values(const std::vector<Jet>& gamma_jets, int d) {
  ChristoffelSymbols out(d);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        out.at(k, i, j) = gamma_jets[(static_cast<std::size_t>(k) * d + i) * d + j].v;
  return out;
}

/// R^l_{ijk} = d_i G^l_{jk} - d_j G^l_{ik} + G^l_{im} G^m_{jk} - G^l_{jm} G^m_{ik}.
TensorValue riemann_from_gamma(const std::vector<Jet>& gamma_jets, int d) {
  TensorValue r(d, {SlotKind::Up, SlotKind::Down, SlotKind::Down, SlotKind::Down});
  auto gj = [&](int k, int i, int j) -> const Jet& {
    return gamma_jets[(static_cast<std::size_t>(k) * d + i) * d + j];
  };
  for (int l = 0; l < d; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          double v = gj(l, j, k).g[i] - gj(l, i, k).g[j];
          for (int m = 0; m < d; ++m)
            v += gj(l, i, m).v * gj(m, j, k).v - gj(l, j, m).v * gj(m, i, k).v;
          r.at({l, i, j, k}) = v;
        }
  return r;
}

Vec shifted(const Vec& x, int i, double dx) {
  Vec y = x;
  y[static_cast<std::size_t>(i)] += dx;
  return y;
}

} // namespace

ChartField::ChartField(int d, std::vector<SlotKind> s, std::string n)
    : dim(d), slots(std::move(s)), name(std::move(n)) {
  comps.resize(pow_dim(dim, rank()));
}

std::size_t ChartField::offset(std::initializer_list<int> idx) const {
  require(static_cast<int>(idx.size()) == rank(), "chart field index rank mismatch");
  std::size_t off = 0;
  for (int v : idx) {
    require(v >= 0 && v < dim, "chart field index out of range");
    off = off * static_cast<std::size_t>(dim) + static_cast<std::size_t>(v);
  }
  return off;
}

void ChartField::validate() const {
  for (const ExprPtr& e : comps) {
    if (!e) continue;
    int need = min_dimension(e);
    if (need > dim)
      throw Error("field '" + name + "' references x" + std::to_string(need) +
                  " on a " + std::to_string(dim) + "-dimensional chart");
  }
}

std::vector<Jet> eval_field(const ChartField& f, const Point& p, int order) {
  require_point(f, p, "eval_field");
  std::vector<Jet> out;
  out.reserve(f.comps.size());
  for (const ExprPtr& e : f.comps) out.push_back(eval_component(e, p.x, order));
  return out;
}

TensorValue value_of(const ChartField& f, const Point& p) {
  require_point(f, p, "value_of");
  TensorValue t(f.dim, f.slots);
  for (std::size_t i = 0; i < f.comps.size(); ++i) t.c[i] = eval_value(f.comps[i], p.x);
  return t;
}

TensorValue exterior_derivative(const ChartField& omega, const Point& p) {
  require_valence(omega, kCovector, "exterior_derivative");
  require_point(omega, p, "exterior_derivative");
  const int d = omega.dim;
  std::vector<Jet> w = eval_field(omega, p, 1);
  TensorValue out(d, kBilinear);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out.at({i, j}) = w[j].g[i] - w[i].g[j];
  return out;
}

TensorValue lie_bracket(const ChartField& x, const ChartField& y, const Point& p) {
  require_valence(x, kVector, "lie_bracket");
  require_valence(y, kVector, "lie_bracket");
  require(x.dim == y.dim, "lie_bracket: dimension mismatch");
  require_point(x, p, "lie_bracket");
  const int d = x.dim;
  std::vector<Jet> xj = eval_field(x, p, 1);
  std::vector<Jet> yj = eval_field(y, p, 1);
  TensorValue out(d, kVector);
  for (int k = 0; k < d; ++k) {
    double v = 0.0;
    for (int i = 0; i < d; ++i) v += xj[i].v * yj[k].g[i] - yj[i].v * xj[k].g[i];
    out.at({k}) = v;
  }
  return out;
}

TensorValue lie_derivative_11(const ChartField& t, const ChartField& x, const Point& p) {
  require_valence(t, kOperator, "lie_derivative_11");
  require_valence(x, kVector, "lie_derivative_11");
  require(t.dim == x.dim, "lie_derivative_11: dimension mismatch");
  require_point(t, p, "lie_derivative_11");
  const int d = t.dim;
  std::vector<Jet> tj = eval_field(t, p, 1);
  std::vector<Jet> xj = eval_field(x, p, 1);
  TensorValue out(d, kOperator);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double v = 0.0;
      for (int k = 0; k < d; ++k)
        v += xj[k].v * tj[i * d + j].g[k] - tj[k * d + j].v * xj[i].g[k] +
             tj[i * d + k].v * xj[j].g[k];
      out.at({i, j}) = v;
    }
  return out;
}

ChristoffelSymbols christoffel(const ChartField& g, const Point& p) {
  require_valence(g, kBilinear, "christoffel");
  require_point(g, p, "christoffel");
  std::vector<Jet> gj = eval_field(g, p, 1);
  return christoffel_values(christoffel_jets(gj, g.dim), g.dim);
}

TensorValue riemann(const ChartField& g, const Point& p) {
  require_valence(g, kBilinear, "riemann");
  require_point(g, p, "riemann");
  std::vector<Jet> gj = eval_field(g, p, 2);
  return riemann_from_gamma(christoffel_jets(gj, g.dim), g.dim);
}

TensorValue covariant_derivative(const ChartField& t, const ChartField& x,
                                 const ChartField& g, const Point& p) {
  require_valence(x, kVector, "covariant_derivative");
  require(t.dim == x.dim && t.dim == g.dim, "covariant_derivative: dimension mismatch");
  require_point(t, p, "covariant_derivative");
  const int d = t.dim;
  ChristoffelSymbols gam = christoffel(g, p);
  std::vector<Jet> tj = eval_field(t, p, 1);
  TensorValue xv = value_of(x, p);
  TensorValue out(d, t.slots);

  if (t.slots == kVector) {
    for (int k = 0; k < d; ++k) {
      double v = 0.0;
      for (int i = 0; i < d; ++i) {
        double s = tj[k].g[i];
        for (int m = 0; m < d; ++m) s += gam.at(k, i, m) * tj[m].v;
        v += xv.at({i}) * s;
      }
      out.at({k}) = v;
    }
    return out;
  }
  if (t.slots == kCovector) {
    for (int j = 0; j < d; ++j) {
      double v = 0.0;
      for (int i = 0; i < d; ++i) {
        double s = tj[j].g[i];
        for (int m = 0; m < d; ++m) s -= gam.at(m, i, j) * tj[m].v;
        v += xv.at({i}) * s;
      }
      out.at({j}) = v;
    }
    return out;
  }
  if (t.slots == kOperator) {
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j) {
        double v = 0.0;
        for (int i = 0; i < d; ++i) {
          double s = tj[k * d + j].g[i];
          for (int m = 0; m < d; ++m)
            s += gam.at(k, i, m) * tj[m * d + j].v - gam.at(m, i, j) * tj[k * d + m].v;
          v += xv.at({i}) * s;
        }
        out.at({k, j}) = v;
      }
    return out;
  }
  if (t.slots == kBilinear) {
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        double v = 0.0;
        for (int i = 0; i < d; ++i) {
          double s = tj[j * d + k].g[i];
          for (int m = 0; m < d; ++m)
            s -= gam.at(m, i, j) * tj[m * d + k].v + gam.at(m, i, k) * tj[j * d + m].v;
          v += xv.at({i}) * s;
        }
        out.at({j, k}) = v;
      }
    return out;
  }
  throw Error("covariant_derivative: unsupported field valence");
}

Jet finite_difference_oracle(const ExprPtr& e, const Point& p, double step) {
  require(step > 0.0, "finite_difference_oracle: step must be positive");
  const int d = p.dim();
  auto f = [&](const Vec& x) { return eval_value(e, x); };
  Jet out = Jet::constant(d, 2, 0.0);
  const double f0 = f(p.x);
  out.v = f0;
  for (int i = 0; i < d; ++i) {
    const double fp = f(shifted(p.x, i, step));
    const double fm = f(shifted(p.x, i, -step));
    out.g[static_cast<std::size_t>(i)] = (fp - fm) / (2.0 * step);
    out.h(i, i) = (fp - 2.0 * f0 + fm) / (step * step);
  }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const double fpp = f(shifted(shifted(p.x, i, step), j, step));
      const double fpm = f(shifted(shifted(p.x, i, step), j, -step));
      const double fmp = f(shifted(shifted(p.x, i, -step), j, step));
      const double fmm = f(shifted(shifted(p.x, i, -step), j, -step));
      const double v = (fpp - fpm - fmp + fmm) / (4.0 * step * step);
      out.h(i, j) = v;
      out.h(j, i) = v;
    }
  return out;
}

ChristoffelSymbols fd_christoffel(const ChartField& g, const Point& p, double step) {
  require_valence(g, kBilinear, "fd_christoffel");
  require_point(g, p, "fd_christoffel");
  require(step > 0.0, "fd_christoffel: step must be positive");
  const int d = g.dim;

  Matrix g0 = value_of(g, p).to_matrix();
  Matrix ginv = inverse(g0);

  // dg[i][j][l] = d_i g_{jl} by central differences of metric values.
  std::vector<double> dg(pow_dim(d, 3), 0.0);
  for (int i = 0; i < d; ++i) {
    Matrix gp = value_of(g, Point(shifted(p.x, i, step))).to_matrix();
    Matrix gm = value_of(g, Point(shifted(p.x, i, -step))).to_matrix();
    for (int j = 0; j < d; ++j)
      for (int l = 0; l < d; ++l)
        dg[(static_cast<std::size_t>(i) * d + j) * d + l] =
            (gp(j, l) - gm(j, l)) / (2.0 * step);
  }
  auto dgat = [&](int i, int j, int l) {
    return dg[(static_cast<std::size_t>(i) * d + j) * d + l];
  };

  ChristoffelSymbols out(d);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double s = 0.0;
        for (int l = 0; l < d; ++l)
          s += ginv(k, l) * (dgat(i, j, l) + dgat(j, i, l) - dgat(l, i, j));
        out.at(k, i, j) = 0.5 * s;
      }
  return out;
}

TensorValue fd_riemann(const ChartField& g, const Point& p, double step) {
  require_valence(g, kBilinear, "fd_riemann");
  require_point(g, p, "fd_riemann");
  const int d = g.dim;
  ChristoffelSymbols gam0 = fd_christoffel(g, p, step);

  // dgam[i] holds the symbols at p shifted along +/- e_i, differenced.
  std::vector<double> dgam(pow_dim(d, 4), 0.0);
  for (int i = 0; i < d; ++i) {
    ChristoffelSymbols gp = fd_christoffel(g, Point(shifted(p.x, i, step)), step);
    ChristoffelSymbols gm = fd_christoffel(g, Point(shifted(p.x, i, -step)), step);
    for (int l = 0; l < d; ++l)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          dgam[((static_cast<std::size_t>(i) * d + l) * d + j) * d + k] =
              (gp.at(l, j, k) - gm.at(l, j, k)) / (2.0 * step);
  }
  auto dgat = [&](int i, int l, int j, int k) {
    return dgam[((static_cast<std::size_t>(i) * d + l) * d + j) * d + k];
  };

  TensorValue r(d, {SlotKind::Up, SlotKind::Down, SlotKind::Down, SlotKind::Down});
  for (int l = 0; l < d; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          double v = dgat(i, l, j, k) - dgat(j, l, i, k);
          for (int m = 0; m < d; ++m)
            v += gam0.at(l, i, m) * gam0.at(m, j, k) - gam0.at(l, j, m) * gam0.at(m, i, k);
          r.at({l, i, j, k}) = v;
        }
  return r;
}

std::vector<Jet> jet_matrix_inverse(const std::vector<Jet>& m, int dim) {
  require(m.size() == pow_dim(dim, 2), "jet_matrix_inverse: size mismatch");
  const int d = dim;
  int order = 2;
  for (const Jet& j : m) order = order < j.order ? order : j.order;
  std::vector<Jet> a = m;
  std::vector<Jet> inv(m.size(), Jet::constant(d, order, 0.0));
  for (int i = 0; i < d; ++i) inv[i * d + i] = Jet::constant(d, order, 1.0);

  for (int col = 0; col < d; ++col) {
    int piv = col;
    double best = std::fabs(a[col * d + col].v);
    for (int r = col + 1; r < d; ++r) {
      double v = std::fabs(a[r * d + col].v);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) throw Error("jet_matrix_inverse: singular matrix");
    if (piv != col)
      for (int c = 0; c < d; ++c) {
        std::swap(a[piv * d + c], a[col * d + c]);
        std::swap(inv[piv * d + c], inv[col * d + c]);
      }
    Jet pivot = a[col * d + col];
    for (int c = 0; c < d; ++c) {
      a[col * d + c] = a[col * d + c] / pivot;
      inv[col * d + c] = inv[col * d + c] / pivot;
    }
    for (int r = 0; r < d; ++r) {
      if (r == col) continue;
      Jet factor = a[r * d + col];
      if (factor.v == 0.0) {
        bool flat = true;
        for (double gv : factor.g) flat = flat && gv == 0.0;
        for (double hv : factor.h.a) flat = flat && hv == 0.0;
        if (flat) continue;
      }
      for (int c = 0; c < d; ++c) {
        a[r * d + c] = a[r * d + c] - factor * a[col * d + c];
        inv[r * d + c] = inv[r * d + c] - factor * inv[col * d + c];
      }
    }
  }
  return inv;
}

ChartGeometry compute_chart_geometry(const ChartField& eta, const ChartField& xi,
                                     const ChartField& phi, const ChartField& g,
                                     const Point& p) {
  require_valence(eta, kCovector, "compute_chart_geometry");
  require_valence(xi, kVector, "compute_chart_geometry");
  require_valence(phi, kOperator, "compute_chart_geometry");
  require_valence(g, kBilinear, "compute_chart_geometry");
  require(eta.dim == xi.dim && eta.dim == phi.dim && eta.dim == g.dim,
          "compute_chart_geometry: dimension mismatch");
  require_point(eta, p, "compute_chart_geometry");
  const int d = eta.dim;

  ChartGeometry geo;
  geo.dim = d;
  geo.eta_jets = eval_field(eta, p, 2);
  geo.xi_jets = eval_field(xi, p, 2);
  geo.phi_jets = eval_field(phi, p, 2);
  geo.g_jets = eval_field(g, p, 2);

  geo.eta.resize(d);
  geo.xi.resize(d);
  geo.phi = Matrix(d, d);
  geo.g = Matrix(d, d);
  for (int i = 0; i < d; ++i) {
    geo.eta[static_cast<std::size_t>(i)] = geo.eta_jets[i].v;
    geo.xi[static_cast<std::size_t>(i)] = geo.xi_jets[i].v;
    for (int j = 0; j < d; ++j) {
      geo.phi(i, j) = geo.phi_jets[i * d + j].v;
      geo.g(i, j) = geo.g_jets[i * d + j].v;
    }
  }
  geo.ginv = inverse(geo.g);

  geo.deta = Matrix(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) geo.deta(i, j) = geo.eta_jets[j].g[i] - geo.eta_jets[i].g[j];

  // h = (1/2) L_xi phi, kept as order-1 jets so grad_xi h exists.
  geo.h_jets.assign(static_cast<std::size_t>(d) * d, Jet::constant(d, 1, 0.0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Jet s = Jet::constant(d, 1, 0.0);
      for (int k = 0; k < d; ++k)
        s = s + geo.xi_jets[k] * geo.phi_jets[i * d + j].partial(k) -
            geo.phi_jets[k * d + j] * geo.xi_jets[i].partial(k) +
            geo.phi_jets[i * d + k] * geo.xi_jets[j].partial(k);
      geo.h_jets[static_cast<std::size_t>(i) * d + j] = 0.5 * s;
    }
  geo.h = Matrix(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) geo.h(i, j) = geo.h_jets[static_cast<std::size_t>(i) * d + j].v;

  std::vector<Jet> gamma_jets = christoffel_jets(geo.g_jets, d);
  geo.gamma = christoffel_values(gamma_jets, d);
  geo.curvature = riemann_from_gamma(gamma_jets, d);

  // l = R(., xi)xi.
  geo.l = Matrix(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      double v = 0.0;
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          v += geo.curvature.at({a, b, j, k}) * geo.xi[static_cast<std::size_t>(j)] *
               geo.xi[static_cast<std::size_t>(k)];
      geo.l(a, b) = v;
    }

  auto hj = [&](int i, int j) -> const Jet& { return geo.h_jets[static_cast<std::size_t>(i) * d + j]; };

  geo.nabla_xi_h = Matrix(d, d);
  for (int k = 0; k < d; ++k)
    for (int j = 0; j < d; ++j) {
      double v = 0.0;
      for (int i = 0; i < d; ++i) {
        double s = hj(k, j).g[i];
        for (int m = 0; m < d; ++m)
          s += geo.gamma.at(k, i, m) * geo.h(m, j) - geo.gamma.at(m, i, j) * geo.h(k, m);
        v += geo.xi[static_cast<std::size_t>(i)] * s;
      }
      geo.nabla_xi_h(k, j) = v;
    }

  geo.lie_xi_h = Matrix(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double v = 0.0;
      for (int k = 0; k < d; ++k)
        v += geo.xi[static_cast<std::size_t>(k)] * hj(i, j).g[k] -
             geo.h(k, j) * geo.xi_jets[i].g[k] + geo.h(i, k) * geo.xi_jets[j].g[k];
      geo.lie_xi_h(i, j) = v;
    }

  geo.nabla_phi.assign(pow_dim(d, 3), 0.0);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j) {
        double s = geo.phi_jets[k * d + j].g[i];
        for (int m = 0; m < d; ++m)
          s += geo.gamma.at(k, i, m) * geo.phi(m, j) - geo.gamma.at(m, i, j) * geo.phi(k, m);
        geo.nabla_phi[(static_cast<std::size_t>(i) * d + k) * d + j] = s;
      }

  return geo;
}

} // namespace kontact
