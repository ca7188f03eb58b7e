#include "kontact/jet.hpp"

#include <cmath>

namespace kontact {

Jet Jet::constant(int dim, int order, double value) {
  Jet j(dim, order);
  j.v = value;
  return j;
}

Jet Jet::variable(int dim, int order, int index, double value) {
  if (index < 0 || index >= dim) throw Error("jet variable index out of range");
  Jet j(dim, order);
  j.v = value;
  if (order >= 1) j.g[index] = 1.0;
  return j;
}

Jet Jet::partial(int j) const {
  if (j < 0 || j >= dim) throw Error("jet partial index out of range");
  if (order < 1) throw Error("jet partial: derivative information not available");
  Jet r(dim, order - 1);
  r.v = g[j];
  if (r.order >= 1)
    for (int k = 0; k < dim; ++k) r.g[k] = h(j, k);
  return r;
}

static void check_match(const Jet& x, const Jet& y) {
  if (x.dim != y.dim) throw Error("jet dimension mismatch");
}

Jet operator+(const Jet& x, const Jet& y) {
  check_match(x, y);
  Jet r(x.dim, std::min(x.order, y.order));
  r.v = x.v + y.v;
  for (int i = 0; i < x.dim; ++i) r.g[i] = x.g[i] + y.g[i];
  for (std::size_t i = 0; i < r.h.a.size(); ++i) r.h.a[i] = x.h.a[i] + y.h.a[i];
  return r;
}

Jet operator-(const Jet& x, const Jet& y) {
  check_match(x, y);
  Jet r(x.dim, std::min(x.order, y.order));
  r.v = x.v - y.v;
  for (int i = 0; i < x.dim; ++i) r.g[i] = x.g[i] - y.g[i];
  for (std::size_t i = 0; i < r.h.a.size(); ++i) r.h.a[i] = x.h.a[i] - y.h.a[i];
  return r;
}

Jet operator-(const Jet& x) {
  Jet r = x;
  r.v = -r.v;
  for (double& t : r.g) t = -t;
  for (double& t : r.h.a) t = -t;
  return r;
}

Jet operator*(const Jet& x, const Jet& y) {
  check_match(x, y);
  Jet r(x.dim, std::min(x.order, y.order));
  r.v = x.v * y.v;
  for (int i = 0; i < x.dim; ++i) r.g[i] = x.g[i] * y.v + x.v * y.g[i];
  for (int i = 0; i < x.dim; ++i)
    for (int j = 0; j < x.dim; ++j)
      r.h(i, j) = x.h(i, j) * y.v + x.v * y.h(i, j) + x.g[i] * y.g[j] + x.g[j] * y.g[i];
  return r;
}

Jet operator*(double s, const Jet& x) {
  Jet r = x;
  r.v *= s;
  for (double& t : r.g) t *= s;
  for (double& t : r.h.a) t *= s;
  return r;
}

// Composition with a univariate function f: value f(u), gradient f'(u) du,
// Hessian f'(u) d2u + f''(u) du (x) du.
static Jet chain(const Jet& u, double f, double fp, double fpp) {
  Jet r(u.dim, u.order);
  r.v = f;
  for (int i = 0; i < u.dim; ++i) r.g[i] = fp * u.g[i];
  for (int i = 0; i < u.dim; ++i)
    for (int j = 0; j < u.dim; ++j)
      r.h(i, j) = fp * u.h(i, j) + fpp * u.g[i] * u.g[j];
  return r;
}

Jet operator/(const Jet& x, const Jet& y) {
  check_match(x, y);
  if (y.v == 0.0) throw Error("jet division by zero");
  const double inv = 1.0 / y.v;
  return x * chain(y, inv, -inv * inv, 2.0 * inv * inv * inv);
}

Jet sin(const Jet& x) { return chain(x, std::sin(x.v), std::cos(x.v), -std::sin(x.v)); }

Jet cos(const Jet& x) { return chain(x, std::cos(x.v), -std::sin(x.v), -std::cos(x.v)); }

Jet exp(const Jet& x) {
  const double e = std::exp(x.v);
  return chain(x, e, e, e);
}

Jet sqrt(const Jet& x) {
  if (x.v < 0.0) throw Error("jet sqrt of a negative value");
  if (x.v == 0.0 && x.order > 0) throw Error("jet sqrt derivative at zero");
  const double s = std::sqrt(x.v);
  if (x.order == 0) return chain(x, s, 0.0, 0.0);
  return chain(x, s, 0.5 / s, -0.25 / (s * x.v));
}

Jet pow_int(const Jet& x, long long n) {
  if (n == 0) return Jet::constant(x.dim, x.order, 1.0);
  if (n == 1) return x;
  if (n < 0 && x.v == 0.0) throw Error("jet negative power of zero");
  const double f = std::pow(x.v, static_cast<double>(n));
  const double fp = static_cast<double>(n) * std::pow(x.v, static_cast<double>(n - 1));
  const double fpp =
      static_cast<double>(n) * static_cast<double>(n - 1) * std::pow(x.v, static_cast<double>(n - 2));
  return chain(x, f, fp, fpp);
}

Jet pow_real(const Jet& x, double r) {
  if (x.v <= 0.0) throw Error("jet real power of a non-positive base");
  const double f = std::pow(x.v, r);
  const double fp = r * f / x.v;
  const double fpp = r * (r - 1.0) * f / (x.v * x.v);
  return chain(x, f, fp, fpp);
}

} // namespace kontact
