#ifndef KONTACT_JET_HPP
#define KONTACT_JET_HPP

#include "kontact/tensor.hpp"

namespace kontact {

/// Truncated Taylor expansion of a scalar function at a point: value,
/// gradient and Hessian. `order` records how many derivative levels are
/// trustworthy (0, 1 or 2); arithmetic propagates the minimum of its
/// operands' orders. Extracting a partial derivative costs one order.
struct Jet {
  int dim = 0;
  int order = 2;
  double v = 0.0;
  Vec g;    // dim entries
  Matrix h; // dim x dim, symmetric

  Jet() = default;
  Jet(int d, int ord) : dim(d), order(ord), g(d, 0.0), h(d, d) {}

  static Jet constant(int dim, int order, double value);
  static Jet variable(int dim, int order, int index, double value);

  /// Jet of the partial derivative with respect to coordinate j; the result
  /// has one order less (its Hessian is unknown and set to zero).
  Jet partial(int j) const;
};

Jet operator+(const Jet& x, const Jet& y);
Jet operator-(const Jet& x, const Jet& y);
Jet operator-(const Jet& x);
Jet operator*(const Jet& x, const Jet& y);
Jet operator*(double s, const Jet& x);
Jet operator/(const Jet& x, const Jet& y); // throws Error on zero denominator

Jet sin(const Jet& x);
Jet cos(const Jet& x);
Jet exp(const Jet& x);
Jet sqrt(const Jet& x);                    // throws Error outside the domain
Jet pow_int(const Jet& x, long long n);    // throws Error on 0 base, n < 0
Jet pow_real(const Jet& x, double r);      // throws Error on base <= 0

} // namespace kontact

#endif
