#ifndef KONTACT_CHART_HPP
#define KONTACT_CHART_HPP

#include <string>
#include <vector>

#include "kontact/expr.hpp"
#include "kontact/tensor.hpp"

namespace kontact {

/// A chart point; coordinates are x1..xd in expression syntax.
struct Point {
  Vec x;

  Point() = default;
  explicit Point(Vec v) : x(std::move(v)) {}
  int dim() const { return static_cast<int>(x.size()); }
};

/// A tensor field on a coordinate chart: one expression per component,
/// stored row-major over the slots (same layout as TensorValue).
struct ChartField {
  int dim = 0;
  std::vector<SlotKind> slots;
  std::vector<ExprPtr> comps;
  std::string name;

  ChartField() = default;
  ChartField(int d, std::vector<SlotKind> s, std::string n = "");

  int rank() const { return static_cast<int>(slots.size()); }
  std::size_t size() const { return comps.size(); }

  const ExprPtr& at(std::initializer_list<int> idx) const { return comps[offset(idx)]; }
  void set(std::initializer_list<int> idx, ExprPtr e) { comps[offset(idx)] = std::move(e); }
  std::size_t offset(std::initializer_list<int> idx) const;

  /// Throws if any component references a variable outside the chart dim.
  void validate() const;
};

/// Evaluate every component at p with derivatives up to `order`.
std::vector<Jet> eval_field(const ChartField& f, const Point& p, int order);

/// Component values only, as a TensorValue.
TensorValue value_of(const ChartField& f, const Point& p);

/// Exterior derivative of a 1-form at p, convention without the 1/2 factor:
/// (dw)_{ij} = d_i w_j - d_j w_i.
TensorValue exterior_derivative(const ChartField& omega, const Point& p);

/// Lie bracket of two vector fields at p.
TensorValue lie_bracket(const ChartField& x, const ChartField& y, const Point& p);

/// Lie derivative of a (1,1) field along a vector field at p:
/// (L_X T)^i_j = X^k d_k T^i_j - T^k_j d_k X^i + T^i_k d_j X^k.
TensorValue lie_derivative_11(const ChartField& t, const ChartField& x, const Point& p);

/// Christoffel symbols of a metric field; G^k_{ij} indexed [k][i][j].
struct ChristoffelSymbols {
  int dim = 0;
  Vec g;

  ChristoffelSymbols() = default;
  explicit ChristoffelSymbols(int d) : dim(d), g(static_cast<std::size_t>(d) * d * d, 0.0) {}
  double& at(int k, int i, int j) { return g[(static_cast<std::size_t>(k) * dim + i) * dim + j]; }
  double at(int k, int i, int j) const { return g[(static_cast<std::size_t>(k) * dim + i) * dim + j]; }
};

ChristoffelSymbols christoffel(const ChartField& g, const Point& p);

/// Curvature tensor at p, stored R^l_{ijk} (slots l,i,j,k) with
/// R(e_i,e_j)e_k = R^l_{ijk} e_l.
TensorValue riemann(const ChartField& g, const Point& p);

/// Covariant derivative of a field along a vector field at p, for field
/// valences (1,0), (0,1), (1,1) and (0,2). Throws on other valences.
TensorValue covariant_derivative(const ChartField& t, const ChartField& x,
                                 const ChartField& g, const Point& p);

/// Central-difference approximation of a scalar expression's jet; O(step^2)
/// accurate. Evaluation at stencil points can throw DomainError.
Jet finite_difference_oracle(const ExprPtr& e, const Point& p, double step);

/// Finite-difference Christoffel / curvature oracle channel: derivatives of
/// the metric (and of the Christoffel symbols) by central differences, fully
/// independent of the jet arithmetic.
ChristoffelSymbols fd_christoffel(const ChartField& g, const Point& p, double step);
TensorValue fd_riemann(const ChartField& g, const Point& p, double step);

/// Gauss-Jordan inverse of a jet-valued matrix (partial pivoting on values).
std::vector<Jet> jet_matrix_inverse(const std::vector<Jet>& m, int dim);

/// Everything the contact machinery needs at one chart point, computed in a
/// single pass from order-2 jets of the defining fields. Derived first-order
/// quantities (h, Christoffel symbols) are carried as order-1 jets so they
/// can be differentiated once more.
struct ChartGeometry {
  int dim = 0;
  Vec eta, xi;
  Matrix phi, g, ginv, deta;
  Matrix h, l, nabla_xi_h, lie_xi_h;
  std::vector<Jet> eta_jets, xi_jets, phi_jets, g_jets, h_jets;
  ChristoffelSymbols gamma;
  TensorValue curvature;      // R^l_{ijk}
  Vec nabla_phi;              // [i][k][j] = (grad_{e_i} phi)^k_j
};

ChartGeometry compute_chart_geometry(const ChartField& eta, const ChartField& xi,
                                     const ChartField& phi, const ChartField& g,
                                     const Point& p);

} // namespace kontact

#endif
