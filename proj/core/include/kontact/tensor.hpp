#ifndef KONTACT_TENSOR_HPP
#define KONTACT_TENSOR_HPP

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "kontact/error.hpp"

namespace kontact {

using Vec = std::vector<double>;

/// Small dense row-major matrix. Dimensions in this library stay below 10,
/// so no effort is spent on blocking or expression templates.
struct Matrix {
  int rows = 0;
  int cols = 0;
  Vec a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  static Matrix identity(int n);
  bool square() const { return rows == cols; }
};

Matrix operator+(const Matrix& x, const Matrix& y);
Matrix operator-(const Matrix& x, const Matrix& y);
Matrix operator*(const Matrix& x, const Matrix& y);
Matrix operator*(double s, const Matrix& x);
Vec operator*(const Matrix& x, const Vec& v);

Matrix transpose(const Matrix& x);
double max_abs(const Matrix& x);
double max_abs(const Vec& v);
double dot(const Vec& x, const Vec& y);
Vec axpy(double a, const Vec& x, const Vec& y); // a*x + y

/// Gauss-Jordan inverse with partial pivoting. Throws on singular input.
Matrix inverse(const Matrix& x);

/// Cholesky factor L with x = L L^T. Throws if x is not symmetric positive
/// definite (to tolerance tol on symmetry, pivot floor on definiteness).
Matrix cholesky(const Matrix& x, double tol = 1e-12);

/// Smallest and largest eigenvalue of a symmetric matrix (via the Jacobi
/// kernel shared with sym_eigen).
std::pair<double, double> symmetric_eigen_range(const Matrix& x);

/// Valence of a tensor slot.
enum class SlotKind { Up, Down };

/// Dense tensor of arbitrary (small) rank on a single chart/frame point.
/// Components are stored row-major over the slots in declared order; the
/// convention used across the library puts contravariant slots first
/// (e.g. curvature is stored R^l_{ijk} with slot order l,i,j,k and
/// R(e_i,e_j)e_k = R^l_{ijk} e_l).
struct TensorValue {
  int dim = 0;
  std::vector<SlotKind> slots;
  Vec c;

  TensorValue() = default;
  TensorValue(int d, std::vector<SlotKind> s);

  int rank() const { return static_cast<int>(slots.size()); }
  /// Number of contravariant / covariant slots.
  int p() const;
  int q() const;
  std::size_t size() const { return c.size(); }

  double& at(std::initializer_list<int> idx) { return c[offset(idx)]; }
  double at(std::initializer_list<int> idx) const { return c[offset(idx)]; }

  std::size_t offset(std::initializer_list<int> idx) const;

  static TensorValue scalar(double v);
  static TensorValue from_vector(const Vec& v);              // (1,0)
  static TensorValue from_covector(const Vec& v);            // (0,1)
  static TensorValue from_operator(const Matrix& m);         // (1,1), slots Up,Down
  static TensorValue from_bilinear(const Matrix& m);         // (0,2)
  Vec to_vector() const;
  Matrix to_matrix() const; // any rank-2 tensor
};

/// Contract one contravariant against one covariant slot (global slot
/// positions into `slots`). Result keeps the remaining slots in order.
TensorValue contract(const TensorValue& t, int up_slot, int down_slot);

/// Raise a covariant slot with the inverse metric / lower a contravariant
/// slot with the metric. The slot keeps its position; only its kind flips,
/// so lower_index(raise_index(t, ginv, s), g, s) == t to rounding.
TensorValue raise_index(const TensorValue& t, const Matrix& g_inv, int slot);
TensorValue lower_index(const TensorValue& t, const Matrix& g, int slot);

/// A (1,1) tensor in operator form.
struct LinearOperator {
  int dim = 0;
  Matrix m;

  LinearOperator() = default;
  explicit LinearOperator(const Matrix& mat) : dim(mat.rows), m(mat) {}

  TensorValue to_tensor() const { return TensorValue::from_operator(m); }
  static LinearOperator from_tensor(const TensorValue& t);
};

struct SymEigenResult {
  Vec eigenvalues;     // ascending
  Matrix eigenvectors; // columns, g-orthonormal
};

/// Eigen-decomposition of an operator A that is self-adjoint with respect
/// to an SPD metric g: returns g-orthonormal eigenvectors. Implemented as
/// cyclic Jacobi sweeps on the symmetrized matrix L^T A L^{-T} (g = L L^T),
/// with a fixed sweep order so results are reproducible. Throws if g is not
/// SPD or if A fails the self-adjointness check ||gA - (gA)^T|| <= tol.
SymEigenResult sym_eigen(const Matrix& a, const Matrix& g, double tol = 1e-9);

struct LstsqResult {
  Vec x;
  double residual_norm = 0.0;
  int rank = 0;
  bool rank_deficient = false;
};

/// Minimum-norm least squares for small dense systems, via the spectral
/// pseudo-inverse of A^T A (reuses the Jacobi kernel). Throws on an empty
/// system.
LstsqResult lstsq(const Matrix& a, const Vec& b, double rank_tol = 1e-12);

} // namespace kontact

#endif
