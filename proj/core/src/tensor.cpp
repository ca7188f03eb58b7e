#include "kontact/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kontact {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

static void check_same_shape(const Matrix& x, const Matrix& y, const char* op) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw Error(std::string(op) + ": shape mismatch");
}

Matrix operator+(const Matrix& x, const Matrix& y) {
  check_same_shape(x, y, "matrix add");
  Matrix r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
  return r;
}

Matrix operator-(const Matrix& x, const Matrix& y) {
  check_same_shape(x, y, "matrix sub");
  Matrix r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
  return r;
}

Matrix operator*(const Matrix& x, const Matrix& y) {
  if (x.cols != y.rows) throw Error("matrix mul: shape mismatch");
  Matrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const double xik = x(i, k);
      if (xik == 0.0) continue;
      for (int j = 0; j < y.cols; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

Matrix operator*(double s, const Matrix& x) {
  Matrix r = x;
  for (double& v : r.a) v *= s;
  return r;
}

Vec operator*(const Matrix& x, const Vec& v) {
  if (x.cols != static_cast<int>(v.size())) throw Error("matrix-vector mul: shape mismatch");
  Vec r(x.rows, 0.0);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r[i] += x(i, j) * v[j];
  return r;
}

Matrix transpose(const Matrix& x) {
  Matrix r(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r(j, i) = x(i, j);
  return r;
}

double max_abs(const Matrix& x) {
  double m = 0.0;
  for (double v : x.a) m = std::max(m, std::abs(v));
  return m;
}

double max_abs(const Vec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double dot(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw Error("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

Vec axpy(double a, const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw Error("axpy: size mismatch");
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = a * x[i] + y[i];
  return r;
}

Matrix inverse(const Matrix& x) {
  if (!x.square()) throw Error("inverse: matrix is not square");
  const int n = x.rows;
  Matrix a = x;
  Matrix inv = Matrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (a(piv, col) == 0.0) throw Error("inverse: singular matrix");
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    const double d = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

Matrix cholesky(const Matrix& x, double tol) {
  if (!x.square()) throw Error("cholesky: matrix is not square");
  const int n = x.rows;
  const double scale = std::max(1.0, max_abs(x));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(x(i, j) - x(j, i)) > tol * scale)
        throw Error("cholesky: matrix is not symmetric");
  Matrix l(n, n);
  for (int j = 0; j < n; ++j) {
    double d = x(j, j);
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (d <= 0.0) throw Error("cholesky: matrix is not positive definite");
    l(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double s = x(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

// Inverse of a lower-triangular matrix by forward substitution.
static Matrix lower_triangular_inverse(const Matrix& l) {
  const int n = l.rows;
  Matrix inv(n, n);
  for (int col = 0; col < n; ++col) {
    inv(col, col) = 1.0 / l(col, col);
    for (int i = col + 1; i < n; ++i) {
      double s = 0.0;
      for (int k = col; k < i; ++k) s += l(i, k) * inv(k, col);
      inv(i, col) = -s / l(i, i);
    }
  }
  return inv;
}

// Cyclic Jacobi rotations on a symmetric matrix; fixed sweep order (row-major
// over the strict upper triangle) for reproducibility. b is destroyed.
static void jacobi_symmetric(Matrix b, Vec& evals, Matrix& v) {
  const int n = b.rows;
  v = Matrix::identity(n);
  const double scale = std::max(1.0, max_abs(b));
  auto off_norm = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += b(i, j) * b(i, j);
    return std::sqrt(2.0 * s);
  };
  for (int sweep = 0; sweep < 100; ++sweep) {
    if (off_norm() <= 1e-15 * scale * n) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = b(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (b(q, q) - b(p, p)) / (2.0 * apq);
        const double t =
            (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) { // B <- B J
          const double bkp = b(k, p), bkq = b(k, q);
          b(k, p) = c * bkp - s * bkq;
          b(k, q) = s * bkp + c * bkq;
        }
        for (int k = 0; k < n; ++k) { // B <- J^T B
          const double bpk = b(p, k), bqk = b(q, k);
          b(p, k) = c * bpk - s * bqk;
          b(q, k) = s * bpk + c * bqk;
        }
        for (int k = 0; k < n; ++k) { // V <- V J
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  evals.resize(n);
  for (int i = 0; i < n; ++i) evals[i] = b(i, i);
}

// Ascending eigenvalue order with a deterministic sign convention: the
// largest-magnitude entry of each eigenvector (first such index on ties)
// is made positive.
static void sort_and_normalize(Vec& evals, Matrix& v) {
  const int n = static_cast<int>(evals.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](int i, int j) { return evals[i] < evals[j]; });
  Vec se(n);
  Matrix sv(n, n);
  for (int c = 0; c < n; ++c) {
    se[c] = evals[perm[c]];
    int arg = 0;
    double best = -1.0;
    for (int r = 0; r < n; ++r) {
      const double m = std::abs(v(r, perm[c]));
      if (m > best) { // strict: first index wins ties
        best = m;
        arg = r;
      }
    }
    const double sign = v(arg, perm[c]) < 0.0 ? -1.0 : 1.0;
    for (int r = 0; r < n; ++r) sv(r, c) = sign * v(r, perm[c]);
  }
  evals = se;
  v = sv;
}

std::pair<double, double> symmetric_eigen_range(const Matrix& x) {
  Vec evals;
  Matrix v;
  Matrix b = x;
  // symmetrize defensively; callers pass nominally symmetric matrices
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j) b(i, j) = 0.5 * (x(i, j) + x(j, i));
  jacobi_symmetric(b, evals, v);
  auto [mn, mx] = std::minmax_element(evals.begin(), evals.end());
  return {*mn, *mx};
}

SymEigenResult sym_eigen(const Matrix& a, const Matrix& g, double tol) {
  if (!a.square() || !g.square() || a.rows != g.rows)
    throw Error("sym_eigen: operator and metric shapes do not match");
  const Matrix ga = g * a;
  const double scale = std::max(1.0, max_abs(ga));
  if (max_abs(ga - transpose(ga)) > tol * scale)
    throw Error("sym_eigen: operator is not self-adjoint with respect to g");
  const Matrix l = cholesky(g);
  const Matrix linv = lower_triangular_inverse(l);
  const Matrix linv_t = transpose(linv);
  Matrix b = transpose(l) * a * linv_t;
  for (int i = 0; i < b.rows; ++i) // enforce exact symmetry before sweeping
    for (int j = i + 1; j < b.cols; ++j) {
      const double m = 0.5 * (b(i, j) + b(j, i));
      b(i, j) = m;
      b(j, i) = m;
    }
  SymEigenResult res;
  Matrix v;
  jacobi_symmetric(b, res.eigenvalues, v);
  sort_and_normalize(res.eigenvalues, v);
  res.eigenvectors = linv_t * v;
  return res;
}

LstsqResult lstsq(const Matrix& a, const Vec& b, double rank_tol) {
  if (a.rows == 0 || a.cols == 0) throw Error("lstsq: empty system");
  if (a.rows != static_cast<int>(b.size())) throw Error("lstsq: rhs size mismatch");
  const int k = a.cols;
  const Matrix at = transpose(a);
  const Matrix ata = at * a;
  const Vec atb = at * b;
  Vec evals;
  Matrix v;
  jacobi_symmetric(ata, evals, v);
  sort_and_normalize(evals, v);
  const double emax = std::max(0.0, evals.empty() ? 0.0 : evals.back());
  const double cutoff = rank_tol * std::max(emax, 1e-300);
  LstsqResult res;
  res.x.assign(k, 0.0);
  for (int i = 0; i < k; ++i) {
    if (evals[i] <= cutoff) continue;
    ++res.rank;
    double proj = 0.0;
    for (int r = 0; r < k; ++r) proj += v(r, i) * atb[r];
    const double coef = proj / evals[i];
    for (int r = 0; r < k; ++r) res.x[r] += coef * v(r, i);
  }
  res.rank_deficient = res.rank < k;
  const Vec ax = a * res.x;
  double rn = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) rn += (ax[i] - b[i]) * (ax[i] - b[i]);
  res.residual_norm = std::sqrt(rn);
  return res;
}

TensorValue::TensorValue(int d, std::vector<SlotKind> s) : dim(d), slots(std::move(s)) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < slots.size(); ++i) n *= static_cast<std::size_t>(dim);
  c.assign(n, 0.0);
}

int TensorValue::p() const {
  return static_cast<int>(std::count(slots.begin(), slots.end(), SlotKind::Up));
}

int TensorValue::q() const {
  return static_cast<int>(std::count(slots.begin(), slots.end(), SlotKind::Down));
}

std::size_t TensorValue::offset(std::initializer_list<int> idx) const {
  if (idx.size() != slots.size()) throw Error("tensor index rank mismatch");
  std::size_t off = 0;
  for (int i : idx) {
    if (i < 0 || i >= dim) throw Error("tensor index out of range");
    off = off * static_cast<std::size_t>(dim) + static_cast<std::size_t>(i);
  }
  return off;
}

TensorValue TensorValue::scalar(double v) {
  TensorValue t(1, {});
  t.c = {v};
  return t;
}

TensorValue TensorValue::from_vector(const Vec& v) {
  TensorValue t(static_cast<int>(v.size()), {SlotKind::Up});
  t.c = v;
  return t;
}

TensorValue TensorValue::from_covector(const Vec& v) {
  TensorValue t(static_cast<int>(v.size()), {SlotKind::Down});
  t.c = v;
  return t;
}

TensorValue TensorValue::from_operator(const Matrix& m) {
  if (!m.square()) throw Error("from_operator: matrix is not square");
  TensorValue t(m.rows, {SlotKind::Up, SlotKind::Down});
  t.c = m.a;
  return t;
}

TensorValue TensorValue::from_bilinear(const Matrix& m) {
  if (!m.square()) throw Error("from_bilinear: matrix is not square");
  TensorValue t(m.rows, {SlotKind::Down, SlotKind::Down});
  t.c = m.a;
  return t;
}

Vec TensorValue::to_vector() const {
  if (rank() != 1) throw Error("to_vector: tensor rank is not 1");
  return c;
}

Matrix TensorValue::to_matrix() const {
  if (rank() != 2) throw Error("to_matrix: tensor rank is not 2");
  Matrix m(dim, dim);
  m.a = c;
  return m;
}

LinearOperator LinearOperator::from_tensor(const TensorValue& t) {
  if (t.rank() != 2 || t.slots[0] != SlotKind::Up || t.slots[1] != SlotKind::Down)
    throw Error("LinearOperator::from_tensor: tensor is not valence (1,1) with slots Up,Down");
  LinearOperator op;
  op.dim = t.dim;
  op.m = t.to_matrix();
  return op;
}

// Decode a linear index into a multi-index over `rank` slots of size dim.
static void decode_index(std::size_t lin, int rank, int dim, int* out) {
  for (int s = rank - 1; s >= 0; --s) {
    out[s] = static_cast<int>(lin % static_cast<std::size_t>(dim));
    lin /= static_cast<std::size_t>(dim);
  }
}

static std::size_t encode_index(const int* idx, int rank, int dim) {
  std::size_t off = 0;
  for (int s = 0; s < rank; ++s)
    off = off * static_cast<std::size_t>(dim) + static_cast<std::size_t>(idx[s]);
  return off;
}

TensorValue contract(const TensorValue& t, int up_slot, int down_slot) {
  const int r = t.rank();
  if (up_slot < 0 || up_slot >= r || down_slot < 0 || down_slot >= r || up_slot == down_slot)
    throw Error("contract: slot positions out of range");
  if (t.slots[up_slot] != SlotKind::Up)
    throw Error("contract: up_slot is not contravariant");
  if (t.slots[down_slot] != SlotKind::Down)
    throw Error("contract: down_slot is not covariant");

  std::vector<SlotKind> out_slots;
  for (int s = 0; s < r; ++s)
    if (s != up_slot && s != down_slot) out_slots.push_back(t.slots[s]);
  TensorValue out(t.dim, out_slots);
  const int out_rank = r - 2;
  std::size_t out_size = 1;
  for (int s = 0; s < out_rank; ++s) out_size *= static_cast<std::size_t>(t.dim);
  out.c.assign(out_size, 0.0);

  int out_idx[8];
  int full_idx[8];
  for (std::size_t lin = 0; lin < out_size; ++lin) {
    decode_index(lin, out_rank, t.dim, out_idx);
    int pos = 0;
    for (int s = 0; s < r; ++s)
      if (s != up_slot && s != down_slot) full_idx[s] = out_idx[pos++];
    double sum = 0.0;
    for (int k = 0; k < t.dim; ++k) {
      full_idx[up_slot] = k;
      full_idx[down_slot] = k;
      sum += t.c[encode_index(full_idx, r, t.dim)];
    }
    out.c[lin] = sum;
  }
  return out;
}

static TensorValue move_index(const TensorValue& t, const Matrix& metric, int slot,
                              SlotKind from, SlotKind to, const char* op) {
  const int r = t.rank();
  if (slot < 0 || slot >= r) throw Error(std::string(op) + ": slot out of range");
  if (t.slots[slot] != from)
    throw Error(std::string(op) + ": slot has the wrong variance");
  if (metric.rows != t.dim || metric.cols != t.dim)
    throw Error(std::string(op) + ": metric dimension mismatch");
  TensorValue out = t;
  out.slots[slot] = to;
  int idx[8];
  for (std::size_t lin = 0; lin < out.c.size(); ++lin) {
    decode_index(lin, r, t.dim, idx);
    const int a = idx[slot];
    double sum = 0.0;
    for (int b = 0; b < t.dim; ++b) {
      idx[slot] = b;
      sum += metric(a, b) * t.c[encode_index(idx, r, t.dim)];
    }
    idx[slot] = a;
    out.c[lin] = sum;
  }
  return out;
}

TensorValue raise_index(const TensorValue& t, const Matrix& g_inv, int slot) {
  return move_index(t, g_inv, slot, SlotKind::Down, SlotKind::Up, "raise_index");
}

TensorValue lower_index(const TensorValue& t, const Matrix& g, int slot) {
  return move_index(t, g, slot, SlotKind::Up, SlotKind::Down, "lower_index");
}

} // namespace kontact
