#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "kontact/tensor.hpp"

using namespace kontact;

namespace {

Matrix make(int r, int c, std::initializer_list<double> vals) {
  Matrix m(r, c);
  int k = 0;
  for (double v : vals) m.a[static_cast<std::size_t>(k++)] = v;
  REQUIRE(k == r * c);
  return m;
}

} // namespace

TEST_CASE("matrix arithmetic basics") {
  Matrix a = make(2, 2, {1, 2, 3, 4});
  Matrix b = make(2, 2, {5, 6, 7, 8});

  Matrix s = a + b;
  CHECK(s(0, 0) == 6);
  CHECK(s(1, 1) == 12);

  Matrix p = a * b;
  // [1 2; 3 4] [5 6; 7 8] = [19 22; 43 50]
  CHECK(p(0, 0) == 19);
  CHECK(p(0, 1) == 22);
  CHECK(p(1, 0) == 43);
  CHECK(p(1, 1) == 50);

  Vec v = a * Vec{1.0, -1.0};
  CHECK(v[0] == -1);
  CHECK(v[1] == -1);

  Matrix t = transpose(a);
  CHECK(t(0, 1) == 3);
  CHECK(max_abs(a - transpose(t)) == 0);
  CHECK(max_abs(2.0 * a - (a + a)) == 0);
}

TEST_CASE("inverse reproduces the identity") {
  Matrix a = make(3, 3, {2, 1, 0, 1, 3, 1, 0, 1, 2});
  Matrix ainv = inverse(a);
  CHECK(max_abs(a * ainv - Matrix::identity(3)) < 1e-14);
  CHECK(max_abs(ainv * a - Matrix::identity(3)) < 1e-14);

  Matrix sing = make(2, 2, {1, 2, 2, 4});
  CHECK_THROWS_AS(inverse(sing), Error);
}

TEST_CASE("cholesky factors an SPD matrix and rejects the rest") {
  // x = L L^T with L = [[2,0],[1,3]] gives x = [[4,2],[2,10]].
  Matrix x = make(2, 2, {4, 2, 2, 10});
  Matrix l = cholesky(x);
  CHECK(l(0, 0) == doctest::Approx(2.0));
  CHECK(l(1, 0) == doctest::Approx(1.0));
  CHECK(l(1, 1) == doctest::Approx(3.0));
  CHECK(l(0, 1) == 0.0);

  Matrix indefinite = make(2, 2, {1, 2, 2, 1});
  CHECK_THROWS_AS(cholesky(indefinite), Error);
  Matrix asym = make(2, 2, {1, 0.5, 0, 1});
  CHECK_THROWS_AS(cholesky(asym), Error);
}

TEST_CASE("symmetric eigen range brackets the spectrum") {
  Matrix x = make(2, 2, {2, 1, 1, 2});   // eigenvalues 1 and 3
  auto [lo, hi] = symmetric_eigen_range(x);
  CHECK(lo == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hi == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("sym_eigen diagonalizes a g-self-adjoint operator") {
  // g = diag(1, 4); A = [[0, 1], [1/4, 0]] satisfies gA = (gA)^T and has
  // eigenvalues +-1/2 (A^2 = I/4).
  Matrix g = make(2, 2, {1, 0, 0, 4});
  Matrix a = make(2, 2, {0, 1, 0.25, 0});
  SymEigenResult r = sym_eigen(a, g);
  REQUIRE(r.eigenvalues.size() == 2);
  CHECK(r.eigenvalues[0] == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(r.eigenvalues[1] == doctest::Approx(0.5).epsilon(1e-12));

  // Columns are g-orthonormal eigenvectors.
  for (int k = 0; k < 2; ++k) {
    Vec v{r.eigenvectors(0, k), r.eigenvectors(1, k)};
    Vec av = a * v;
    CHECK(max_abs(Vec{av[0] - r.eigenvalues[static_cast<std::size_t>(k)] * v[0],
                      av[1] - r.eigenvalues[static_cast<std::size_t>(k)] * v[1]}) < 1e-12);
    Vec gv = g * v;
    CHECK(dot(v, gv) == doctest::Approx(1.0).epsilon(1e-12));
  }
  Vec v0{r.eigenvectors(0, 0), r.eigenvectors(1, 0)};
  Vec v1{r.eigenvectors(0, 1), r.eigenvectors(1, 1)};
  CHECK(std::abs(dot(v0, g * v1)) < 1e-12);

  Matrix not_self_adjoint = make(2, 2, {0, 1, 1, 0});   // g A asymmetric for this g
  CHECK_THROWS_AS(sym_eigen(not_self_adjoint, g), Error);
}

TEST_CASE("lstsq solves consistent and overdetermined systems") {
  // Exactly determined: x = (1, -2).
  Matrix a = make(2, 2, {1, 1, 1, -1});
  LstsqResult r = lstsq(a, Vec{-1.0, 3.0});
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.x[1] == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(r.residual_norm < 1e-14);
  CHECK(r.rank == 2);
  CHECK_FALSE(r.rank_deficient);

  // Overdetermined inconsistent: fit c to [1,1,1] c = [0,3,0]; normal
  // equations give c = 1, residual sqrt(0+4+... ) -> (1,2,1)/... residual^2 = 1+4+1.
  Matrix b = make(3, 1, {1, 1, 1});
  LstsqResult s = lstsq(b, Vec{0.0, 3.0, 0.0});
  CHECK(s.x[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.residual_norm == doctest::Approx(std::sqrt(6.0)).epsilon(1e-12));

  // Rank-deficient: duplicate column, minimum-norm solution splits evenly.
  Matrix d = make(2, 2, {1, 1, 1, 1});
  LstsqResult t = lstsq(d, Vec{2.0, 2.0});
  CHECK(t.rank_deficient);
  CHECK(t.rank == 1);
  CHECK(t.x[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(t.x[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tensor storage and contraction conventions") {
  // T^i_j as an operator: contraction over (0,1) is the trace.
  Matrix m = make(2, 2, {1, 2, 3, 4});
  TensorValue t = TensorValue::from_operator(m);
  CHECK(t.p() == 1);
  CHECK(t.q() == 1);
  TensorValue tr = contract(t, 0, 1);
  CHECK(tr.rank() == 0);
  CHECK(tr.c[0] == 5);

  // Rank-3 contraction keeps remaining slot order: S^k = T^k_i v^i.
  TensorValue t3(2, {SlotKind::Up, SlotKind::Down, SlotKind::Up});
  // T^k_{i} w^{m}: fill  t3[k,i,m] = (k+1) * 10 + i * 2 + m.
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int mm = 0; mm < 2; ++mm) t3.at({k, i, mm}) = (k + 1) * 10 + i * 2 + mm;
  TensorValue c3 = contract(t3, 2, 1);   // sum_i t3[k, i, i]
  REQUIRE(c3.rank() == 1);
  CHECK(c3.at({0}) == (10 + 0 + 0) + (10 + 2 + 1));
  CHECK(c3.at({1}) == (20 + 0 + 0) + (20 + 2 + 1));
}

TEST_CASE("raise and lower indices invert each other") {
  Matrix g = make(2, 2, {2, 1, 1, 3});
  Matrix ginv = inverse(g);

  TensorValue v = TensorValue::from_vector(Vec{1.0, -2.0});
  TensorValue down = lower_index(v, g, 0);
  CHECK(down.slots[0] == SlotKind::Down);
  // (gv)_i
  CHECK(down.at({0}) == doctest::Approx(0.0));
  CHECK(down.at({1}) == doctest::Approx(-5.0));
  TensorValue up = raise_index(down, ginv, 0);
  CHECK(up.at({0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(up.at({1}) == doctest::Approx(-2.0).epsilon(1e-12));

  CHECK_THROWS_AS(raise_index(v, ginv, 0), Error);   // slot already up
}

TEST_CASE("operator round trip through TensorValue") {
  Matrix m = make(2, 2, {0, 1, -1, 0});
  LinearOperator op(m);
  TensorValue t = op.to_tensor();
  LinearOperator back = LinearOperator::from_tensor(t);
  CHECK(max_abs(back.m - m) == 0);
  CHECK(max_abs(t.to_matrix() - m) == 0);
}
