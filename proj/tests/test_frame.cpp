#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "kontact/frame.hpp"

using namespace kontact;

namespace {

// so(3): [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e2 with the identity metric
// (bi-invariant), the classical curvature oracle R(X,Y)Z = -1/4 [[X,Y],Z].
LieFrameModel so3() {
  LieFrameModel m(3);
  m.set_bracket(2, 0, 1, 1.0);
  m.set_bracket(0, 1, 2, 1.0);
  m.set_bracket(1, 2, 0, 1.0);
  m.name = "so3";
  return m;
}

} // namespace

TEST_CASE("lie algebra validation") {
  LieFrameModel m = so3();
  LieAlgebraReport rep = validate_lie_algebra(m);
  CHECK(rep.antisymmetry_residual == 0.0);
  CHECK(rep.jacobi_residual == 0.0);
  CHECK_NOTHROW(require_lie_algebra(m));

  // [e1,e2] = e1, [e2,e3] = e2, [e3,e1] = e3 violates Jacobi.
  LieFrameModel bad(3);
  bad.set_bracket(0, 0, 1, 1.0);
  bad.set_bracket(1, 1, 2, 1.0);
  bad.set_bracket(2, 2, 0, 1.0);
  CHECK(validate_lie_algebra(bad).jacobi_residual > 0.5);
  CHECK_THROWS_AS(require_lie_algebra(bad), Error);
}

TEST_CASE("frame bracket is the structure-constant pairing") {
  LieFrameModel m = so3();
  // [e1 + e2, e3] = -e2 + e1.
  Vec b = frame_bracket(m, Vec{1.0, 1.0, 0.0}, Vec{0.0, 0.0, 1.0});
  CHECK(b[0] == doctest::Approx(1.0));
  CHECK(b[1] == doctest::Approx(-1.0));
  CHECK(b[2] == doctest::Approx(0.0));
}

TEST_CASE("levi-civita connection of a bi-invariant metric halves the bracket") {
  LieFrameModel m = so3();
  FrameConnection w = levi_civita_frame(m);
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(w.at(k, i, j) == doctest::Approx(0.5 * m.c_at(k, i, j)).epsilon(1e-14));
}

TEST_CASE("curvature of the bi-invariant metric matches -1/4 [[X,Y],Z]") {
  LieFrameModel m = so3();
  FrameConnection w = levi_civita_frame(m);
  TensorValue r = curvature_frame(m, w);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        // -1/4 [[e_i,e_j], e_k]
        Vec ei(3, 0.0), ej(3, 0.0), ek(3, 0.0);
        ei[static_cast<std::size_t>(i)] = 1.0;
        ej[static_cast<std::size_t>(j)] = 1.0;
        ek[static_cast<std::size_t>(k)] = 1.0;
        Vec expect = frame_bracket(m, frame_bracket(m, ei, ej), ek);
        for (int l = 0; l < 3; ++l)
          CHECK(r.at({l, i, j, k}) ==
                doctest::Approx(-0.25 * expect[static_cast<std::size_t>(l)]).epsilon(1e-14));
      }
  // Spot value: R(e1,e2)e2 = 1/4 e1.
  CHECK(r.at({0, 0, 1, 1}) == doctest::Approx(0.25));
}

TEST_CASE("frame covariant and lie derivatives on constant operators") {
  LieFrameModel m = so3();
  FrameConnection w = levi_civita_frame(m);
  Matrix t(3, 3);
  t(0, 1) = 1.0;   // t = e1 (x) e2^flat
  Vec e3{0.0, 0.0, 1.0};

  // (L_{e3} t) e_j = [e3, t e_j] - t [e3, e_j].
  Matrix lt = frame_lie_derivative_operator(m, t, e3);
  // t e_2 = e_1, [e3,e1] = e2 -> first column contributions:
  // j = 1 (e2): [e3, e1] - t [e3, e2] = e2 - t(-e1) = e2.
  CHECK(lt(1, 1) == doctest::Approx(1.0));
  // j = 0 (e1): [e3, 0] - t [e3, e1] = -t e2 = -e1.
  CHECK(lt(0, 0) == doctest::Approx(-1.0));

  // grad_{e3} t via the connection; check against the component formula.
  Matrix ct = frame_covariant_derivative_operator(m, w, t, e3);
  for (int l = 0; l < 3; ++l)
    for (int j = 0; j < 3; ++j) {
      double expect = 0.0;
      for (int mm = 0; mm < 3; ++mm)
        expect += w.at(l, 2, mm) * t(mm, j) - w.at(mm, 2, j) * t(l, mm);
      CHECK(ct(l, j) == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("frame geometry of the 3D family") {
  // c1 = 4, c2 = 2: h = diag(-1, 1, 0), kappa = 0, mu = -4, so
  // l = kappa (Id - eta (x) xi) + mu h = diag(4, -4, 0).
  LieFrameModel m = lie_family_model(4.0, 2.0);
  FrameGeometry geo = compute_frame_geometry(m);

  CHECK(geo.deta(0, 1) == doctest::Approx(-2.0));
  CHECK(geo.deta(1, 0) == doctest::Approx(2.0));

  CHECK(geo.h(0, 0) == doctest::Approx(-1.0));
  CHECK(geo.h(1, 1) == doctest::Approx(1.0));
  CHECK(geo.h(2, 2) == doctest::Approx(0.0));
  CHECK(geo.h(0, 1) == doctest::Approx(0.0));

  CHECK(geo.l(0, 0) == doctest::Approx(4.0));
  CHECK(geo.l(1, 1) == doctest::Approx(-4.0));
  CHECK(geo.l(2, 2) == doctest::Approx(0.0));

  // c1 = c2 = 2 is the K-contact (indeed Sasakian) member: h = 0 and
  // l = Id - eta (x) xi.
  FrameGeometry kc = compute_frame_geometry(lie_family_model(2.0, 2.0));
  CHECK(max_abs(kc.h) == 0.0);
  Matrix expect = Matrix::identity(3);
  expect(2, 2) = 0.0;
  CHECK(max_abs(kc.l - expect) < 1e-14);
}

TEST_CASE("frame geometry rejects non-lie structure constants") {
  LieFrameModel bad(3);
  bad.set_bracket(0, 0, 1, 1.0);
  bad.set_bracket(1, 1, 2, 1.0);
  bad.set_bracket(2, 2, 0, 1.0);
  CHECK_THROWS_AS(compute_frame_geometry(bad), Error);
}
