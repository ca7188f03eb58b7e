#include "kontact/frame.hpp"

#include <cmath>
#include <cstddef>

#include "kontact/error.hpp"

namespace kontact {

LieFrameModel::LieFrameModel(int d)
    : dim(d),
      c(static_cast<std::size_t>(d) * d * d, 0.0),
      g(Matrix::identity(d)),
      eta(static_cast<std::size_t>(d), 0.0),
      xi(static_cast<std::size_t>(d), 0.0),
      phi(d, d) {}

void LieFrameModel::set_bracket(int k, int i, int j, double v) {
  c[(static_cast<std::size_t>(k) * dim + i) * dim + j] = v;
  c[(static_cast<std::size_t>(k) * dim + j) * dim + i] = -v;
}

LieAlgebraReport validate_lie_algebra(const LieFrameModel& m) {
  const int d = m.dim;
  LieAlgebraReport rep;
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double r = std::fabs(m.c_at(k, i, j) + m.c_at(k, j, i));
        rep.antisymmetry_residual = std::max(rep.antisymmetry_residual, r);
      }
  // [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0 componentwise.
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double s = 0.0;
          for (int mdx = 0; mdx < d; ++mdx)
            s += m.c_at(mdx, i, j) * m.c_at(l, mdx, k) + m.c_at(mdx, j, k) * m.c_at(l, mdx, i) +
                 m.c_at(mdx, k, i) * m.c_at(l, mdx, j);
          rep.jacobi_residual = std::max(rep.jacobi_residual, std::fabs(s));
        }
  return rep;
}

void require_lie_algebra(const LieFrameModel& m) {
  LieAlgebraReport rep = validate_lie_algebra(m);
  if (rep.antisymmetry_residual > 1e-12)
    throw Error("structure constants are not antisymmetric");
  if (rep.jacobi_residual > 1e-12)
    throw Error("structure constants violate the Jacobi identity");
}

Vec frame_bracket(const LieFrameModel& m, const Vec& x, const Vec& y) {
  const int d = m.dim;
  Vec out(static_cast<std::size_t>(d), 0.0);
  for (int k = 0; k < d; ++k) {
    double s = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        s += m.c_at(k, i, j) * x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(k)] = s;
  }
  return out;
}

Matrix frame_lie_derivative_operator(const LieFrameModel& m, const Matrix& t, const Vec& x) {
  const int d = m.dim;
  Matrix out(d, d);
  for (int l = 0; l < d; ++l)
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int a = 0; a < d; ++a)
        for (int mm = 0; mm < d; ++mm)
          s += x[static_cast<std::size_t>(a)] *
               (m.c_at(l, a, mm) * t(mm, j) - t(l, mm) * m.c_at(mm, a, j));
      out(l, j) = s;
    }
  return out;
}

FrameConnection levi_civita_frame(const LieFrameModel& m) {
  const int d = m.dim;
  Matrix ginv = inverse(m.g);
  FrameConnection w(d);
  for (int l = 0; l < d; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double s = 0.0;
        for (int k = 0; k < d; ++k) {
          double koszul = 0.0;
          for (int mm = 0; mm < d; ++mm)
            koszul += m.c_at(mm, i, j) * m.g(mm, k) - m.c_at(mm, j, k) * m.g(mm, i) +
                      m.c_at(mm, k, i) * m.g(mm, j);
          s += ginv(l, k) * koszul;
        }
        w.at(l, i, j) = 0.5 * s;
      }
  return w;
}

TensorValue curvature_frame(const LieFrameModel& m, const FrameConnection& w) {
  const int d = m.dim;
  TensorValue r(d, {SlotKind::Up, SlotKind::Down, SlotKind::Down, SlotKind::Down});
  for (int l = 0; l < d; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          double v = 0.0;
          for (int mm = 0; mm < d; ++mm)
            v += w.at(mm, j, k) * w.at(l, i, mm) - w.at(mm, i, k) * w.at(l, j, mm) -
                 m.c_at(mm, i, j) * w.at(l, mm, k);
          r.at({l, i, j, k}) = v;
        }
  return r;
}

Matrix frame_covariant_derivative_operator(const LieFrameModel& m, const FrameConnection& w,
                                           const Matrix& t, const Vec& x) {
  const int d = m.dim;
  Matrix out(d, d);
  for (int l = 0; l < d; ++l)
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int i = 0; i < d; ++i)
        for (int mm = 0; mm < d; ++mm)
          s += x[static_cast<std::size_t>(i)] *
               (w.at(l, i, mm) * t(mm, j) - w.at(mm, i, j) * t(l, mm));
      out(l, j) = s;
    }
  return out;
}

FrameGeometry compute_frame_geometry(const LieFrameModel& m) {
  require_lie_algebra(m);
  const int d = m.dim;
  FrameGeometry geo;
  geo.dim = d;
  geo.eta = m.eta;
  geo.xi = m.xi;
  geo.phi = m.phi;
  geo.g = m.g;
  geo.ginv = inverse(m.g);

  // d eta (X,Y) = -eta([X,Y]) for a left-invariant 1-form.
  geo.deta = Matrix(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int mm = 0; mm < d; ++mm) s += m.eta[static_cast<std::size_t>(mm)] * m.c_at(mm, i, j);
      geo.deta(i, j) = -s;
    }

  geo.h = 0.5 * frame_lie_derivative_operator(m, m.phi, m.xi);
  geo.omega = levi_civita_frame(m);
  geo.curvature = curvature_frame(m, geo.omega);

  geo.l = Matrix(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      double v = 0.0;
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          v += geo.curvature.at({a, b, j, k}) * m.xi[static_cast<std::size_t>(j)] *
               m.xi[static_cast<std::size_t>(k)];
      geo.l(a, b) = v;
    }

  geo.nabla_xi_h = frame_covariant_derivative_operator(m, geo.omega, geo.h, m.xi);
  geo.lie_xi_h = frame_lie_derivative_operator(m, geo.h, m.xi);

  geo.nabla_phi.assign(static_cast<std::size_t>(d) * d * d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j) {
        double s = 0.0;
        for (int mm = 0; mm < d; ++mm)
          s += geo.omega.at(k, i, mm) * m.phi(mm, j) - geo.omega.at(mm, i, j) * m.phi(k, mm);
        geo.nabla_phi[(static_cast<std::size_t>(i) * d + k) * d + j] = s;
      }

  return geo;
}

LieFrameModel lie_family_model(double c1, double c2) {
  LieFrameModel m(3);
  m.set_bracket(2, 0, 1, 2.0);
  m.set_bracket(0, 1, 2, c1);
  m.set_bracket(1, 2, 0, c2);
  m.g = Matrix::identity(3);
  m.eta = {0.0, 0.0, 1.0};
  m.xi = {0.0, 0.0, 1.0};
  m.phi = Matrix(3, 3);
  m.phi(1, 0) = 1.0;
  m.phi(0, 1) = -1.0;
  m.name = "lie-family";
  return m;
}

} // namespace kontact
