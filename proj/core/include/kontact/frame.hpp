#ifndef KONTACT_FRAME_HPP
#define KONTACT_FRAME_HPP

#include <string>
#include <vector>

#include "kontact/tensor.hpp"

namespace kontact {

/// Homogeneous model: a Lie algebra with structure constants c^k_{ij}
/// ([e_i,e_j] = c^k_{ij} e_k) carrying a left-invariant structure whose
/// components are constant in the frame e_1..e_d.
struct LieFrameModel {
  int dim = 0;
  Vec c;        // c^k_{ij}, layout [k][i][j]
  Matrix g;     // frame metric
  Vec eta;      // eta(e_i)
  Vec xi;       // xi components
  Matrix phi;   // phi^i_j
  std::string name;

  LieFrameModel() = default;
  explicit LieFrameModel(int d);

  double c_at(int k, int i, int j) const {
    return c[(static_cast<std::size_t>(k) * dim + i) * dim + j];
  }
  /// Sets c^k_{ij} = v and c^k_{ji} = -v.
  void set_bracket(int k, int i, int j, double v);
};

struct LieAlgebraReport {
  double antisymmetry_residual = 0.0;
  double jacobi_residual = 0.0;
};

LieAlgebraReport validate_lie_algebra(const LieFrameModel& m);

/// Throws if the structure constants fail antisymmetry or Jacobi (tol 1e-12).
void require_lie_algebra(const LieFrameModel& m);

/// [X,Y]^k = c^k_{ij} X^i Y^j for constant-component fields.
Vec frame_bracket(const LieFrameModel& m, const Vec& x, const Vec& y);

/// Lie derivative of a constant (1,1) field along a constant vector field:
/// (L_X T)(e_j) = [X, T e_j] - T [X, e_j].
Matrix frame_lie_derivative_operator(const LieFrameModel& m, const Matrix& t, const Vec& x);

/// Connection coefficients grad_{e_i} e_j = w^k_{ij} e_k, layout [k][i][j].
struct FrameConnection {
  int dim = 0;
  Vec w;

  FrameConnection() = default;
  explicit FrameConnection(int d) : dim(d), w(static_cast<std::size_t>(d) * d * d, 0.0) {}
  double& at(int k, int i, int j) { return w[(static_cast<std::size_t>(k) * dim + i) * dim + j]; }
  double at(int k, int i, int j) const { return w[(static_cast<std::size_t>(k) * dim + i) * dim + j]; }
};

/// Levi-Civita connection of the left-invariant metric, from the Koszul
/// formula specialised to constant g:
/// 2 g(grad_{e_i} e_j, e_k) = g([e_i,e_j],e_k) - g([e_j,e_k],e_i) + g([e_k,e_i],e_j).
FrameConnection levi_civita_frame(const LieFrameModel& m);

/// R^l_{ijk} in the frame: R(e_i,e_j)e_k = R^l_{ijk} e_l, computed as
/// w^m_{jk} w^l_{im} - w^m_{ik} w^l_{jm} - c^m_{ij} w^l_{mk}.
TensorValue curvature_frame(const LieFrameModel& m, const FrameConnection& w);

/// grad_X T for constant X and constant (1,1) T:
/// (grad_X T)^l_j = X^i (w^l_{im} T^m_j - w^m_{ij} T^l_m).
Matrix frame_covariant_derivative_operator(const LieFrameModel& m, const FrameConnection& w,
                                           const Matrix& t, const Vec& x);

/// Pointwise data bundle for the frame backend, mirroring the chart one.
struct FrameGeometry {
  int dim = 0;
  Vec eta, xi;
  Matrix phi, g, ginv, deta;
  Matrix h, l, nabla_xi_h, lie_xi_h;
  FrameConnection omega;
  TensorValue curvature;   // R^l_{ijk}
  Vec nabla_phi;           // [i][k][j] = (grad_{e_i} phi)^k_j
};

FrameGeometry compute_frame_geometry(const LieFrameModel& m);

/// Three-dimensional family [e_1,e_2] = 2 e_3, [e_2,e_3] = c1 e_1,
/// [e_3,e_1] = c2 e_2 with g the identity, xi = e_3, phi e_1 = e_2.
LieFrameModel lie_family_model(double c1, double c2);

} // namespace kontact

#endif
