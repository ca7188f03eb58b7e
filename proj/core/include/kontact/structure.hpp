#ifndef KONTACT_STRUCTURE_HPP
#define KONTACT_STRUCTURE_HPP

#include <string>
#include <variant>
#include <vector>

#include "kontact/chart.hpp"
#include "kontact/frame.hpp"
#include "kontact/report.hpp"
#include "kontact/sampling.hpp"
#include "kontact/tensor.hpp"

namespace kontact {

/// Chart-backed structure: expression fields plus the sample box used for
/// pointwise verification.
struct ChartStructureData {
  std::string name;
  int dim = 0;
  ChartField eta, xi, phi, g;
  SamplePlan plan;
};

/// A contact metric structure (eta, xi, phi, g) over one of two backends:
/// an explicit coordinate chart or a homogeneous left-invariant frame.
struct ContactMetricStructure {
  std::variant<ChartStructureData, LieFrameModel> backend;

  ContactMetricStructure() : backend(ChartStructureData{}) {}
  explicit ContactMetricStructure(ChartStructureData d) : backend(std::move(d)) {}
  explicit ContactMetricStructure(LieFrameModel m) : backend(std::move(m)) {}

  bool is_chart() const { return std::holds_alternative<ChartStructureData>(backend); }
  const ChartStructureData& chart() const { return std::get<ChartStructureData>(backend); }
  ChartStructureData& chart() { return std::get<ChartStructureData>(backend); }
  const LieFrameModel& frame() const { return std::get<LieFrameModel>(backend); }
  LieFrameModel& frame() { return std::get<LieFrameModel>(backend); }

  int dim() const;
  std::string name() const;

  /// Chart: the structure's sample plan. Frame: a single (empty) point,
  /// since all frame components are constant.
  std::vector<Vec> sample_points() const;
};

/// Backend-independent pointwise bundle of the structure tensors and every
/// derived quantity the analysis modules consume.
struct GeometryData {
  int dim = 0;
  Vec eta, xi;
  Matrix phi, g, ginv, deta;
  Matrix h, l, nabla_xi_h, lie_xi_h;
  TensorValue curvature;   // R^l_{ijk}
  Vec nabla_phi;           // [i][k][j]

  double nabla_phi_at(int i, int k, int j) const {
    return nabla_phi[(static_cast<std::size_t>(i) * dim + k) * dim + j];
  }
  /// R(x, xi)xi as an operator applied to basis vectors: column j = l(e_j).
  Matrix jacobi_operator() const { return l; }
};

/// Evaluate all pointwise data; x is ignored on the frame backend.
GeometryData geometry_at(const ContactMetricStructure& s, const Vec& x);

/// Six defining-axiom checks at one point: reeb normalization eta(xi)=1,
/// phi^2 = -Id + eta (x) xi, phi xi = 0, d eta = 2 g(., phi .), metric SPD,
/// and nondegeneracy of the volume form eta ^ (d eta)^n.
VerificationReport verify_axioms(const ContactMetricStructure& s, const Vec& x, double tol);

/// Derived tensors plus their built-in invariants (h and l symmetric w.r.t.
/// g, h phi + phi h = 0, h xi = 0), reported as checks.
struct DerivedTensorsReport {
  GeometryData geo;
  VerificationReport invariants;
};
DerivedTensorsReport derived_tensors(const ContactMetricStructure& s, const Vec& x, double tol);

/// The three first-order structural identities every contact metric
/// structure satisfies:
///   grad_xi h = phi - h^2 phi - phi l
///   phi l phi - l = 2 (h^2 + phi^2)
///   L_xi h = grad_xi h + 2 phi h + 2 phi h^2
VerificationReport check_structural_identities(const ContactMetricStructure& s, const Vec& x,
                                               double tol);

/// Both Sasakian characterisations: R(X,Y)xi = eta(Y)X - eta(X)Y and
/// (grad_X phi)Y = g(X,Y)xi - eta(Y)X, plus their agreement check.
VerificationReport check_sasakian(const ContactMetricStructure& s, const Vec& x, double tol);

/// K-contact tests: h = 0 and the curvature characterisation
/// R(X,xi)xi = X - eta(X)xi.
VerificationReport check_kcontact(const ContactMetricStructure& s, const Vec& x, double tol);

/// Worst-case aggregation of a per-point report over the structure's sample
/// set; each check keeps the witness point of its largest residual.
template <typename Fn>
VerificationReport worst_over_samples(const ContactMetricStructure& s, Fn per_point) {
  VerificationReport out;
  bool first = true;
  for (const Vec& x : s.sample_points()) {
    VerificationReport rep = per_point(s, x);
    if (first) {
      out = rep;
      for (Check& c : out.checks)
        if (c.witness.empty()) c.witness = s.is_chart() ? format_point(x) : "frame";
      first = false;
      continue;
    }
    for (std::size_t i = 0; i < out.checks.size() && i < rep.checks.size(); ++i) {
      if (!(rep.checks[i].residual <= out.checks[i].residual)) {
        double tol = out.checks[i].tol;
        std::string name = out.checks[i].name;
        out.checks[i] = rep.checks[i];
        out.checks[i].name = std::move(name);
        out.checks[i].tol = tol;
        out.checks[i].pass = out.checks[i].residual <= tol;
        if (out.checks[i].witness.empty())
          out.checks[i].witness = s.is_chart() ? format_point(x) : "frame";
      }
    }
  }
  out.subject = s.name();
  return out;
}

VerificationReport verify_axioms_sampled(const ContactMetricStructure& s, double tol);
VerificationReport check_structural_identities_sampled(const ContactMetricStructure& s, double tol);
VerificationReport check_sasakian_sampled(const ContactMetricStructure& s, double tol);
VerificationReport check_kcontact_sampled(const ContactMetricStructure& s, double tol);

/// Default per-backend tolerance for analytic verification paths.
double default_tol(const ContactMetricStructure& s);

/// Coefficient of eta ^ (d eta)^n relative to dx^1 ^ ... ^ dx^d, up to a
/// fixed positive combinatorial normalization.
double volume_form_coefficient(const Vec& eta, const Matrix& deta);

} // namespace kontact

#endif
