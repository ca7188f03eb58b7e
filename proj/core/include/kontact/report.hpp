#ifndef KONTACT_REPORT_HPP
#define KONTACT_REPORT_HPP

#include <string>
#include <vector>

namespace kontact {

/// One named residual check: passes when residual <= tol.
struct Check {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string witness;   // optional context, e.g. the worst sample point
};

Check make_check(std::string name, double residual, double tol, std::string witness = "");

struct VerificationReport {
  std::string subject;
  std::vector<Check> checks;
  std::vector<std::string> notes;

  void add(std::string name, double residual, double tol, std::string witness = "");
  void merge(const VerificationReport& other, const std::string& prefix = "");
  bool passed() const;
  double max_residual() const;
  const Check* find(const std::string& name) const;
};

/// Deterministic JSON rendering (stable key order, shortest round-trip
/// number formatting).
std::string to_json(const VerificationReport& report, int indent = 2);

/// Render a point as "(x1, ..., xd)" with shortest round-trip numbers.
std::string format_point(const std::vector<double>& x);

/// Shortest round-trip decimal rendering of one real.
std::string format_real(double v);

} // namespace kontact

#endif
