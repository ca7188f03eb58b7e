#include "kontact/report.hpp"

#include <algorithm>
#include <charconv>

#include <json.hpp>

namespace kontact {

Check make_check(std::string name, double residual, double tol, std::string witness) {
  Check c;
  c.name = std::move(name);
  c.residual = residual;
  c.tol = tol;
  c.pass = residual <= tol;   // NaN fails
  c.witness = std::move(witness);
  return c;
}

void VerificationReport::add(std::string name, double residual, double tol, std::string witness) {
  checks.push_back(make_check(std::move(name), residual, tol, std::move(witness)));
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix) {
  for (const Check& c : other.checks) {
    Check copy = c;
    copy.name = prefix + copy.name;
    checks.push_back(std::move(copy));
  }
  for (const std::string& n : other.notes) notes.push_back(prefix + n);
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

double VerificationReport::max_residual() const {
  double m = 0.0;
  for (const Check& c : checks) m = std::max(m, c.residual);
  return m;
}

const Check* VerificationReport::find(const std::string& name) const {
  for (const Check& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string to_json(const VerificationReport& report, int indent) {
  nlohmann::ordered_json j;
  j["subject"] = report.subject;
  j["passed"] = report.passed();
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const Check& c : report.checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["residual"] = c.residual;
    jc["tol"] = c.tol;
    jc["pass"] = c.pass;
    if (!c.witness.empty()) jc["witness"] = c.witness;
    checks.push_back(std::move(jc));
  }
  j["checks"] = std::move(checks);
  if (!report.notes.empty()) j["notes"] = report.notes;
  return j.dump(indent);
}

std::string format_real(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, p);
}

std::string format_point(const std::vector<double>& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ", ";
    out += format_real(x[i]);
  }
  out += ")";
  return out;
}

} // namespace kontact
