#include "kontact/registry.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "kontact/deform.hpp"
#include "kontact/error.hpp"

namespace kontact {

namespace {

ExprPtr num(double v) { return expr_num(v); }
ExprPtr var1(int one_based) { return expr_var(one_based - 1); }

SamplePlan default_plan(int dim) {
  SamplePlan plan;
  plan.dim = dim;
  return plan;
}

ChartStructureData darboux_shell(int n, const std::string& name) {
  const int d = 2 * n + 1;
  ChartStructureData cd;
  cd.name = name;
  cd.dim = d;
  cd.eta = ChartField(d, {SlotKind::Down}, "eta");
  cd.xi = ChartField(d, {SlotKind::Up}, "xi");
  cd.phi = ChartField(d, {SlotKind::Up, SlotKind::Down}, "phi");
  cd.g = ChartField(d, {SlotKind::Down, SlotKind::Down}, "g");
  cd.plan = default_plan(d);

  const int z = d;   // 1-based z coordinate
  for (int a = 1; a <= n; ++a) cd.eta.set({a - 1}, expr_mul(num(-0.5), var1(n + a)));
  cd.eta.set({z - 1}, num(0.5));
  cd.xi.set({z - 1}, num(2.0));
  return cd;
}

} // namespace

ContactMetricStructure darboux_sasakian(int n) {
  if (n < 1 || n > 4) throw Error("darboux structures support 1 <= n <= 4");
  ChartStructureData cd = darboux_shell(n, "darboux-sasakian-n" + std::to_string(n));
  const int d = cd.dim;
  const int z = d;

  // phi dx^a = -dy^a ; phi dy^a = dx^a + y^a dz ; phi dz = 0.
  for (int a = 1; a <= n; ++a) {
    cd.phi.set({n + a - 1, a - 1}, num(-1.0));
    cd.phi.set({a - 1, n + a - 1}, num(1.0));
    cd.phi.set({z - 1, n + a - 1}, var1(n + a));
  }

  // g = (1/4) [[I + y y^T, 0, -y], [0, I, 0], [-y^T, 0, 1]].
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      ExprPtr yy = expr_mul(var1(n + a), var1(n + b));
      ExprPtr e = (a == b) ? expr_mul(num(0.25), expr_add(num(1.0), yy))
                           : expr_mul(num(0.25), yy);
      cd.g.set({a - 1, b - 1}, std::move(e));
    }
  for (int a = 1; a <= n; ++a) {
    ExprPtr e = expr_mul(num(-0.25), var1(n + a));
    cd.g.set({a - 1, z - 1}, e);
    cd.g.set({z - 1, a - 1}, e);
    cd.g.set({n + a - 1, n + a - 1}, num(0.25));
  }
  cd.g.set({z - 1, z - 1}, num(0.25));
  return ContactMetricStructure(std::move(cd));
}

ContactMetricStructure darboux_weak(int n) {
  if (n < 1 || n > 4) throw Error("darboux structures support 1 <= n <= 4");
  ChartStructureData cd = darboux_shell(n, "darboux-weak-n" + std::to_string(n));
  const int d = cd.dim;
  const int z = d;
  ExprPtr zsq = expr_pow_int(var1(z), 2);

  // phi dx^a = z dx^a - (1+z^2) dy^a + z y^a dz
  // phi dy^a = dx^a - z dy^a + y^a dz ; phi dz = 0.
  for (int a = 1; a <= n; ++a) {
    cd.phi.set({a - 1, a - 1}, var1(z));
    cd.phi.set({n + a - 1, a - 1}, expr_neg(expr_add(num(1.0), zsq)));
    cd.phi.set({z - 1, a - 1}, expr_mul(var1(z), var1(n + a)));
    cd.phi.set({a - 1, n + a - 1}, num(1.0));
    cd.phi.set({n + a - 1, n + a - 1}, expr_neg(var1(z)));
    cd.phi.set({z - 1, n + a - 1}, var1(n + a));
  }

  // g = (1/4) [[I(1+z^2) + y y^T, z I, -y], [z I, I, 0], [-y^T, 0, 1]].
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      ExprPtr yy = expr_mul(var1(n + a), var1(n + b));
      ExprPtr e = (a == b)
                      ? expr_mul(num(0.25), expr_add(expr_add(num(1.0), zsq), yy))
                      : expr_mul(num(0.25), yy);
      cd.g.set({a - 1, b - 1}, std::move(e));
    }
  for (int a = 1; a <= n; ++a) {
    ExprPtr zq = expr_mul(num(0.25), var1(z));
    cd.g.set({a - 1, n + a - 1}, zq);
    cd.g.set({n + a - 1, a - 1}, zq);
    ExprPtr e = expr_mul(num(-0.25), var1(n + a));
    cd.g.set({a - 1, z - 1}, e);
    cd.g.set({z - 1, a - 1}, e);
    cd.g.set({n + a - 1, n + a - 1}, num(0.25));
  }
  cd.g.set({z - 1, z - 1}, num(0.25));
  return ContactMetricStructure(std::move(cd));
}

ContactMetricStructure lie_family(double c1, double c2) {
  LieFrameModel m = lie_family_model(c1, c2);
  m.name = "lie(" + format_real(c1) + "," + format_real(c2) + ")";
  return ContactMetricStructure(std::move(m));
}

namespace {

bool parse_real_full(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

bool parse_int_full(const std::string& s, long& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtol(s.c_str(), &end, 10);
  return end == s.c_str() + s.size();
}

ContactMetricStructure builtin_base(const std::string& name) {
  auto tail_n = [&](const std::string& prefix) -> int {
    std::string rest = name.substr(prefix.size());
    long n = 0;
    if (!parse_int_full(rest, n) || n < 1 || n > 4)
      throw Error("unknown builtin structure '" + name + "'");
    return static_cast<int>(n);
  };
  if (name.rfind("darboux-sasakian-n", 0) == 0) return darboux_sasakian(tail_n("darboux-sasakian-n"));
  if (name.rfind("darboux-weak-n", 0) == 0) return darboux_weak(tail_n("darboux-weak-n"));
  if (name.rfind("lie(", 0) == 0 && name.back() == ')') {
    std::string inner = name.substr(4, name.size() - 5);
    std::size_t comma = inner.find(',');
    double c1 = 0.0, c2 = 0.0;
    if (comma == std::string::npos || !parse_real_full(inner.substr(0, comma), c1) ||
        !parse_real_full(inner.substr(comma + 1), c2))
      throw Error("malformed lie(c1,c2) builtin '" + name + "'");
    return lie_family(c1, c2);
  }
  throw Error("unknown builtin structure '" + name + "'");
}

} // namespace

ContactMetricStructure builtin_structure(const std::string& name) {
  std::size_t at = name.find("@a=");
  if (at == std::string::npos) return builtin_base(name);
  double a = 0.0;
  if (!parse_real_full(name.substr(at + 3), a))
    throw Error("malformed deformation suffix in '" + name + "'");
  return apply_deformation(builtin_base(name.substr(0, at)), a);
}

std::vector<std::string> builtin_names() {
  return {"darboux-sasakian-n1", "darboux-sasakian-n2", "darboux-weak-n1", "darboux-weak-n2"};
}

namespace {

struct SpecParser {
  std::istringstream in;
  int line_no = 0;
  std::string section;
  std::set<std::string> seen;

  // meta
  std::string name;
  std::string backend;
  int dim = 0;
  bool has_deform = false;
  double deform_a = 1.0;

  // chart payload
  ChartStructureData cd;
  bool chart_ready = false;

  // frame payload
  LieFrameModel fm;
  bool frame_ready = false;

  explicit SpecParser(const std::string& text) : in(text) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("line " + std::to_string(line_no) + ": " + msg);
  }

  static std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }

  void ensure_backend_ready() {
    if (chart_ready || frame_ready) return;
    if (backend.empty() || dim == 0) fail("backend and dim must be declared before components");
    if (backend == "chart") {
      cd.dim = dim;
      cd.eta = ChartField(dim, {SlotKind::Down}, "eta");
      cd.xi = ChartField(dim, {SlotKind::Up}, "xi");
      cd.phi = ChartField(dim, {SlotKind::Up, SlotKind::Down}, "phi");
      cd.g = ChartField(dim, {SlotKind::Down, SlotKind::Down}, "g");
      cd.plan = default_plan(dim);
      chart_ready = true;
    } else {
      fm = LieFrameModel(dim);
      fm.g = Matrix(dim, dim);   // metric supplied by [g]
      frame_ready = true;
    }
  }

  std::vector<int> parse_indices(const std::string& key, const std::string& prefix, int count) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : key) {
      if (ch == '.') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    parts.push_back(cur);
    if (parts.size() != static_cast<std::size_t>(count + 1) || parts[0] != prefix)
      fail("expected key '" + prefix + "." + (count == 1 ? "i" : (count == 2 ? "i.j" : "k.i.j")) +
           "', got '" + key + "'");
    std::vector<int> idx;
    for (int i = 1; i <= count; ++i) {
      long v = 0;
      if (!parse_int_full(parts[static_cast<std::size_t>(i)], v) || v < 1 || v > dim)
        fail("index out of range in '" + key + "'");
      idx.push_back(static_cast<int>(v) - 1);
    }
    return idx;
  }

  void mark_seen(const std::string& canonical) {
    if (!seen.insert(canonical).second) fail("duplicate key '" + canonical + "'");
  }

  ExprPtr parse_value(const std::string& value) {
    try {
      return parse_expression(value);
    } catch (const ParseError& e) {
      fail(std::string("bad expression: ") + e.what());
    }
  }

  double constant_value(const std::string& value) {
    ExprPtr e = parse_value(value);
    if (min_dimension(e) > 0) fail("frame components must be constant expressions");
    Vec zero(static_cast<std::size_t>(dim), 0.0);
    return eval_jet(e, zero, 0).v;
  }

  void handle_meta(const std::string& key, const std::string& value) {
    if (key == "name") {
      name = value;
    } else if (key == "backend") {
      if (value != "chart" && value != "frame") fail("backend must be 'chart' or 'frame'");
      backend = value;
    } else if (key == "dim") {
      long v = 0;
      if (!parse_int_full(value, v) || v < 3 || v > 9 || v % 2 == 0)
        fail("dim must be an odd integer in [3, 9]");
      dim = static_cast<int>(v);
    } else if (key == "deform_a") {
      if (!parse_real_full(value, deform_a) || !(deform_a > 0.0))
        fail("deform_a must be a positive real");
      has_deform = true;
    } else {
      fail("unknown [meta] key '" + key + "'");
    }
  }

  void handle_samples(const std::string& key, const std::string& value) {
    if (backend != "chart") fail("[samples] applies to chart backends only");
    ensure_backend_ready();
    if (key == "lo" || key == "hi") {
      double v = 0.0;
      if (!parse_real_full(value, v)) fail("bad real in [samples]");
      (key == "lo" ? cd.plan.lo : cd.plan.hi) = v;
    } else if (key == "count" || key == "seed") {
      long v = 0;
      if (!parse_int_full(value, v) || v < 0) fail("bad integer in [samples]");
      if (key == "count")
        cd.plan.count = static_cast<int>(v);
      else
        cd.plan.seed = static_cast<std::uint64_t>(v);
    } else {
      fail("unknown [samples] key '" + key + "'");
    }
  }

  void handle_component(const std::string& key, const std::string& value) {
    ensure_backend_ready();
    if (section == "c") {
      if (!frame_ready) fail("[c] applies to frame backends only");
      std::vector<int> idx = parse_indices(key, "c", 3);
      int k = idx[0], i = idx[1], j = idx[2];
      if (i == j) fail("bracket indices must differ in '" + key + "'");
      std::string canonical = "c." + std::to_string(k + 1) + "." + std::to_string(std::min(i, j) + 1) +
                              "." + std::to_string(std::max(i, j) + 1);
      mark_seen(canonical);
      double v = constant_value(value);
      fm.set_bracket(k, i, j, v);
      return;
    }

    int rank = (section == "eta" || section == "xi") ? 1 : 2;
    std::vector<int> idx = parse_indices(key, section, rank);

    std::string canonical = key;
    if (section == "g" && idx[0] > idx[1])
      canonical = "g." + std::to_string(idx[1] + 1) + "." + std::to_string(idx[0] + 1);
    mark_seen(canonical);

    if (chart_ready) {
      ExprPtr e = parse_value(value);
      if (min_dimension(e) > dim) fail("expression references coordinates beyond dim");
      if (section == "eta") {
        cd.eta.set({idx[0]}, std::move(e));
      } else if (section == "xi") {
        cd.xi.set({idx[0]}, std::move(e));
      } else if (section == "phi") {
        cd.phi.set({idx[0], idx[1]}, std::move(e));
      } else {
        cd.g.set({idx[0], idx[1]}, e);
        if (idx[0] != idx[1]) cd.g.set({idx[1], idx[0]}, e);
      }
      return;
    }

    double v = constant_value(value);
    if (section == "eta") {
      fm.eta[static_cast<std::size_t>(idx[0])] = v;
    } else if (section == "xi") {
      fm.xi[static_cast<std::size_t>(idx[0])] = v;
    } else if (section == "phi") {
      fm.phi(idx[0], idx[1]) = v;
    } else {
      fm.g(idx[0], idx[1]) = v;
      if (idx[0] != idx[1]) fm.g(idx[1], idx[0]) = v;
    }
  }

  ContactMetricStructure run(bool strict) {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_no;
      std::string line = trim(raw);
      if (line.empty() || line[0] == '#') continue;
      if (line.front() == '[') {
        if (line.back() != ']') fail("unterminated section header");
        section = line.substr(1, line.size() - 2);
        if (section != "meta" && section != "eta" && section != "xi" && section != "phi" &&
            section != "g" && section != "c" && section != "samples")
          fail("unknown section [" + section + "]");
        continue;
      }
      std::size_t eq = line.find('=');
      if (eq == std::string::npos) fail("expected 'key = value'");
      std::string key = trim(line.substr(0, eq));
      std::string value = trim(line.substr(eq + 1));
      if (key.empty() || value.empty()) fail("empty key or value");
      if (section.empty()) fail("key outside any section");
      if (section == "meta")
        handle_meta(key, value);
      else if (section == "samples")
        handle_samples(key, value);
      else
        handle_component(key, value);
    }

    if (name.empty()) throw Error("missing [meta] name");
    if (backend.empty() || dim == 0) throw Error("missing [meta] backend or dim");
    ensure_backend_ready();

    ContactMetricStructure s;
    if (chart_ready) {
      cd.name = name;
      cd.eta.validate();
      cd.xi.validate();
      cd.phi.validate();
      cd.g.validate();
      s = ContactMetricStructure(std::move(cd));
    } else {
      fm.name = name;
      require_lie_algebra(fm);
      s = ContactMetricStructure(std::move(fm));
    }
    if (has_deform) s = apply_deformation(s, deform_a);
    if (strict) {
      VerificationReport rep = verify_axioms_sampled(s, default_tol(s));
      if (!rep.passed()) {
        for (const Check& c : rep.checks)
          if (!c.pass)
            throw Error("axiom validation failed for '" + s.name() + "': " + c.name +
                        " residual " + format_real(c.residual) + " at " + c.witness);
      }
    }
    return s;
  }
};

void render_chart_field(std::ostream& os, const std::string& label, const ChartField& f,
                        bool symmetric) {
  // Normalizing keeps the rendered text a fixed point of parse + render, so
  // programmatically built expressions and reloaded ones emit identical files.
  os << "[" << label << "]\n";
  const int d = f.dim;
  if (f.rank() == 1) {
    for (int i = 0; i < d; ++i) {
      const ExprPtr& e = f.comps[static_cast<std::size_t>(i)];
      if (e) os << label << "." << (i + 1) << " = " << to_string(normalize(e)) << "\n";
    }
  } else {
    for (int i = 0; i < d; ++i)
      for (int j = symmetric ? i : 0; j < d; ++j) {
        const ExprPtr& e = f.comps[static_cast<std::size_t>(i) * d + j];
        if (e)
          os << label << "." << (i + 1) << "." << (j + 1) << " = " << to_string(normalize(e))
             << "\n";
      }
  }
  os << "\n";
}

} // namespace

ContactMetricStructure parse_spec_text(const std::string& text, bool strict) {
  SpecParser parser(text);
  return parser.run(strict);
}

std::string render_spec_text(const ContactMetricStructure& s) {
  std::ostringstream os;
  os << "[meta]\n";
  os << "name = " << s.name() << "\n";
  os << "backend = " << (s.is_chart() ? "chart" : "frame") << "\n";
  os << "dim = " << s.dim() << "\n\n";

  if (s.is_chart()) {
    const ChartStructureData& cd = s.chart();
    render_chart_field(os, "eta", cd.eta, false);
    render_chart_field(os, "xi", cd.xi, false);
    render_chart_field(os, "phi", cd.phi, false);
    render_chart_field(os, "g", cd.g, true);
    os << "[samples]\n";
    os << "lo = " << format_real(cd.plan.lo) << "\n";
    os << "hi = " << format_real(cd.plan.hi) << "\n";
    os << "count = " << cd.plan.count << "\n";
    os << "seed = " << cd.plan.seed << "\n";
    return os.str();
  }

  const LieFrameModel& m = s.frame();
  const int d = m.dim;
  os << "[c]\n";
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        if (m.c_at(k, i, j) != 0.0)
          os << "c." << (k + 1) << "." << (i + 1) << "." << (j + 1) << " = "
             << format_real(m.c_at(k, i, j)) << "\n";
  os << "\n[eta]\n";
  for (int i = 0; i < d; ++i)
    if (m.eta[static_cast<std::size_t>(i)] != 0.0)
      os << "eta." << (i + 1) << " = " << format_real(m.eta[static_cast<std::size_t>(i)]) << "\n";
  os << "\n[xi]\n";
  for (int i = 0; i < d; ++i)
    if (m.xi[static_cast<std::size_t>(i)] != 0.0)
      os << "xi." << (i + 1) << " = " << format_real(m.xi[static_cast<std::size_t>(i)]) << "\n";
  os << "\n[phi]\n";
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (m.phi(i, j) != 0.0)
        os << "phi." << (i + 1) << "." << (j + 1) << " = " << format_real(m.phi(i, j)) << "\n";
  os << "\n[g]\n";
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j)
      if (m.g(i, j) != 0.0)
        os << "g." << (i + 1) << "." << (j + 1) << " = " << format_real(m.g(i, j)) << "\n";
  return os.str();
}

ContactMetricStructure load_spec(const std::string& path, bool strict) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open structure file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_spec_text(buf.str(), strict);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

void save_spec(const ContactMetricStructure& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << render_spec_text(s);
  if (!out) throw Error("write failed for '" + path + "'");
}

} // namespace kontact
