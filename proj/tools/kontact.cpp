#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "kontact/construct.hpp"
#include "kontact/deform.hpp"
#include "kontact/error.hpp"
#include "kontact/kmu.hpp"
#include "kontact/registry.hpp"
#include "kontact/structure.hpp"

namespace {

using kontact::ContactMetricStructure;
using kontact::Vec;
using kontact::VerificationReport;
using nlohmann::ordered_json;

std::string fr(double v) { return kontact::format_real(v); }

struct CommonOpts {
  std::string builtin;
  std::string spec_path;
  double tol = 0.0;          // 0: backend default
  double oracle_tol = 1e-5;
  int samples = 0;           // 0: plan default
  long long seed = -1;       // -1: plan default
  bool json = false;
  std::string out;
};

void add_input_options(CLI::App* sub, CommonOpts& o) {
  auto* grp = sub->add_option_group("input");
  grp->add_option("--builtin", o.builtin, "builtin structure name");
  grp->add_option("--spec", o.spec_path, "structure file (.kmu)");
  grp->require_option(1);
}

void add_report_options(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--tol", o.tol, "analytic check tolerance (default per backend)");
  sub->add_option("--samples", o.samples, "sample point count override (chart)");
  sub->add_option("--seed", o.seed, "sample seed override (chart)");
  sub->add_flag("--json", o.json, "emit JSON instead of text");
  sub->add_option("--out", o.out, "write the primary output to this file");
}

ContactMetricStructure load_structure(const CommonOpts& o) {
  ContactMetricStructure s = o.builtin.empty()
                                 ? kontact::load_spec(o.spec_path, false)
                                 : kontact::builtin_structure(o.builtin);
  if (s.is_chart()) {
    if (o.samples > 0) s.chart().plan.count = o.samples;
    if (o.seed >= 0) s.chart().plan.seed = static_cast<std::uint64_t>(o.seed);
  }
  return s;
}

double pick_tol(const CommonOpts& o, const ContactMetricStructure& s) {
  if (o.tol != 0.0) {
    if (o.tol < 0.0) throw kontact::Error("--tol must be positive");
    return o.tol;
  }
  return kontact::default_tol(s);
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream f(out);
  if (!f) throw kontact::Error("cannot open '" + out + "' for writing");
  f << text;
  if (!f) throw kontact::Error("write failed for '" + out + "'");
}

std::string render_checks(const VerificationReport& rep) {
  std::string s;
  char buf[320];
  for (const auto& c : rep.checks) {
    std::snprintf(buf, sizeof buf, "  %-44s %14s  tol %-10s %s", c.name.c_str(),
                  fr(c.residual).c_str(), fr(c.tol).c_str(), c.pass ? "pass" : "FAIL");
    s += buf;
    if (!c.witness.empty() && c.witness != "frame") {
      s += "  @ ";
      s += c.witness;
    }
    s += '\n';
  }
  return s;
}

std::string header_line(const ContactMetricStructure& s) {
  return "structure: " + s.name() + " (" + (s.is_chart() ? "chart" : "frame") + ", dim " +
         std::to_string(s.dim()) + ")\n";
}

ordered_json json_report(const VerificationReport& rep) {
  return ordered_json::parse(kontact::to_json(rep));
}

/// Analytic second-order jets of every metric component against the
/// central-difference oracle (step 1e-4), worst entry over all samples.
VerificationReport oracle_cross_check(const ContactMetricStructure& s, double otol) {
  const auto& cd = s.chart();
  const double step = 1e-4;
  double worst = 0.0;
  std::string witness;
  for (const Vec& x : s.sample_points()) {
    kontact::Point p(x);
    for (const auto& e : cd.g.comps) {
      if (!e) continue;
      kontact::Jet a = kontact::eval_jet(e, x, 2);
      kontact::Jet f = kontact::finite_difference_oracle(e, p, step);
      double diff = std::abs(a.v - f.v);
      for (int i = 0; i < a.dim; ++i) {
        diff = std::max(diff, std::abs(a.g[static_cast<std::size_t>(i)] -
                                       f.g[static_cast<std::size_t>(i)]));
        for (int j = 0; j < a.dim; ++j)
          diff = std::max(diff, std::abs(a.h(i, j) - f.h(i, j)));
      }
      if (diff > worst) {
        worst = diff;
        witness = kontact::format_point(x);
      }
    }
  }
  VerificationReport r;
  r.add("metric-jets", worst, otol, witness);
  return r;
}

std::string profile_line(const std::string& label, const VerificationReport& rep) {
  return label + ": " + (rep.passed() ? "holds" : "fails") + " (max residual " +
         fr(rep.max_residual()) + ")";
}

int run_verify(const CommonOpts& o) {
  ContactMetricStructure s = load_structure(o);
  double tol = pick_tol(o, s);

  VerificationReport report;
  report.subject = s.name();
  report.merge(kontact::verify_axioms_sampled(s, tol), "axioms/");
  VerificationReport tensors = kontact::worst_over_samples(
      s, [&](const ContactMetricStructure& st, const Vec& x) {
        return kontact::derived_tensors(st, x, tol).invariants;
      });
  report.merge(tensors, "tensors/");
  report.merge(kontact::check_structural_identities_sampled(s, tol), "identities/");
  if (s.is_chart()) report.merge(oracle_cross_check(s, o.oracle_tol), "oracle/");

  report.notes.push_back("backend: " + std::string(s.is_chart() ? "chart" : "frame"));
  report.notes.push_back("points: " + std::to_string(s.sample_points().size()));
  report.notes.push_back("tol: " + fr(tol));
  report.notes.push_back(profile_line("sasakian", kontact::check_sasakian_sampled(s, tol)));
  report.notes.push_back(profile_line("kcontact", kontact::check_kcontact_sampled(s, tol)));

  if (o.json) {
    emit(json_report(report).dump(2) + "\n", o.out);
  } else {
    std::string text = header_line(s);
    for (const auto& n : report.notes) text += n + "\n";
    text += "\n" + render_checks(report);
    text += "\nresult: " + std::string(report.passed() ? "PASS" : "FAIL") +
            " (worst residual " + fr(report.max_residual()) + ")\n";
    emit(text, o.out);
  }
  return report.passed() ? 0 : 1;
}

int run_classify(const CommonOpts& o) {
  ContactMetricStructure s = load_structure(o);
  double tol = pick_tol(o, s);

  kontact::StructureKmuFit fit = kontact::fit_structure_kmu(s);
  const kontact::KappaMuReport& c = fit.combined;
  double mu_for_checks = c.mu_present ? c.mu : 0.0;

  kontact::BoeckxReport inv = kontact::boeckx_invariant(c.kappa, mu_for_checks);

  VerificationReport identities;
  if (fit.constant)
    identities = kontact::worst_over_samples(
        s, [&](const ContactMetricStructure& st, const Vec& x) {
          return kontact::check_weak_kmu_identities(st, x, c.kappa, mu_for_checks, tol);
        });

  kontact::SemisymmetryReport semi{0.0, 0.0};
  double semi_worst_instance = 0.0, semi_worst_full = 0.0;
  for (const Vec& x : s.sample_points()) {
    semi = kontact::check_weak_semisymmetry(s, x);
    semi_worst_instance = std::max(semi_worst_instance, semi.instance_residual);
    semi_worst_full = std::max(semi_worst_full, semi.full_residual);
  }

  bool has_bundles = false;
  kontact::EigenbundleDecomposition bundles;
  if (fit.constant && inv.defined && c.kappa < 1.0 - 1e-6) {
    bundles = kontact::eigenbundles(s, s.sample_points().front(), c.kappa);
    has_bundles = true;
  }

  bool has_predicates = false;
  kontact::SignPredicates preds;
  if (c.kappa < 1.0 - 1e-9) {
    preds = kontact::regime_sign_predicates(c.kappa, mu_for_checks);
    has_predicates = true;
  }

  bool weak_ok = fit.constant && c.residual_weak <= tol;
  bool strong_ok = weak_ok && c.residual_strong <= tol;
  std::string verdict;
  if (!fit.constant)
    verdict = "pointwise fit is not constant";
  else if (!weak_ok)
    verdict = "not a (kappa,mu) structure at this tolerance";
  else if (c.is_kcontact)
    verdict = "K-contact (kappa = 1)";
  else if (strong_ok)
    verdict = "strongly (kappa,mu) with constant coefficients";
  else
    verdict = "weakly (kappa,mu) with constant coefficients";

  if (o.json) {
    ordered_json j;
    j["subject"] = s.name();
    j["backend"] = s.is_chart() ? "chart" : "frame";
    j["dim"] = s.dim();
    ordered_json jf;
    jf["kappa"] = c.kappa;
    if (c.mu_present)
      jf["mu"] = c.mu;
    else
      jf["mu"] = nullptr;
    jf["lambda"] = c.lambda;
    jf["constant"] = fit.constant;
    jf["kappa_spread"] = fit.kappa_spread;
    jf["mu_spread"] = fit.mu_spread;
    jf["residual_weak"] = c.residual_weak;
    jf["residual_strong"] = c.residual_strong;
    jf["is_kcontact"] = c.is_kcontact;
    j["fit"] = jf;
    ordered_json ji;
    ji["defined"] = inv.defined;
    if (inv.defined)
      ji["value"] = inv.invariant;
    else
      ji["value"] = nullptr;
    ji["regime"] = kontact::regime_name(inv.regime);
    ji["epsilon"] = inv.epsilon;
    ji["alpha"] = inv.alpha;
    j["invariant"] = ji;
    j["identities"] = fit.constant ? json_report(identities)["checks"] : ordered_json::array();
    if (has_bundles) {
      ordered_json jb;
      jb["lambda"] = bundles.lambda;
      jb["dims"] = {bundles.dim_plus, bundles.dim_minus, bundles.dim_zero};
      jb["orthogonality_residual"] = bundles.orthogonality_residual;
      jb["phi_mapping_residual"] = bundles.phi_mapping_residual;
      jb["xi_alignment_residual"] = bundles.xi_alignment_residual;
      j["eigenbundles"] = jb;
    } else {
      j["eigenbundles"] = nullptr;
    }
    j["semisymmetry"] = {{"instance", semi_worst_instance}, {"full", semi_worst_full}};
    if (has_predicates) {
      ordered_json jp;
      jp["p_i"] = preds.p_i;
      jp["p_ii"] = preds.p_ii;
      jp["p_iii_a"] = preds.p_iii_a;
      jp["p_iii_b"] = preds.p_iii_b;
      j["predicates"] = jp;
    } else {
      j["predicates"] = nullptr;
    }
    j["classification"] = verdict;
    emit(j.dump(2) + "\n", o.out);
  } else {
    std::string text = header_line(s);
    text += "fit:\n";
    text += "  kappa = " + fr(c.kappa) + "  (spread " + fr(fit.kappa_spread) + ")\n";
    text += "  mu    = " + (c.mu_present ? fr(c.mu) : std::string("n/a (h = 0)")) +
            (c.mu_present ? "  (spread " + fr(fit.mu_spread) + ")" : "") + "\n";
    text += "  lambda = " + fr(c.lambda) + "\n";
    text += "  constant: " + std::string(fit.constant ? "yes" : "no") + "\n";
    text += "  weak residual   = " + fr(c.residual_weak) + "\n";
    text += "  strong residual = " + fr(c.residual_strong) + "\n";
    text += "invariant:\n";
    if (inv.defined)
      text += "  I = " + fr(inv.invariant) + "  regime = " + kontact::regime_name(inv.regime) +
              "  epsilon = " + std::to_string(inv.epsilon) + "  alpha = " + fr(inv.alpha) + "\n";
    else
      text += "  undefined (kappa = 1)  regime = " + kontact::regime_name(inv.regime) + "\n";
    if (fit.constant && !identities.checks.empty())
      text += "identities (fitted constants):\n" + render_checks(identities);
    if (has_bundles)
      text += "eigenbundles: dims (" + std::to_string(bundles.dim_plus) + ", " +
              std::to_string(bundles.dim_minus) + ", " + std::to_string(bundles.dim_zero) +
              ")  orthogonality " + fr(bundles.orthogonality_residual) + "  phi-mapping " +
              fr(bundles.phi_mapping_residual) + "  xi-alignment " +
              fr(bundles.xi_alignment_residual) + "\n";
    text += "semisymmetry: instance " + fr(semi_worst_instance) + "  full " +
            fr(semi_worst_full) + "\n";
    if (has_predicates)
      text += std::string("predicates: p_i=") + (preds.p_i ? "1" : "0") + " p_ii=" +
              (preds.p_ii ? "1" : "0") + " p_iii_a=" + (preds.p_iii_a ? "1" : "0") +
              " p_iii_b=" + (preds.p_iii_b ? "1" : "0") + "\n";
    text += "classification: " + verdict + "\n";
    emit(text, o.out);
  }
  return weak_ok ? 0 : 1;
}

int run_boeckx(const CommonOpts& o, double kappa, double mu, bool have_kappa) {
  kontact::BoeckxReport inv;
  std::string subject;
  if (have_kappa) {
    subject = "(kappa,mu) = (" + fr(kappa) + "," + fr(mu) + ")";
    inv = kontact::boeckx_invariant(kappa, mu);
  } else {
    if (o.builtin.empty() && o.spec_path.empty())
      throw kontact::Error("boeckx needs --builtin, --spec, or --kappa/--mu");
    ContactMetricStructure s = load_structure(o);
    kontact::StructureKmuFit fit = kontact::fit_structure_kmu(s);
    if (!fit.constant)
      throw kontact::Error("pointwise (kappa,mu) fit is not constant; no invariant");
    kappa = fit.combined.kappa;
    mu = fit.combined.mu_present ? fit.combined.mu : 0.0;
    subject = s.name();
    inv = kontact::boeckx_invariant(kappa, mu);
  }

  bool has_predicates = kappa < 1.0 - 1e-9;
  kontact::SignPredicates preds;
  if (has_predicates) preds = kontact::regime_sign_predicates(kappa, mu);

  if (o.json) {
    ordered_json j;
    j["subject"] = subject;
    j["kappa"] = kappa;
    j["mu"] = mu;
    j["defined"] = inv.defined;
    if (inv.defined)
      j["value"] = inv.invariant;
    else
      j["value"] = nullptr;
    j["lambda"] = inv.lambda;
    j["regime"] = kontact::regime_name(inv.regime);
    j["epsilon"] = inv.epsilon;
    j["alpha"] = inv.alpha;
    if (has_predicates) {
      ordered_json jp;
      jp["p_i"] = preds.p_i;
      jp["p_ii"] = preds.p_ii;
      jp["p_iii_a"] = preds.p_iii_a;
      jp["p_iii_b"] = preds.p_iii_b;
      j["predicates"] = jp;
    } else {
      j["predicates"] = nullptr;
    }
    emit(j.dump(2) + "\n", o.out);
  } else {
    std::string text = "subject: " + subject + "\n";
    text += "kappa = " + fr(kappa) + "  mu = " + fr(mu) + "  lambda = " + fr(inv.lambda) + "\n";
    if (inv.defined)
      text += "I = " + fr(inv.invariant) + "  regime = " + kontact::regime_name(inv.regime) +
              "  epsilon = " + std::to_string(inv.epsilon) + "  alpha = " + fr(inv.alpha) + "\n";
    else
      text += "I undefined (kappa = 1)  regime = " + kontact::regime_name(inv.regime) + "\n";
    if (has_predicates)
      text += std::string("predicates: p_i=") + (preds.p_i ? "1" : "0") + " p_ii=" +
              (preds.p_ii ? "1" : "0") + " p_iii_a=" + (preds.p_iii_a ? "1" : "0") +
              " p_iii_b=" + (preds.p_iii_b ? "1" : "0") + "\n";
    emit(text, o.out);
  }
  return 0;
}

int run_deform(const CommonOpts& o, double a) {
  ContactMetricStructure s = load_structure(o);
  double tol = pick_tol(o, s);
  double transform_tol = o.tol != 0.0 ? o.tol : 1e-6;

  kontact::StructureKmuFit base = kontact::fit_structure_kmu(s);
  ContactMetricStructure sd = kontact::apply_deformation(s, a);

  VerificationReport report;
  report.subject = sd.name();
  report.merge(kontact::verify_axioms_sampled(sd, tol), "axioms/");

  bool predictable = base.constant && base.combined.residual_weak <= tol;
  double pk = 0.0, pm = 0.0;
  kontact::StructureKmuFit after;
  if (predictable) {
    double mu0 = base.combined.mu_present ? base.combined.mu : 0.0;
    std::tie(pk, pm) = kontact::predict_kmu(base.combined.kappa, mu0, a);
    after = kontact::fit_structure_kmu(sd);
    VerificationReport transform = kontact::worst_over_samples(
        s, [&](const ContactMetricStructure& st, const Vec& x) {
          return kontact::check_curvature_transform(st, a, x, transform_tol);
        });
    report.merge(transform, "transform/");
  } else {
    report.notes.push_back("base structure has no constant (kappa,mu) fit; "
                           "prediction checks skipped");
  }

  if (!o.out.empty()) kontact::save_spec(sd, o.out);

  if (o.json) {
    ordered_json j;
    j["subject"] = s.name();
    j["a"] = a;
    auto fit_json = [](const kontact::KappaMuReport& c) {
      ordered_json jf;
      jf["kappa"] = c.kappa;
      if (c.mu_present)
        jf["mu"] = c.mu;
      else
        jf["mu"] = nullptr;
      return jf;
    };
    j["base"] = fit_json(base.combined);
    if (predictable) {
      j["predicted"] = {{"kappa", pk}, {"mu", pm}};
      j["measured"] = fit_json(after.combined);
      j["delta"] = {{"kappa", std::abs(after.combined.kappa - pk)},
                    {"mu", after.combined.mu_present ? std::abs(after.combined.mu - pm) : 0.0}};
    } else {
      j["predicted"] = nullptr;
      j["measured"] = nullptr;
      j["delta"] = nullptr;
    }
    ordered_json jr = json_report(report);
    j["checks"] = jr["checks"];
    j["notes"] = jr["notes"];
    j["passed"] = report.passed();
    j["out"] = o.out.empty() ? ordered_json(nullptr) : ordered_json(o.out);
    // The report goes to stdout; --out holds the deformed structure file.
    emit(j.dump(2) + "\n", "");
  } else {
    std::string text = header_line(s);
    text += "deformation a = " + fr(a) + " -> " + sd.name() + "\n";
    if (predictable) {
      text += "             kappa            mu\n";
      auto row = [&](const char* label, double k, double m, bool has_mu) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "  %-10s %-16s %-16s\n", label, fr(k).c_str(),
                      has_mu ? fr(m).c_str() : "n/a");
        return std::string(buf);
      };
      double mu0 = base.combined.mu_present ? base.combined.mu : 0.0;
      text += row("base", base.combined.kappa, mu0, base.combined.mu_present);
      text += row("predicted", pk, pm, true);
      text += row("measured", after.combined.kappa, after.combined.mu, after.combined.mu_present);
      text += row("|delta|", std::abs(after.combined.kappa - pk),
                  after.combined.mu_present ? std::abs(after.combined.mu - pm) : 0.0,
                  after.combined.mu_present);
    }
    for (const auto& n : report.notes) text += n + "\n";
    text += "\n" + render_checks(report);
    if (!o.out.empty()) text += "\nwrote deformed structure: " + o.out + "\n";
    text += "\nresult: " + std::string(report.passed() ? "PASS" : "FAIL") + "\n";
    emit(text, "");
  }
  return report.passed() ? 0 : 1;
}

std::string plan_text(const kontact::ConstructionPlan& p) {
  std::string text = "plan:\n";
  text += "  kappa = " + fr(p.kappa) + "  mu = " + fr(p.mu) + "  lambda = " + fr(p.lambda) + "\n";
  text += "  epsilon = " + std::to_string(p.epsilon) + "  alpha = " + fr(p.alpha) +
          "  normalizer = " + fr(p.normalizer) + "\n";
  if (p.target == kontact::ConstructionTarget::Mu2)
    text += "  radicand = " + fr(p.radicand) + "  kappa1 = " + fr(p.kappa1) + "  mu1 = " +
            fr(p.mu1) + "  h1_scale = " + fr(p.h1_scale) + "  lambda1 = " + fr(p.lambda1) + "\n";
  return text;
}

ordered_json plan_json(const kontact::ConstructionPlan& p) {
  ordered_json j;
  j["target"] = p.target == kontact::ConstructionTarget::Kcontact ? "kcontact" : "mu2";
  j["kappa"] = p.kappa;
  j["mu"] = p.mu;
  j["lambda"] = p.lambda;
  j["epsilon"] = p.epsilon;
  j["alpha"] = p.alpha;
  j["normalizer"] = p.normalizer;
  j["radicand"] = p.radicand;
  j["kappa1"] = p.kappa1;
  j["mu1"] = p.mu1;
  j["h1_scale"] = p.h1_scale;
  j["lambda1"] = p.lambda1;
  return j;
}

int run_construct(const CommonOpts& o, const std::string& target_name) {
  kontact::ConstructionTarget target;
  if (target_name == "kcontact")
    target = kontact::ConstructionTarget::Kcontact;
  else if (target_name == "mu2")
    target = kontact::ConstructionTarget::Mu2;
  else
    throw kontact::Error("unknown construction target '" + target_name +
                         "' (expected kcontact or mu2)");

  ContactMetricStructure s = load_structure(o);
  kontact::ConstructionPlan plan;
  VerificationReport report;
  std::string produced;

  if (s.is_chart()) {
    plan = kontact::build_construction_pointwise(s, s.sample_points().front(), target).plan;
    report = kontact::worst_over_samples(
        s, [&](const ContactMetricStructure& st, const Vec& x) {
          return kontact::build_construction_pointwise(st, x, target).report;
        });
    report.notes.push_back("chart backend: pointwise construction "
                           "(no derivative-level verification)");
    if (!o.out.empty())
      report.notes.push_back("--out ignored: pointwise construction produces no structure file");
  } else {
    kontact::ConstructionResult res = target == kontact::ConstructionTarget::Kcontact
                                          ? kontact::build_kcontact(s)
                                          : kontact::build_mu2(s);
    plan = res.plan;
    report = res.report;
    report.merge(kontact::verify_fixedness(res.structure, target, {0.5, 2.0, 3.7}, 1e-8),
                 "fixedness/");
    produced = res.structure.name();
    if (!o.out.empty()) kontact::save_spec(res.structure, o.out);
  }

  if (o.json) {
    ordered_json j;
    j["subject"] = s.name();
    j["plan"] = plan_json(plan);
    ordered_json jr = json_report(report);
    j["checks"] = jr["checks"];
    j["notes"] = jr["notes"];
    j["passed"] = report.passed();
    j["produced"] = produced.empty() ? ordered_json(nullptr) : ordered_json(produced);
    j["out"] = (o.out.empty() || produced.empty()) ? ordered_json(nullptr) : ordered_json(o.out);
    emit(j.dump(2) + "\n", "");
  } else {
    std::string text = header_line(s);
    text += "target: " + target_name + "\n";
    text += plan_text(plan);
    for (const auto& n : report.notes) text += n + "\n";
    text += "\n" + render_checks(report);
    if (!produced.empty()) text += "\nproduced: " + produced + "\n";
    if (!o.out.empty() && !produced.empty()) text += "wrote structure: " + o.out + "\n";
    text += "\nresult: " + std::string(report.passed() ? "PASS" : "FAIL") + "\n";
    emit(text, "");
  }
  return report.passed() ? 0 : 1;
}

std::vector<double> parse_range(const std::string& text) {
  std::size_t c1 = text.find(':');
  std::size_t c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw kontact::Error("range must be lo:hi:step, got '" + text + "'");
  auto num = [&](const std::string& part) {
    char* end = nullptr;
    double v = std::strtod(part.c_str(), &end);
    if (part.empty() || end != part.c_str() + part.size())
      throw kontact::Error("bad number '" + part + "' in range '" + text + "'");
    return v;
  };
  double lo = num(text.substr(0, c1));
  double hi = num(text.substr(c1 + 1, c2 - c1 - 1));
  double step = num(text.substr(c2 + 1));
  if (!(step > 0.0) || hi < lo) throw kontact::Error("range needs lo <= hi and step > 0");
  std::vector<double> values;
  int count = static_cast<int>((hi - lo) / step + 1e-9) + 1;
  for (int i = 0; i < count; ++i) values.push_back(lo + step * i);
  return values;
}

int run_sweep(const std::string& r1, const std::string& r2, const std::string& out) {
  std::vector<double> c1s = parse_range(r1);
  std::vector<double> c2s = parse_range(r2);
  std::string csv = "c1,c2,kappa,mu,lambda,I,regime\n";
  for (double c1 : c1s)
    for (double c2 : c2s) {
      ContactMetricStructure s = kontact::lie_family(c1, c2);
      kontact::KappaMuReport k = kontact::estimate_kappa_mu(s, Vec{});
      kontact::BoeckxReport inv =
          kontact::boeckx_invariant(k.kappa, k.mu_present ? k.mu : 0.0);
      csv += fr(c1) + "," + fr(c2) + "," + fr(k.kappa) + ",";
      csv += (k.mu_present ? fr(k.mu) : std::string("nan")) + ",";
      csv += fr(inv.lambda) + ",";
      csv += (inv.defined ? fr(inv.invariant) : std::string("nan")) + ",";
      csv += kontact::regime_name(inv.regime) + "\n";
    }
  emit(csv, out);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"contact metric structure laboratory"};
  app.require_subcommand(1);

  CommonOpts vo;
  auto* verify = app.add_subcommand("verify", "check the defining axioms, derived-tensor "
                                              "invariants and structural identities");
  add_input_options(verify, vo);
  add_report_options(verify, vo);
  verify->add_option("--oracle-tol", vo.oracle_tol,
                     "finite-difference oracle tolerance (chart backends)");

  CommonOpts co;
  auto* classify = app.add_subcommand("classify", "fit (kappa,mu), compute the deformation "
                                                  "invariant and classify the regime");
  add_input_options(classify, co);
  add_report_options(classify, co);

  CommonOpts bo;
  double bk = 0.0, bm = 0.0;
  auto* boeckx = app.add_subcommand("boeckx", "deformation invariant and sign predicates "
                                              "from a structure or raw (kappa,mu)");
  boeckx->add_option("--builtin", bo.builtin, "builtin structure name");
  boeckx->add_option("--spec", bo.spec_path, "structure file (.kmu)");
  auto* bk_opt = boeckx->add_option("--kappa", bk, "kappa value (with --mu, instead of input)");
  boeckx->add_option("--mu", bm, "mu value (default 0)");
  boeckx->add_flag("--json", bo.json, "emit JSON instead of text");
  boeckx->add_option("--out", bo.out, "write the report to this file");

  CommonOpts dfo;
  double a = 0.0;
  auto* deform = app.add_subcommand("deform", "apply the homothetic deformation and check "
                                              "the transformation laws");
  add_input_options(deform, dfo);
  add_report_options(deform, dfo);
  deform->add_option("--a", a, "deformation parameter (> 0)")->required();

  CommonOpts cno;
  std::string target_name;
  auto* construct = app.add_subcommand("construct", "produce the associated K-contact or "
                                                    "mu = 2 structure when the regime admits it");
  add_input_options(construct, cno);
  add_report_options(construct, cno);
  construct->add_option("--target", target_name, "kcontact | mu2")->required();

  std::string sweep_c1 = "-6:6:0.5", sweep_c2 = "-6:6:0.5", sweep_out;
  auto* sweep = app.add_subcommand("sweep", "scan the 3D Lie family over a (c1,c2) grid "
                                            "and emit CSV");
  sweep->add_option("--c1", sweep_c1, "c1 range lo:hi:step");
  sweep->add_option("--c2", sweep_c2, "c2 range lo:hi:step");
  sweep->add_option("--out", sweep_out, "write CSV to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return run_verify(vo);
    if (classify->parsed()) return run_classify(co);
    if (boeckx->parsed()) return run_boeckx(bo, bk, bm, bk_opt->count() > 0);
    if (deform->parsed()) return run_deform(dfo, a);
    if (construct->parsed()) return run_construct(cno, target_name);
    if (sweep->parsed()) return run_sweep(sweep_c1, sweep_c2, sweep_out);
  } catch (const kontact::RegimeError& e) {
    std::fprintf(stderr, "refused: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
