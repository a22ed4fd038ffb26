// lagtor: exact classification of Lagrangian product tori, low admissible
// path construction with machine-checkable certificates, and numerical
// verification of the explicit symplectic maps.

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>

#include <CLI11.hpp>

#include "lagtor/json_io.hpp"
#include "lagtor/numlab.hpp"
#include "lagtor/oracle.hpp"

namespace {

using namespace lagtor;

struct Options {
  std::string a, e, b, c, d, s;
  std::string preset, json_file, out_file, check_name;
  uint64_t seed = 20240505;
  size_t node_cap = 10000000;
};

void emit(const Options& opt, const Json& j) {
  std::string text = j.dump(2);
  std::cout << text << "\n";
  if (!opt.out_file.empty()) {
    std::ofstream out(opt.out_file);
    if (!out) throw InputError("cannot write " + opt.out_file);
    out << text << "\n";
  }
}

Json load_json(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw InputError("cannot open " + file);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& ex) {
    throw InputError(std::string("bad JSON in ") + file + ": " + ex.what());
  }
  return j;
}

SymVec inline_vector(const std::string& text, const SymBasisPtr& basis) {
  SymVec v;
  for (const Rational& q : parse_rational_list(text))
    v.push_back(SymReal::rational(basis, q));
  return v;
}

// Tori come either from inline rational flags or from a JSON payload with
// "left"/"right" TorusSpec objects.
std::pair<TorusSpec, TorusSpec> load_torus_pair(const Options& opt,
                                                bool need_capacity) {
  if (!opt.json_file.empty()) {
    Json j = load_json(opt.json_file);
    if (!j.contains("left") || !j.contains("right"))
      throw InputError("expected fields /left and /right in " + opt.json_file);
    return {torus_from_json(j.at("left")), torus_from_json(j.at("right"))};
  }
  if (opt.a.empty() || opt.e.empty())
    throw InputError("need --a and --e (or --json)");
  SymBasisPtr basis = SymBasis::trivial();
  std::optional<SymReal> cap;
  if (!opt.b.empty())
    cap = SymReal::rational(basis, Rational::parse(opt.b));
  else if (need_capacity)
    throw InputError("this command needs --b");
  return {TorusSpec::make(basis, inline_vector(opt.a, basis), cap),
          TorusSpec::make(basis, inline_vector(opt.e, basis), cap)};
}

TorusSpec load_single_torus(const Options& opt, bool need_capacity) {
  if (!opt.json_file.empty()) return torus_from_json(load_json(opt.json_file));
  if (opt.a.empty()) throw InputError("need --a (or --json)");
  SymBasisPtr basis = SymBasis::trivial();
  std::optional<SymReal> cap;
  if (!opt.b.empty())
    cap = SymReal::rational(basis, Rational::parse(opt.b));
  else if (need_capacity)
    throw InputError("this command needs --b");
  return TorusSpec::make(basis, inline_vector(opt.a, basis), cap);
}

ManifoldDescriptor load_manifold(const Options& opt) {
  if (!opt.preset.empty()) {
    if (opt.preset == "aspherical") return preset_aspherical();
    const std::string tag = "s2xs2:";
    if (opt.preset.rfind(tag, 0) == 0) {
      auto vs = parse_rational_list(opt.preset.substr(tag.size()));
      if (vs.size() != 2)
        throw InputError("preset s2xs2 needs two areas, e.g. s2xs2:3,4");
      return preset_s2xs2(vs[0], vs[1]);
    }
    throw InputError("unknown preset " + opt.preset +
                     " (available: s2xs2:v1,v2 and aspherical)");
  }
  if (!opt.json_file.empty()) {
    Json j = load_json(opt.json_file);
    if (j.contains("manifold")) return manifold_from_json(j.at("manifold"));
    return manifold_from_json(j);
  }
  throw InputError("need --preset or --json for the manifold");
}

Json verdict_with_invariants(const std::string& verdict, const TorusSpec& t,
                             const TorusSpec& u) {
  Json j;
  j["format"] = kFormatTag;
  j["verdict"] = verdict;
  j["left"] = invariants_to_json(torus_invariants(t));
  j["right"] = invariants_to_json(torus_invariants(u));
  return j;
}

int cmd_invariants(const Options& opt) {
  TorusSpec t = load_single_torus(opt, false);
  InvariantSet inv = torus_invariants(t);
  Json j;
  j["format"] = kFormatTag;
  Json body = invariants_to_json(inv);
  for (auto& [key, val] : body.items()) j[key] = val;
  j["ua_str"] = inv.ua.str();
  j["total_str"] = inv.total.str();
  j["norm_str"] = inv.norm.str();
  emit(opt, j);
  return 0;
}

int cmd_equiv(const Options& opt) {
  auto [t, u] = load_torus_pair(opt, false);
  bool eq = equiv(t, u);
  Json j = verdict_with_invariants(eq ? "equivalent" : "distinct", t, u);
  j["equivalent"] = eq;
  emit(opt, j);
  return 0;
}

int cmd_energy(const Options& opt) {
  TorusSpec t = load_single_torus(opt, true);
  SymReal e = opt.s.empty() ? displacement_energy(t)
                            : displacement_energy_perturbed(
                                  t, inline_vector(opt.s, t.basis));
  Json j;
  j["format"] = kFormatTag;
  j["energy"] = coeffs_to_json(e);
  j["energy_str"] = e.str();
  emit(opt, j);
  return 0;
}

int cmd_clifford(const Options& opt) {
  TorusSpec t = load_single_torus(opt, false);
  if (opt.b.empty()) throw InputError("clifford needs --b");
  SymReal b = SymReal::rational(t.basis, Rational::parse(opt.b));
  emit(opt, torus_to_json(clifford_lift(t, b)));
  return 0;
}

int cmd_obstruct(const Options& opt) {
  auto [t, u] = load_torus_pair(opt, false);
  if (opt.b.empty()) throw InputError("obstruct needs --b");
  SymReal b = SymReal::rational(t.basis, Rational::parse(opt.b));
  BallVerdict v = obstruct_ball(t, u, b);
  const char* name = v == BallVerdict::Obstructed          ? "Obstructed"
                     : v == BallVerdict::CertifiablyIsotopic
                         ? "CertifiablyIsotopic"
                         : "Unknown";
  emit(opt, verdict_with_invariants(name, t, u));
  return 0;
}

int cmd_classify(const Options& opt, Setting setting) {
  auto [t, u] =
      load_torus_pair(opt, setting == Setting::AsphericalTameWithCapacity);
  ClassifyVerdict v = classify(t, u, setting);
  const char* name = v == ClassifyVerdict::Equivalent ? "equivalent"
                     : v == ClassifyVerdict::Distinct ? "distinct"
                                                      : "invariants-agree";
  emit(opt, verdict_with_invariants(name, t, u));
  return 0;
}

std::pair<SymBasisPtr, std::pair<SymVec, SymVec>> load_vector_pair(
    const Options& opt) {
  if (!opt.json_file.empty()) {
    Json j = load_json(opt.json_file);
    SymBasisPtr basis = basis_from_json(j.at("basis"), "/basis");
    return {basis,
            {vec_from_json(j.at("d"), basis, "/d"),
             vec_from_json(j.at("e"), basis, "/e")}};
  }
  if (opt.a.empty() || opt.e.empty())
    throw InputError("need --a and --e (or --json with d/e)");
  SymBasisPtr basis = SymBasis::trivial();
  return {basis, {inline_vector(opt.a, basis), inline_vector(opt.e, basis)}};
}

int cmd_path(const Options& opt) {
  auto [basis, de] = load_vector_pair(opt);
  MovePath p = low_path(de.first, de.second);
  emit(opt, path_to_json(basis, p));
  return 0;
}

int cmd_certificate(const Options& opt) {
  auto [t, u] = load_torus_pair(opt, false);
  emit(opt, cert_to_json(certificate(t, u)));
  return 0;
}

int cmd_check(const Options& opt) {
  if (opt.json_file.empty()) throw InputError("check needs --json <file>");
  Json j = load_json(opt.json_file);
  CheckReport report;
  if (j.contains("steps")) {
    report = check_certificate(cert_from_json(j));
  } else if (j.contains("moves")) {
    ParsedPath p = path_from_json(j);
    report = check_path(p.start, p.moves, p.end ? &*p.end : nullptr);
  } else {
    throw InputError("file is neither a move path nor a certificate");
  }
  emit(opt, check_report_to_json(report));
  return report.ok ? 0 : 3;
}

int cmd_shift(const Options& opt) {
  ManifoldDescriptor m = load_manifold(opt);
  if (opt.c.empty() || opt.d.empty() || opt.e.empty())
    throw InputError("shift needs --c, --d and --e");
  SymReal c = SymReal::rational(m.basis, Rational::parse(opt.c));
  ShiftResult r = shift_equiv(m, c, inline_vector(opt.d, m.basis),
                              inline_vector(opt.e, m.basis));
  Json j;
  j["format"] = kFormatTag;
  j["verdict"] = r.verdict == ShiftVerdict::EquivalentForSmallA
                     ? "EquivalentForSmallA"
                     : "NotImplied";
  j["special"] = is_special(m);
  j["diagnostic"] = r.diagnostic;
  emit(opt, j);
  return 0;
}

int cmd_oracle(const Options& opt) {
  if (opt.a.empty() || opt.e.empty())
    throw InputError("oracle needs --a and --e");
  IntInstance inst;
  for (const Rational& q : parse_rational_list(opt.a)) {
    if (!q.is_integer()) throw InputError("oracle takes integer vectors");
    inst.d.push_back(q.num());
  }
  for (const Rational& q : parse_rational_list(opt.e)) {
    if (!q.is_integer()) throw InputError("oracle takes integer vectors");
    inst.e.push_back(q.num());
  }
  inst.node_cap = opt.node_cap;
  OracleResult res = bfs_low_path(inst);
  Json j;
  j["format"] = kFormatTag;
  j["found"] = res.found;
  j["nodes_expanded"] = res.nodes_expanded;
  if (res.found) {
    SymBasisPtr basis = SymBasis::trivial();
    SymVec start;
    for (long long x : inst.d)
      start.push_back(SymReal::rational(basis, Rational(x)));
    j["path"] = path_to_json(basis, build_path(start, res.moves));
  }
  emit(opt, j);
  return 0;
}

int cmd_verify(const Options& opt) {
  using namespace lagtor::numlab;
  Json checks = Json::array();
  bool all = true;
  auto add = [&](const std::string& name, const Json& params, double observed,
                 double bound, bool pass) {
    checks.push_back(Json{{"check", name},
                          {"params", params},
                          {"observed", observed},
                          {"bound", bound},
                          {"pass", pass}});
    all = all && pass;
  };
  auto want = [&](const std::string& name) {
    return opt.check_name.empty() || opt.check_name == name;
  };
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  if (want("map_psi_symplectic")) {
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
      PsiPoint p{0.2 + unif(rng), unif(rng), 1.5 + unif(rng), unif(rng)};
      worst = std::max(worst, psi_symplectic_defect(p));
    }
    add("map_psi_symplectic", {{"points", 1000}}, worst, 1e-9, worst <= 1e-9);
  }
  if (want("map_psi_ms_symplectic")) {
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
      long long m = (long long)(unif(rng) * 5) - 2;
      double s = unif(rng) - 0.5;
      PsiPoint p{0.2 + unif(rng), unif(rng),
                 1.5 + 5 * double(std::llabs(m)) + unif(rng), unif(rng)};
      worst = std::max(worst, psi_ms_symplectic_defect(m, s, p));
    }
    add("map_psi_ms_symplectic", {{"points", 1000}}, worst, 1e-9,
        worst <= 1e-9);
  }
  if (want("step1_ball")) {
    double worst_excess = -1;
    for (double a : {0.5, 1.0, 2.0})
      for (double c : {0.5, 1.0, 2.0})
        for (double d : {0.5, 1.0, 2.0})
          for (int ti = 0; ti <= 10; ++ti) {
            double t = ti / 10.0;
            double mx = check_step1_ball(a, c, d, t, 500, opt.seed + ti);
            worst_excess = std::max(worst_excess, mx - (4 * a + c + 2 * d));
          }
    add("step1_ball", {{"grid", "{0.5,1,2}^3 x t=0..1"}}, worst_excess, 1e-9,
        worst_excess <= 1e-9);
  }
  if (want("area_line_annulus")) {
    double area = area_line_annulus(1.0, 2.0);
    double expect = 3 * std::numbers::pi;
    double rel = std::fabs(area - expect) / expect;
    add("area_line_annulus", {{"r_minus", 1.0}, {"r_plus", 2.0}}, rel, 1e-6,
        rel <= 1e-6);
  }
  if (want("isoperimetric")) {
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
      auto loop = LoopSample::random_trig(2, 5, opt.seed + i);
      auto r = isoperimetric_check(loop);
      worst = std::min(worst, r.slack / std::max(1.0, r.lhs));
    }
    auto circ = isoperimetric_check(LoopSample::circle(1.7));
    bool pass = worst >= -1e-6 && std::fabs(circ.slack) <= 1e-6 * circ.lhs;
    add("isoperimetric", {{"trials", 200}}, worst, -1e-6, pass);
  }
  if (want("e_curve_primitive")) {
    double worst = 0;
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0})
      for (long long l : {1LL, 2LL, 5LL}) {
        double d = 1.5;
        double got = primitive_integral(LoopSample::e_curve(t, l, d));
        worst = std::max(worst, std::fabs(got - d));
      }
    add("e_curve_primitive", {{"d", 1.5}}, worst, 1e-9, worst <= 1e-9);
  }

  Json j;
  j["format"] = kFormatTag;
  j["seed"] = opt.seed;
  j["checks"] = checks;
  j["all_pass"] = all;
  emit(opt, j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lagrangian product torus classification toolkit"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--a", opt.a, "first vector (comma rationals)");
    sub->add_option("--e", opt.e, "second vector (comma rationals)");
    sub->add_option("--b", opt.b, "ball capacity / size (rational)");
    sub->add_option("--c", opt.c, "lower bound c (shift)");
    sub->add_option("--d", opt.d, "shift vector d");
    sub->add_option("--s", opt.s, "perturbation vector (energy)");
    sub->add_option("--preset", opt.preset, "manifold preset");
    sub->add_option("--json", opt.json_file, "JSON input file");
    sub->add_option("--out", opt.out_file, "also write the output here");
    sub->add_option("--seed", opt.seed, "random seed");
    sub->add_option("--node-cap", opt.node_cap, "oracle node cap");
    sub->add_option("--check", opt.check_name, "run one named check");
    return sub;
  };

  std::map<std::string, std::function<int()>> actions;
  actions["invariants"] = [&] { return cmd_invariants(opt); };
  actions["equiv"] = [&] { return cmd_equiv(opt); };
  actions["energy"] = [&] { return cmd_energy(opt); };
  actions["clifford"] = [&] { return cmd_clifford(opt); };
  actions["obstruct"] = [&] { return cmd_obstruct(opt); };
  actions["classify-liouville"] = [&] {
    return cmd_classify(opt, Setting::LiouvilleTame);
  };
  actions["classify-aspherical"] = [&] {
    return cmd_classify(opt, Setting::AsphericalTameWithCapacity);
  };
  actions["path"] = [&] { return cmd_path(opt); };
  actions["certificate"] = [&] { return cmd_certificate(opt); };
  actions["check"] = [&] { return cmd_check(opt); };
  actions["shift"] = [&] { return cmd_shift(opt); };
  actions["oracle"] = [&] { return cmd_oracle(opt); };
  actions["verify"] = [&] { return cmd_verify(opt); };

  for (auto& [name, fn] : actions) add_common(app.add_subcommand(name));

  CLI11_PARSE(app, argc, argv);

  std::string chosen = app.get_subcommands().front()->get_name();
  try {
    return actions.at(chosen)();
  } catch (const Error& ex) {
    Json j{{"format", lagtor::kFormatTag}, {"error", ex.what()}};
    switch (ex.error_class()) {
      case ErrorClass::Input: j["class"] = "input"; break;
      case ErrorClass::Refine: j["class"] = "refine_needed"; break;
      case ErrorClass::Internal: j["class"] = "internal"; break;
    }
    std::cout << j.dump(2) << "\n";
    if (ex.error_class() == ErrorClass::Input) return 1;
    if (ex.error_class() == ErrorClass::Refine) return 2;
    return 3;
  } catch (const std::exception& ex) {
    std::cout << Json{{"format", lagtor::kFormatTag},
                      {"error", ex.what()},
                      {"class", "internal"}}
                     .dump(2)
              << "\n";
    return 3;
  }
}
