#include "lagtor/json_io.hpp"

#include <sstream>

namespace lagtor {

namespace {

const Json& expect(const Json& j, const char* field, const std::string& path) {
  if (!j.is_object() || !j.contains(field))
    throw InputError("missing field " + path + "/" + field);
  return j.at(field);
}

std::string expect_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw InputError("expected a string at " + path);
  return j.get<std::string>();
}

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  return Rational::parse(expect_string(j, path));
}

}  // namespace

Json basis_to_json(const SymBasisPtr& basis) {
  Json symbols = Json::array();
  for (const Symbol& s : basis->symbols()) {
    symbols.push_back(Json{{"name", s.name},
                           {"enclosure", Json::array({s.enclosure.lo.str(),
                                                      s.enclosure.hi.str()})}});
  }
  return Json{{"symbols", symbols}};
}

SymBasisPtr basis_from_json(const Json& j, const std::string& path) {
  const Json& symbols = expect(j, "symbols", path);
  if (!symbols.is_array() || symbols.empty())
    throw InputError("expected a nonempty array at " + path + "/symbols");
  std::vector<Symbol> out;
  for (size_t i = 0; i < symbols.size(); ++i) {
    std::string p = path + "/symbols/" + std::to_string(i);
    const Json& s = symbols.at(i);
    const Json& enc = expect(s, "enclosure", p);
    if (!enc.is_array() || enc.size() != 2)
      throw InputError("expected [lo, hi] at " + p + "/enclosure");
    out.push_back(Symbol{
        expect_string(expect(s, "name", p), p + "/name"),
        {rational_from_json(enc.at(0), p + "/enclosure/0"),
         rational_from_json(enc.at(1), p + "/enclosure/1")}});
  }
  return SymBasis::make(std::move(out));
}

Json coeffs_to_json(const SymReal& x) {
  Json arr = Json::array();
  for (const Rational& q : x.coeffs()) arr.push_back(q.str());
  return arr;
}

SymReal symreal_from_coeffs(const Json& j, const SymBasisPtr& basis,
                            const std::string& path) {
  if (!j.is_array()) throw InputError("expected a coefficient array at " + path);
  std::vector<Rational> c;
  for (size_t i = 0; i < j.size(); ++i)
    c.push_back(rational_from_json(j.at(i), path + "/" + std::to_string(i)));
  if (c.size() != basis->size())
    throw InputError("coefficient count mismatch at " + path);
  return SymReal(basis, std::move(c));
}

Json vec_to_json(const SymVec& v) {
  Json arr = Json::array();
  for (const SymReal& x : v) arr.push_back(coeffs_to_json(x));
  return arr;
}

SymVec vec_from_json(const Json& j, const SymBasisPtr& basis,
                     const std::string& path) {
  if (!j.is_array()) throw InputError("expected an array at " + path);
  SymVec v;
  for (size_t i = 0; i < j.size(); ++i)
    v.push_back(
        symreal_from_coeffs(j.at(i), basis, path + "/" + std::to_string(i)));
  return v;
}

Json torus_to_json(const TorusSpec& t) {
  Json j;
  j["format"] = kFormatTag;
  j["basis"] = basis_to_json(t.basis);
  j["components"] = vec_to_json(t.a);
  j["capacity"] = t.capacity ? coeffs_to_json(*t.capacity) : Json(nullptr);
  return j;
}

TorusSpec torus_from_json(const Json& j) {
  SymBasisPtr basis = basis_from_json(expect(j, "basis", ""), "/basis");
  SymVec a = vec_from_json(expect(j, "components", ""), basis, "/components");
  std::optional<SymReal> cap;
  if (j.contains("capacity") && !j.at("capacity").is_null())
    cap = symreal_from_coeffs(j.at("capacity"), basis, "/capacity");
  return TorusSpec::make(basis, std::move(a), std::move(cap));
}

Json zmodule_to_json(const ZModule& z) {
  Json rows = Json::array();
  for (const auto& row : z.hnf_rows()) {
    Json r = Json::array();
    for (const Rational& q : row) r.push_back(q.str());
    rows.push_back(r);
  }
  return Json{{"hnf", rows}, {"rank", z.rank()}};
}

Json invariants_to_json(const InvariantSet& inv) {
  Json j;
  j["ua"] = coeffs_to_json(inv.ua);
  j["m"] = inv.multiplicity;
  j["total"] = coeffs_to_json(inv.total);
  j["norm"] = coeffs_to_json(inv.norm);
  j["gamma"] = zmodule_to_json(inv.gamma);
  j["stripped"] = vec_to_json(inv.stripped);
  return j;
}

namespace {

const char* move_kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::P: return "P";
    case MoveKind::M: return "M";
    case MoveKind::I: return "I";
  }
  return "?";
}

MoveKind move_kind_parse(const std::string& s, const std::string& path) {
  if (s == "P") return MoveKind::P;
  if (s == "M") return MoveKind::M;
  if (s == "I") return MoveKind::I;
  throw InputError("unknown move kind at " + path);
}

}  // namespace

Json path_to_json(const SymBasisPtr& basis, const MovePath& p) {
  Json j;
  j["format"] = kFormatTag;
  j["basis"] = basis_to_json(basis);
  j["start"] = vec_to_json(p.start);
  Json moves = Json::array();
  for (const Move& m : p.moves)
    moves.push_back(
        Json{{"kind", move_kind_name(m.kind)}, {"i", m.i}, {"j", m.j}});
  j["moves"] = moves;
  j["end"] = vec_to_json(p.end());
  return j;
}

ParsedPath path_from_json(const Json& j) {
  ParsedPath p;
  p.basis = basis_from_json(expect(j, "basis", ""), "/basis");
  p.start = vec_from_json(expect(j, "start", ""), p.basis, "/start");
  const Json& moves = expect(j, "moves", "");
  if (!moves.is_array()) throw InputError("expected an array at /moves");
  for (size_t i = 0; i < moves.size(); ++i) {
    std::string path = "/moves/" + std::to_string(i);
    const Json& m = moves.at(i);
    const Json& iv = expect(m, "i", path);
    const Json& jv = expect(m, "j", path);
    if (!iv.is_number_integer() || !jv.is_number_integer())
      throw InputError("move indices must be integers at " + path);
    p.moves.push_back(
        {move_kind_parse(expect_string(expect(m, "kind", path), path + "/kind"),
                         path + "/kind"),
         iv.get<int>(), jv.get<int>()});
  }
  if (j.contains("end") && !j.at("end").is_null())
    p.end = vec_from_json(j.at("end"), p.basis, "/end");
  return p;
}

Json cert_to_json(const IsotopyCertificate& c) {
  Json j;
  j["format"] = kFormatTag;
  j["basis"] = basis_to_json(c.basis);
  Json steps = Json::array();
  for (const CertStep& s : c.steps) {
    Json st;
    if (s.kind == CertStep::UnitaryPermutation) {
      st["kind"] = "unitary_permutation";
      st["perm"] = s.perm;
    } else {
      st["kind"] = "step2";
      st["i"] = s.i;
      st["j"] = s.j;
      st["direction"] = s.add ? "add" : "subtract";
    }
    st["from"] = vec_to_json(s.from);
    st["to"] = vec_to_json(s.to);
    st["ball"] = coeffs_to_json(s.ball);
    steps.push_back(std::move(st));
  }
  j["steps"] = steps;
  j["overall_ball"] = coeffs_to_json(c.overall_ball);
  return j;
}

IsotopyCertificate cert_from_json(const Json& j) {
  IsotopyCertificate c;
  c.basis = basis_from_json(expect(j, "basis", ""), "/basis");
  const Json& steps = expect(j, "steps", "");
  if (!steps.is_array()) throw InputError("expected an array at /steps");
  for (size_t i = 0; i < steps.size(); ++i) {
    std::string path = "/steps/" + std::to_string(i);
    const Json& sj = steps.at(i);
    CertStep s;
    std::string kind =
        expect_string(expect(sj, "kind", path), path + "/kind");
    if (kind == "unitary_permutation") {
      s.kind = CertStep::UnitaryPermutation;
      const Json& perm = expect(sj, "perm", path);
      if (!perm.is_array())
        throw InputError("expected an array at " + path + "/perm");
      for (const Json& v : perm) {
        if (!v.is_number_integer())
          throw InputError("permutation entries must be integers at " + path);
        s.perm.push_back(v.get<int>());
      }
    } else if (kind == "step2") {
      s.kind = CertStep::Step2Apply;
      s.i = expect(sj, "i", path).get<int>();
      s.j = expect(sj, "j", path).get<int>();
      std::string dir =
          expect_string(expect(sj, "direction", path), path + "/direction");
      if (dir != "add" && dir != "subtract")
        throw InputError("unknown direction at " + path + "/direction");
      s.add = dir == "add";
    } else {
      throw InputError("unknown step kind at " + path + "/kind");
    }
    s.from = vec_from_json(expect(sj, "from", path), c.basis, path + "/from");
    s.to = vec_from_json(expect(sj, "to", path), c.basis, path + "/to");
    s.ball =
        symreal_from_coeffs(expect(sj, "ball", path), c.basis, path + "/ball");
    c.steps.push_back(std::move(s));
  }
  c.overall_ball = symreal_from_coeffs(expect(j, "overall_ball", ""), c.basis,
                                       "/overall_ball");
  return c;
}

Json manifold_to_json(const ManifoldDescriptor& m) {
  Json j;
  j["format"] = kFormatTag;
  j["basis"] = basis_to_json(m.basis);
  Json gens = Json::array();
  for (const PiTwoGenerator& g : m.generators)
    gens.push_back(Json{{"sigma", coeffs_to_json(g.sigma)}, {"c1", g.c1}});
  j["generators"] = gens;
  j["s0"] = m.s0_index ? Json(*m.s0_index) : Json(nullptr);
  return j;
}

ManifoldDescriptor manifold_from_json(const Json& j) {
  ManifoldDescriptor m;
  m.basis = basis_from_json(expect(j, "basis", ""), "/basis");
  const Json& gens = expect(j, "generators", "");
  if (!gens.is_array()) throw InputError("expected an array at /generators");
  for (size_t i = 0; i < gens.size(); ++i) {
    std::string path = "/generators/" + std::to_string(i);
    const Json& g = gens.at(i);
    const Json& c1 = expect(g, "c1", path);
    if (!c1.is_number_integer())
      throw InputError("c1 must be an integer at " + path + "/c1");
    m.generators.push_back(
        {symreal_from_coeffs(expect(g, "sigma", path), m.basis,
                             path + "/sigma"),
         c1.get<long long>()});
  }
  if (j.contains("s0") && !j.at("s0").is_null()) {
    if (!j.at("s0").is_number_integer())
      throw InputError("s0 must be an index at /s0");
    long long idx = j.at("s0").get<long long>();
    if (idx < 0 || size_t(idx) >= m.generators.size())
      throw InputError("s0 index out of range at /s0");
    m.s0_index = size_t(idx);
  }
  return m;
}

Json check_report_to_json(const CheckReport& r) {
  Json j;
  j["format"] = kFormatTag;
  j["ok"] = r.ok;
  j["failure"] = check_failure_name(r.failure);
  j["step_index"] = r.step_index;
  j["detail"] = r.detail;
  return j;
}

std::vector<Rational> parse_rational_list(const std::string& s) {
  std::vector<Rational> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw InputError("empty entry in vector literal");
    out.push_back(Rational::parse(item));
  }
  if (out.empty()) throw InputError("empty vector literal");
  return out;
}

}  // namespace lagtor
