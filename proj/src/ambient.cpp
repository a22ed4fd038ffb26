#include "lagtor/ambient.hpp"

namespace lagtor {

SymReal sigma_a(const PiTwoGenerator& g, const SymReal& a) {
  return g.sigma - a.scaled(Rational(g.c1));
}

ZModule group_Ga(const ManifoldDescriptor& m, const SymReal& a,
                 bool restrict_to_s0) {
  if (sym_sign(a) <= 0) throw InputError("the parameter a must be positive");
  std::vector<SymReal> gens;
  if (restrict_to_s0) {
    if (!m.s0_index) throw InputError("no S0 selected in the descriptor");
    if (*m.s0_index >= m.generators.size())
      throw InputError("S0 index out of range");
    gens.push_back(sigma_a(m.generators[*m.s0_index], a));
  } else {
    for (const PiTwoGenerator& g : m.generators)
      gens.push_back(sigma_a(g, a));
  }
  return zmod_from_generators(m.basis, gens);
}

bool is_special(const ManifoldDescriptor& m) {
  std::vector<SymReal> sigmas;
  for (const PiTwoGenerator& g : m.generators) sigmas.push_back(g.sigma);
  ZModule s = zmod_from_generators(m.basis, sigmas);
  if (s.rank() != 1) return false;

  // proportionality: a single rational lambda with c1 = lambda * sigma
  // on every generator
  std::optional<Rational> lambda;
  for (const PiTwoGenerator& g : m.generators) {
    if (g.c1 == 0) continue;
    if (g.sigma.is_zero()) return true;  // c1 != 0 on a sigma-null class
    // lambda * sigma must be the rational c1, so sigma must be rational
    const std::vector<Rational>& c = g.sigma.coeffs();
    for (size_t t = 1; t < c.size(); ++t)
      if (!c[t].is_zero()) return true;  // irrational sigma, integral c1
    Rational cand = Rational(g.c1) / c[0];
    if (lambda && !(*lambda == cand)) return true;
    lambda = cand;
  }
  if (!lambda) return false;  // c1 vanishes identically: proportional
  for (const PiTwoGenerator& g : m.generators) {
    SymReal lhs = SymReal::rational(m.basis, Rational(g.c1));
    if (!lhs.exact_eq(g.sigma.scaled(*lambda))) return true;
  }
  return false;  // exactly proportional
}

namespace {

// Extends the basis by a fresh indeterminate for the chart parameter a and
// re-embeds a SymReal into it.
SymBasisPtr extend_with_parameter(const SymBasisPtr& basis,
                                  std::string* name_out) {
  std::vector<Symbol> symbols = basis->symbols();
  std::string name = "a";
  bool taken = true;
  while (taken) {
    taken = false;
    for (const Symbol& s : symbols)
      if (s.name == name) {
        name += "_";
        taken = true;
      }
  }
  symbols.push_back(Symbol{name, {Rational(0), Rational(1)}});
  *name_out = name;
  return SymBasis::make(std::move(symbols));
}

SymReal embed(const SymReal& x, const SymBasisPtr& wide) {
  std::vector<Rational> c = x.coeffs();
  c.resize(wide->size(), Rational(0));
  return SymReal(wide, std::move(c));
}

}  // namespace

ShiftResult shift_equiv(const ManifoldDescriptor& m, const SymReal& c,
                        const std::vector<SymReal>& d,
                        const std::vector<SymReal>& e) {
  if (d.size() != e.size() || d.empty())
    throw DimensionMismatch("shift vectors must have equal positive length");
  if (sym_sign(c) <= 0) throw InputError("c must be positive");
  for (const SymReal& x : d)
    if (sym_cmp(x, c) == Ordering::Less)
      throw InputError("an entry of d is below c");
  for (const SymReal& x : e)
    if (sym_cmp(x, c) == Ordering::Less)
      throw InputError("an entry of e is below c");

  bool special = is_special(m);
  std::vector<PiTwoGenerator> used;
  if (special) {
    if (!m.s0_index)
      throw InputError("special manifolds need a distinguished S0");
    used.push_back(m.generators[*m.s0_index]);
  } else {
    used = m.generators;
  }

  bool needs_parameter = false;
  for (const PiTwoGenerator& g : used)
    if (g.c1 != 0) needs_parameter = true;

  SymBasisPtr wide = m.basis;
  std::string pname;
  std::vector<SymReal> gens;
  if (needs_parameter) {
    wide = extend_with_parameter(m.basis, &pname);
    size_t a_pos = wide->size() - 1;
    for (const PiTwoGenerator& g : used) {
      std::vector<Rational> coeffs = g.sigma.coeffs();
      coeffs.resize(wide->size(), Rational(0));
      coeffs[a_pos] = coeffs[a_pos] - Rational(g.c1);
      gens.emplace_back(wide, std::move(coeffs));
    }
  } else {
    for (const PiTwoGenerator& g : used) gens.push_back(g.sigma);
  }
  ZModule group = zmod_from_generators(wide, gens);

  for (size_t t = 0; t < d.size(); ++t) {
    SymReal diff = d[t] - e[t];
    SymReal probe = needs_parameter ? embed(diff, wide) : diff;
    if (!zmod_member(probe, group)) {
      std::string why = "d_" + std::to_string(t + 1) + " - e_" +
                        std::to_string(t + 1) + " is not in " +
                        (special ? "G_a(S0)" : "G_a");
      if (needs_parameter)
        why += " for the indeterminate chart parameter " + pname;
      return {ShiftVerdict::NotImplied, why};
    }
  }
  return {ShiftVerdict::EquivalentForSmallA,
          special ? "all differences lie in G_a(S0)"
                  : "all differences lie in G_a"};
}

ManifoldDescriptor preset_s2xs2(const Rational& v1, const Rational& v2) {
  SymBasisPtr basis = SymBasis::trivial();
  ManifoldDescriptor m;
  m.basis = basis;
  m.generators = {
      {SymReal::rational(basis, v1), 2},
      {SymReal::rational(basis, v2), 2},
      {SymReal::rational(basis, v1 - v2), 0},  // S0 = (1, -1)
  };
  m.s0_index = 2;
  return m;
}

ManifoldDescriptor preset_aspherical() {
  ManifoldDescriptor m;
  m.basis = SymBasis::trivial();
  return m;
}

}  // namespace lagtor
