#include "lagtor/invariants.hpp"

#include <algorithm>

namespace lagtor {

TorusSpec TorusSpec::make(SymBasisPtr basis, std::vector<SymReal> a,
                          std::optional<SymReal> capacity) {
  if (a.empty()) throw InputError("a torus needs at least one component");
  for (const SymReal& x : a) {
    require_same_basis(x.basis(), basis);
    if (sym_sign(x) <= 0)
      throw InputError("torus components must be positive");
  }
  TorusSpec t{std::move(basis), std::move(a), std::move(capacity)};
  if (t.capacity) {
    require_same_basis(t.capacity->basis(), t.basis);
    if (sym_cmp(t.total(), *t.capacity) == Ordering::Greater)
      throw InputError("torus does not fit in the chart: |a| > b");
  }
  return t;
}

SymReal TorusSpec::total() const {
  SymReal s = SymReal::zero(basis);
  for (const SymReal& x : a) s += x;
  return s;
}

InvariantSet torus_invariants(const TorusSpec& t) {
  InvariantSet inv;
  inv.ua = sym_min(t.a);
  inv.multiplicity = 0;
  std::vector<SymReal> diffs, stripped;
  for (const SymReal& x : t.a) {
    SymReal d = x - inv.ua;
    diffs.push_back(d);
    if (d.is_zero())
      ++inv.multiplicity;
    else
      stripped.push_back(d);
  }
  inv.total = t.total();
  inv.norm = inv.total + inv.ua;
  inv.gamma = zmod_from_generators(t.basis, diffs);
  inv.stripped = sym_sorted(std::move(stripped));
  return inv;
}

bool equiv(const TorusSpec& t, const TorusSpec& u) {
  require_same_basis(t.basis, u.basis);
  if (t.dim() != u.dim())
    throw DimensionMismatch("equiv needs tori of equal dimension");
  InvariantSet a = torus_invariants(t), b = torus_invariants(u);
  return a.ua.exact_eq(b.ua) && a.multiplicity == b.multiplicity &&
         zmod_equal(a.gamma, b.gamma);
}

SymReal displacement_energy(const TorusSpec& t) {
  if (!t.capacity)
    throw InputError("displacement energy needs a chart capacity");
  InvariantSet inv = torus_invariants(t);
  if (sym_cmp(inv.norm, *t.capacity) == Ordering::Greater)
    throw CapacityTooSmall("||a|| exceeds the chart capacity");
  return inv.ua;
}

SymReal displacement_energy_perturbed(const TorusSpec& t,
                                      const std::vector<SymReal>& s) {
  if (s.size() != t.dim())
    throw DimensionMismatch("perturbation length mismatch");
  std::vector<SymReal> shifted;
  shifted.reserve(t.dim());
  for (size_t i = 0; i < t.dim(); ++i) shifted.push_back(t.a[i] + s[i]);
  TorusSpec moved = TorusSpec::make(t.basis, std::move(shifted), t.capacity);
  return displacement_energy(moved);
}

TorusSpec clifford_lift(const TorusSpec& t, const SymReal& b) {
  require_same_basis(t.basis, b.basis());
  SymReal last = b - t.total();
  if (sym_sign(last) <= 0)
    throw InputError("clifford_lift needs |a| < b strictly");
  std::vector<SymReal> lifted = t.a;
  lifted.push_back(last);
  return TorusSpec::make(t.basis, std::move(lifted));
}

namespace {

bool is_permutation_of(const TorusSpec& t, const TorusSpec& u) {
  std::vector<SymReal> a = sym_sorted(t.a), b = sym_sorted(u.a);
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].exact_eq(b[i])) return false;
  return true;
}

}  // namespace

BallVerdict obstruct_ball(const TorusSpec& t, const TorusSpec& u,
                          const SymReal& b) {
  require_same_basis(t.basis, u.basis);
  if (t.dim() != u.dim())
    throw DimensionMismatch("obstruct_ball needs tori of equal dimension");
  InvariantSet it = torus_invariants(t), iu = torus_invariants(u);
  SymReal max_norm =
      sym_cmp(it.norm, iu.norm) == Ordering::Less ? iu.norm : it.norm;

  // Permutations are isotopic already in B(|a|).
  if (is_permutation_of(t, u) && sym_leq(it.total, b))
    return BallVerdict::CertifiablyIsotopic;
  if (sym_less(b, max_norm) && !it.total.exact_eq(iu.total))
    return BallVerdict::Obstructed;
  if (sym_leq(max_norm, b) && equiv(t, u))
    return BallVerdict::CertifiablyIsotopic;
  return BallVerdict::Unknown;
}

ClassifyVerdict classify(const TorusSpec& t, const TorusSpec& u,
                         Setting setting) {
  require_same_basis(t.basis, u.basis);
  if (t.dim() != u.dim())
    throw DimensionMismatch("classify needs tori of equal dimension");
  if (setting == Setting::LiouvilleTame)
    return equiv(t, u) ? ClassifyVerdict::Equivalent
                       : ClassifyVerdict::Distinct;
  if (!t.capacity || !u.capacity)
    throw InputError("the aspherical setting needs chart capacities");
  InvariantSet a = torus_invariants(t), b = torus_invariants(u);
  if (sym_cmp(a.norm, *t.capacity) == Ordering::Greater ||
      sym_cmp(b.norm, *u.capacity) == Ordering::Greater)
    throw CapacityTooSmall("||a|| exceeds a chart capacity");
  bool same = a.ua.exact_eq(b.ua) && a.multiplicity == b.multiplicity &&
              zmod_equal(a.gamma, b.gamma);
  return same ? ClassifyVerdict::InvariantsAgree : ClassifyVerdict::Distinct;
}

}  // namespace lagtor
