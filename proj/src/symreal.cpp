#include "lagtor/symreal.hpp"

#include <algorithm>
#include <set>

namespace lagtor {

std::shared_ptr<const SymBasis> SymBasis::make(std::vector<Symbol> symbols) {
  if (symbols.empty())
    throw InputError("a symbol basis needs at least the constant symbol");
  const Symbol& one = symbols.front();
  if (!(one.enclosure.lo == Rational(1)) || !(one.enclosure.hi == Rational(1)))
    throw InputError("first symbol must be the constant 1 with enclosure [1,1]");
  std::set<std::string> names;
  for (const Symbol& s : symbols) {
    if (!names.insert(s.name).second)
      throw InputError("duplicate symbol name: " + s.name);
    if (s.enclosure.lo > s.enclosure.hi)
      throw InputError("empty enclosure for symbol " + s.name);
  }
  return std::shared_ptr<const SymBasis>(new SymBasis(std::move(symbols)));
}

std::shared_ptr<const SymBasis> SymBasis::trivial() {
  return make({Symbol{"1", {Rational(1), Rational(1)}}});
}

bool SymBasis::same_as(const SymBasis& other) const {
  if (this == &other) return true;
  if (symbols_.size() != other.symbols_.size()) return false;
  for (size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].name != other.symbols_[i].name) return false;
    if (!(symbols_[i].enclosure.lo == other.symbols_[i].enclosure.lo)) return false;
    if (!(symbols_[i].enclosure.hi == other.symbols_[i].enclosure.hi)) return false;
  }
  return true;
}

void require_same_basis(const SymBasisPtr& a, const SymBasisPtr& b) {
  if (!a || !b) throw BasisMismatch("value without a basis");
  if (a.get() == b.get()) return;
  if (!a->same_as(*b)) throw BasisMismatch("operands use different symbol bases");
}

void require_same_basis(const SymReal& x, const SymReal& y) {
  require_same_basis(x.basis(), y.basis());
}

SymReal::SymReal(SymBasisPtr basis, std::vector<Rational> coeffs)
    : basis_(std::move(basis)), c_(std::move(coeffs)) {
  if (!basis_) throw InputError("SymReal without a basis");
  if (c_.size() != basis_->size())
    throw DimensionMismatch("coefficient count does not match basis size");
}

SymReal SymReal::rational(const SymBasisPtr& basis, const Rational& q) {
  if (!basis) throw InputError("SymReal without a basis");
  std::vector<Rational> c(basis->size(), Rational(0));
  c[0] = q;
  return SymReal(basis, std::move(c));
}

bool SymReal::is_zero() const {
  for (const Rational& q : c_)
    if (!q.is_zero()) return false;
  return true;
}

bool SymReal::exact_eq(const SymReal& o) const {
  require_same_basis(*this, o);
  return c_ == o.c_;
}

RatInterval SymReal::enclosure() const {
  RatInterval acc{Rational(0), Rational(0)};
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    acc = acc + basis_->symbol(i).enclosure.scaled(c_[i]);
  }
  return acc;
}

SymReal SymReal::operator+(const SymReal& o) const {
  require_same_basis(*this, o);
  std::vector<Rational> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] + o.c_[i];
  return SymReal(basis_, std::move(c));
}

SymReal SymReal::operator-(const SymReal& o) const {
  require_same_basis(*this, o);
  std::vector<Rational> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] - o.c_[i];
  return SymReal(basis_, std::move(c));
}

SymReal SymReal::operator-() const {
  std::vector<Rational> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
  return SymReal(basis_, std::move(c));
}

SymReal SymReal::scaled(const Rational& q) const {
  std::vector<Rational> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] * q;
  return SymReal(basis_, std::move(c));
}

double SymReal::to_double() const {
  RatInterval e = enclosure();
  return (e.lo.to_double() + e.hi.to_double()) / 2.0;
}

std::string SymReal::str() const {
  std::string s;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!first) s += " + ";
    s += c_[i].str();
    if (i > 0) s += "*" + basis_->symbol(i).name;
    first = false;
  }
  return first ? "0" : s;
}

SymReal sym_arith(ArithOp op, const SymReal& x, const SymReal& y) {
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Sub: return x - y;
    default: throw InputError("int_scale needs an integer first operand");
  }
}

SymReal sym_arith(ArithOp op, long long k, const SymReal& x) {
  if (op != ArithOp::IntScale)
    throw InputError("integer operand only valid for int_scale");
  return x.scaled(Rational(k));
}

Ordering sym_cmp(const SymReal& x, const SymReal& y) {
  require_same_basis(x, y);
  SymReal d = x - y;
  if (d.is_zero()) return Ordering::Equal;
  RatInterval e = d.enclosure();
  if (e.lo.sign() > 0) return Ordering::Greater;
  if (e.hi.sign() < 0) return Ordering::Less;
  throw RefineNeeded("enclosure of (" + x.str() + ") - (" + y.str() +
                     ") straddles 0; tighter symbol enclosures needed");
}

int sym_sign(const SymReal& x) {
  switch (sym_cmp(x, SymReal::zero(x.basis()))) {
    case Ordering::Less: return -1;
    case Ordering::Equal: return 0;
    default: return 1;
  }
}

bool sym_less(const SymReal& x, const SymReal& y) {
  return sym_cmp(x, y) == Ordering::Less;
}

bool sym_leq(const SymReal& x, const SymReal& y) {
  return sym_cmp(x, y) != Ordering::Greater;
}

SymReal sym_min(const std::vector<SymReal>& xs) {
  if (xs.empty()) throw InputError("min of empty vector");
  SymReal best = xs[0];
  for (size_t i = 1; i < xs.size(); ++i)
    if (sym_less(xs[i], best)) best = xs[i];
  return best;
}

std::vector<SymReal> sym_sorted(std::vector<SymReal> xs) {
  std::sort(xs.begin(), xs.end(),
            [](const SymReal& a, const SymReal& b) { return sym_less(a, b); });
  return xs;
}

long long quot_into_half_open(const SymReal& x, const SymReal& m) {
  if (sym_sign(m) <= 0) throw InternalError("modulus must be positive");
  // Find t with x - t*m > 0 and x - (t+1)*m <= 0 by doubling then bisecting.
  auto above = [&](long long t) {
    // true iff x - t*m > 0
    return sym_sign(x - m.scaled(Rational(t))) > 0;
  };
  long long lo, hi;  // invariant: above(lo), !above(hi)
  if (above(0)) {
    lo = 0;
    hi = 1;
    while (above(hi)) {
      lo = hi;
      if (hi > (1LL << 40)) throw IterationLimit("modular reduction diverged");
      hi *= 2;
    }
  } else {
    hi = 0;
    lo = -1;
    while (!above(lo)) {
      hi = lo;
      if (lo < -(1LL << 40)) throw IterationLimit("modular reduction diverged");
      lo *= 2;
    }
  }
  while (hi - lo > 1) {
    long long mid = lo + (hi - lo) / 2;
    if (above(mid)) lo = mid; else hi = mid;
  }
  return lo;
}

SymReal mod_into_half_open(const SymReal& x, const SymReal& m) {
  long long t = quot_into_half_open(x, m);
  return x - m.scaled(Rational(t));
}

SymReal mod_into_open(const SymReal& x, const SymReal& m) {
  SymReal r = mod_into_half_open(x, m);
  if (r.exact_eq(m))
    throw InternalError("exact multiple has no representative in (0, m)");
  return r;
}

}  // namespace lagtor
