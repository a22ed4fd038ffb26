#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lagtor/rational.hpp"

namespace lagtor {

struct Symbol {
  std::string name;
  RatInterval enclosure;
};

// Ordered list of Q-linearly independent real symbols, each with a
// rational interval enclosure. Independence is a contract of the input,
// not something we can verify. The first symbol is always the constant 1
// with enclosure [1,1].
class SymBasis {
public:
  static std::shared_ptr<const SymBasis> make(std::vector<Symbol> symbols);

  // Basis consisting of the constant symbol only.
  static std::shared_ptr<const SymBasis> trivial();

  size_t size() const { return symbols_.size(); }
  const Symbol& symbol(size_t i) const { return symbols_[i]; }
  const std::vector<Symbol>& symbols() const { return symbols_; }

  bool same_as(const SymBasis& other) const;

private:
  explicit SymBasis(std::vector<Symbol> symbols)
      : symbols_(std::move(symbols)) {}
  std::vector<Symbol> symbols_;
};

using SymBasisPtr = std::shared_ptr<const SymBasis>;

class SymReal;
using SymVec = std::vector<SymReal>;

enum class Ordering { Less, Equal, Greater };

// Exact element of the Q-vector space spanned by the basis symbols:
// a rational coefficient per symbol.
class SymReal {
public:
  SymReal() = default;
  SymReal(SymBasisPtr basis, std::vector<Rational> coeffs);

  // The rational q, i.e. q times the constant symbol.
  static SymReal rational(const SymBasisPtr& basis, const Rational& q);
  static SymReal zero(const SymBasisPtr& basis) {
    return rational(basis, Rational(0));
  }

  const SymBasisPtr& basis() const { return basis_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  // Exact equality of coefficient vectors (requires compatible bases).
  bool exact_eq(const SymReal& o) const;

  RatInterval enclosure() const;

  SymReal operator+(const SymReal& o) const;
  SymReal operator-(const SymReal& o) const;
  SymReal operator-() const;
  SymReal scaled(const Rational& c) const;
  SymReal& operator+=(const SymReal& o) { return *this = *this + o; }
  SymReal& operator-=(const SymReal& o) { return *this = *this - o; }

  double to_double() const;
  std::string str() const;

private:
  SymBasisPtr basis_;
  std::vector<Rational> c_;
};

void require_same_basis(const SymReal& x, const SymReal& y);
void require_same_basis(const SymBasisPtr& a, const SymBasisPtr& b);

enum class ArithOp { Add, Sub, IntScale };

// Spec surface: add/sub take two SymReals; int_scale scales x by an integer.
SymReal sym_arith(ArithOp op, const SymReal& x, const SymReal& y);
SymReal sym_arith(ArithOp op, long long k, const SymReal& x);

// Equal iff the coefficient vectors are identical; otherwise the sign of
// x - y certified from enclosure arithmetic. Throws RefineNeeded when the
// enclosure of a nonzero difference straddles 0.
Ordering sym_cmp(const SymReal& x, const SymReal& y);

// sign of x as a certified comparison against zero
int sym_sign(const SymReal& x);

bool sym_less(const SymReal& x, const SymReal& y);
bool sym_leq(const SymReal& x, const SymReal& y);

// Smallest element and sorted copies under the certified order.
SymReal sym_min(const std::vector<SymReal>& xs);
std::vector<SymReal> sym_sorted(std::vector<SymReal> xs);

// The integer t with x - t*m in (0, m]; requires m > 0 certified.
// Found by certified binary search on t, no interval division involved.
long long quot_into_half_open(const SymReal& x, const SymReal& m);

// x reduced into (0, m] modulo m.
SymReal mod_into_half_open(const SymReal& x, const SymReal& m);

// x reduced into (0, m); throws InternalError if x is an exact multiple.
SymReal mod_into_open(const SymReal& x, const SymReal& m);

}  // namespace lagtor
