#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lagtor/intmat.hpp"
#include "lagtor/symreal.hpp"

namespace lagtor {

// Finitely generated subgroup of the SymReal line, i.e. an integer lattice
// of rational coefficient vectors, stored in canonical Hermite normal form.
// Two modules over the same basis are equal as subgroups iff their hnf rows
// are identical.
class ZModule {
public:
  ZModule() = default;

  const SymBasisPtr& basis() const { return basis_; }
  const std::vector<std::vector<Rational>>& hnf_rows() const { return rows_; }
  size_t rank() const { return rows_.size(); }

  // The i-th canonical basis element as a SymReal.
  SymReal basis_element(size_t i) const;

  // Element with the given integer coordinates in the canonical basis.
  SymReal element_from_coords(const IVec& coords) const;

  friend ZModule zmod_from_generators(const SymBasisPtr& basis,
                                      std::span<const SymReal> gens);

private:
  SymBasisPtr basis_;
  std::vector<std::vector<Rational>> rows_;
};

ZModule zmod_from_generators(const SymBasisPtr& basis,
                             std::span<const SymReal> gens);
ZModule zmod_from_generators(const std::vector<SymReal>& gens);

bool zmod_equal(const ZModule& a, const ZModule& b);
bool zmod_member(const SymReal& x, const ZModule& a);
size_t zmod_rank(const ZModule& a);

// Integer coordinates of x in the canonical basis, or nullopt.
std::optional<IVec> zmod_coords(const SymReal& x, const ZModule& a);

// gcd of the coordinate vector; x must be a nonzero member.
long long zmod_content(const SymReal& x, const ZModule& a);

// True iff the coordinate vector of x has content 1.
bool is_primitive(const SymReal& x, const ZModule& a);

// Largest submodule of `ambient` containing S with finite index:
// {x in ambient : n*x in S for some nonzero integer n}.
ZModule saturate(const ZModule& s, const ZModule& ambient);

// For x primitive in A, a complement L with <x> (+) L = A.
ZModule complement_split(const SymReal& x, const ZModule& a);

// For a saturated submodule S of A, a complement L with S (+) L = A.
ZModule complement_of_saturated(const ZModule& s, const ZModule& a);

// A small element of L that is primitive in G, with 0 < result < bound.
// Requires L a finite-index submodule of G with cyclic quotient (which is
// automatic when G is generated by L plus one element), rank >= 2.
// Subtractive reduction on a pair of basis elements chosen via the Smith
// form so intermediate elements stay primitive in G; a bounded shift scan
// handles the rank-2 case where the pair contains an imprimitive member.
SymReal small_primitive_element(const ZModule& l, const ZModule& g,
                                const SymReal& bound,
                                long long iteration_cap = 10000);

}  // namespace lagtor
