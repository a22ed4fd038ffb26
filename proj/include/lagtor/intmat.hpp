#pragma once

#include <cstdint>
#include <vector>

#include "lagtor/errors.hpp"

namespace lagtor {

using IVec = std::vector<long long>;
using IMat = std::vector<IVec>;  // row major

long long checked_mul(long long a, long long b);
long long checked_add(long long a, long long b);

IMat identity_matrix(size_t n);
IMat mat_mul(const IMat& a, const IMat& b);
IVec mat_apply(const IMat& a, const IVec& v);
bool mat_eq(const IMat& a, const IMat& b);

// Determinant by fraction-free elimination.
long long mat_det(IMat m);

// Inverse of a matrix with determinant +-1; entries are integers.
IMat inverse_unimodular(const IMat& m);

// Canonical row-style Hermite normal form: echelon with increasing pivot
// columns, positive pivots, entries above each pivot reduced into
// [0, pivot). Zero rows dropped.
IMat hnf(IMat m);

// As hnf(), but also returns a square unimodular T with T * input = result
// padded with the zero rows (result.size() == input.size()).
struct HnfWithTransform {
  IMat h;        // full height, zero rows at the bottom
  IMat t;        // unimodular, t * input == h
  size_t rank;
};
HnfWithTransform hnf_with_transform(IMat m);

// Smith normal form U * M * V = D with U, V unimodular and D diagonal,
// nonzero entries first, each dividing the next.
struct SmithResult {
  IMat u, d, v;
  size_t rank;
};
SmithResult smith(IMat m);

}  // namespace lagtor
