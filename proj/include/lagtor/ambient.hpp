#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lagtor/zmodule.hpp"

namespace lagtor {

// Image of one generator of pi_2(M) under the area homomorphism and the
// first Chern class.
struct PiTwoGenerator {
  SymReal sigma;
  long long c1 = 0;
};

// pi_2 data of the ambient manifold; an empty generator list models the
// symplectically aspherical case. s0_index optionally selects a
// distinguished sphere class S0 (0-based into generators).
struct ManifoldDescriptor {
  SymBasisPtr basis;
  std::vector<PiTwoGenerator> generators;
  std::optional<size_t> s0_index;
};

// sigma(S) - c1(S) * a.
SymReal sigma_a(const PiTwoGenerator& g, const SymReal& a);

// Image of sigma_a over all generators, or over S0 alone.
ZModule group_Ga(const ManifoldDescriptor& m, const SymReal& a,
                 bool restrict_to_s0);

// rank sigma(pi_2) == 1 and c1 not proportional to sigma.
bool is_special(const ManifoldDescriptor& m);

enum class ShiftVerdict { EquivalentForSmallA, NotImplied };

struct ShiftResult {
  ShiftVerdict verdict;
  std::string diagnostic;
};

// Decides the membership conditions of the shift theorem with the chart
// parameter treated as an indeterminate: d_j - e_j must lie in G_a(S0)
// (special manifolds) or G_a (otherwise) identically in a. A positive
// verdict means the tori T(a,...,a,a+d_1,...) and T(a,...,a,a+e_1,...) are
// Hamiltonian isotopic for all sufficiently small a > 0; the threshold
// itself exists but is not computed.
ShiftResult shift_equiv(const ManifoldDescriptor& m, const SymReal& c,
                        const std::vector<SymReal>& d,
                        const std::vector<SymReal>& e);

// Preset descriptors. s2xs2 lists the two factor classes and S0 = (1,-1).
ManifoldDescriptor preset_s2xs2(const Rational& v1, const Rational& v2);
ManifoldDescriptor preset_aspherical();

}  // namespace lagtor
