#pragma once

#include <optional>
#include <vector>

#include "lagtor/zmodule.hpp"

namespace lagtor {

// Product torus T(a_1) x ... x T(a_n), optionally remembered together with
// the capacity b of the chart ball it sits in.
struct TorusSpec {
  SymBasisPtr basis;
  std::vector<SymReal> a;
  std::optional<SymReal> capacity;

  // Certifies positivity of each component and, when a capacity is
  // present, |a| <= b (the torus sits on the boundary of B^{2n}(|a|)).
  static TorusSpec make(SymBasisPtr basis, std::vector<SymReal> a,
                        std::optional<SymReal> capacity = std::nullopt);

  size_t dim() const { return a.size(); }
  SymReal total() const;
};

struct InvariantSet {
  SymReal ua;            // min component
  size_t multiplicity;   // number of minimal components
  SymReal total;         // |a|
  SymReal norm;          // ||a|| = |a| + ua
  ZModule gamma;         // subgroup generated by the a_i - ua
  std::vector<SymReal> stripped;  // sorted a_i - ua over non-minimal i
};

InvariantSet torus_invariants(const TorusSpec& t);

// ua = ua', m = m', Gamma = Gamma'.
bool equiv(const TorusSpec& t, const TorusSpec& u);

// e(T(a)) = ua, valid when ||a|| <= b. Throws CapacityTooSmall otherwise.
SymReal displacement_energy(const TorusSpec& t);

// e(T(a+s)) = min_i(a_i + s_i); requires ||a+s|| <= b.
SymReal displacement_energy_perturbed(const TorusSpec& t,
                                      const std::vector<SymReal>& s);

// The (n+1)-component vector (a_1, ..., a_n, b - |a|) of the generalized
// Clifford torus in CP^n(b); requires |a| < b strictly.
TorusSpec clifford_lift(const TorusSpec& t, const SymReal& b);

enum class BallVerdict { Obstructed, CertifiablyIsotopic, Unknown };

BallVerdict obstruct_ball(const TorusSpec& t, const TorusSpec& u,
                          const SymReal& b);

enum class Setting { LiouvilleTame, AsphericalTameWithCapacity };
enum class ClassifyVerdict { Equivalent, Distinct, InvariantsAgree };

ClassifyVerdict classify(const TorusSpec& t, const TorusSpec& u,
                         Setting setting);

}  // namespace lagtor
