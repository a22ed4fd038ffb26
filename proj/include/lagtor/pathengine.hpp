#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lagtor/glzwords.hpp"
#include "lagtor/invariants.hpp"

namespace lagtor {

// P adds component j to component i, M subtracts it, I swaps the two.
enum class MoveKind { P, M, I };

struct Move {
  MoveKind kind;
  int i = 0;  // 1-based
  int j = 0;

  friend bool operator==(const Move&, const Move&) = default;
};

// Applies one move; M must leave the vector positive.
SymVec apply_move(const SymVec& v, const Move& m);

// Admissible path: start plus moves, with all intermediate states cached.
// Every state is componentwise positive and generates the same subgroup as
// the start.
struct MovePath {
  SymVec start;
  std::vector<Move> moves;
  std::vector<SymVec> states;  // states[0] == start, one more per move

  const SymVec& end() const { return states.back(); }
  size_t length() const { return moves.size(); }
};

// Builds the path and certifies positivity of every state.
MovePath build_path(SymVec start, std::vector<Move> moves);

// Concatenation (q must start where p ends) and reversal (P and M swap).
MovePath concat_paths(const MovePath& p, const MovePath& q);
MovePath reverse_path(const MovePath& p);

// v <= w up to permutation: sorted(v) <= sorted(w) componentwise.
bool leq_perm(const SymVec& v, const SymVec& w);

// True iff the path runs from d to e and every state is <= d or <= e.
bool is_low_admissible(const MovePath& p, const SymVec& d, const SymVec& e);

// Appendix algorithms. All outputs are verified low admissible paths.
MovePath path_rank1(const SymVec& d, const SymVec& e);
MovePath path_rank2_k2(const SymVec& d, const SymVec& e);

// Low path from u to a vector u+ <= u whose last component is minimal and
// primitive in <u>.
std::pair<MovePath, SymVec> make_minimal_primitive(const SymVec& u);

// Low path between vectors sharing a minimal primitive i-th component.
MovePath path_shared_primitive(const SymVec& d, const SymVec& e, int i);

// Low admissible path between any two positive vectors generating the same
// subgroup; throws GroupMismatch otherwise.
MovePath low_path(const SymVec& d, const SymVec& e);

// One step of a Hamiltonian isotopy certificate: either a unitary
// permutation of the coordinates, staying in B(|a|), or an application of
// the shear construction to components i, j, staying in B(||p'||) where p'
// is the endpoint with the larger i-th component.
struct CertStep {
  enum Kind { UnitaryPermutation, Step2Apply } kind;
  std::vector<int> perm;  // to[t] = from[perm[t]], 1-based (permutation steps)
  int i = 0, j = 0;       // 1-based full-vector indices (step2 only)
  bool add = false;       // direction: to_i = from_i +- from_j
  SymVec from, to;
  SymReal ball;
};

struct IsotopyCertificate {
  SymBasisPtr basis;
  std::vector<CertStep> steps;
  SymReal overall_ball;
};

// Certificate that T(a) and T(a') are Hamiltonian isotopic inside
// B^{2n}(max(||a||, ||a'||)); requires equiv(t, u).
IsotopyCertificate certificate(const TorusSpec& t, const TorusSpec& u);

// Re-validation of untrusted paths and certificates.
enum class CheckFailure {
  None,
  BadStructure,       // malformed indices / shapes
  NonPositiveState,
  NotLow,
  EndpointMismatch,   // recomputed end differs from the claimed end
  StepMismatch,       // step arithmetic or continuity broken
  PermutationInvalid,
  BallMismatch,
  OverallBallMismatch,
};

struct CheckReport {
  bool ok = true;
  CheckFailure failure = CheckFailure::None;
  long long step_index = -1;
  std::string detail;
};

const char* check_failure_name(CheckFailure f);

// Recomputes all states from start+moves; verifies positivity, lowness
// against (start, end), and the claimed end when provided.
CheckReport check_path(const SymVec& start, const std::vector<Move>& moves,
                       const SymVec* claimed_end);

CheckReport check_certificate(const IsotopyCertificate& cert);

}  // namespace lagtor
