#include <doctest.h>

#include <numeric>

#include "lagtor/oracle.hpp"

using namespace lagtor;

namespace {

SymVec ints(const std::vector<long long>& v) {
  auto b = SymBasis::trivial();
  SymVec out;
  for (long long x : v) out.push_back(SymReal::rational(b, Rational(x)));
  return out;
}

}  // namespace

TEST_CASE("oracle finds forced one-move paths") {
  OracleResult r = bfs_low_path({{2, 4}, {2, 2}});
  REQUIRE(r.found);
  REQUIRE(r.moves.size() == 1);
  CHECK(r.moves[0] == Move{MoveKind::M, 2, 1});

  OracleResult r2 = bfs_low_path({{2, 3}, {3, 2}});
  REQUIRE(r2.found);
  REQUIRE(r2.moves.size() == 1);
  CHECK(r2.moves[0].kind == MoveKind::I);
}

TEST_CASE("oracle reports group obstructions as NotFound") {
  // gcd(2,4) = 2 but <3,3> = 3Z
  OracleResult r = bfs_low_path({{2, 4}, {3, 3}});
  CHECK_FALSE(r.found);
}

TEST_CASE("oracle paths are low admissible") {
  for (long long a = 1; a <= 5; ++a)
    for (long long b = 1; b <= 5; ++b)
      for (long long c = 1; c <= 5; ++c) {
        IntInstance inst{{a, b}, {c, std::gcd(a, b)}};
        if (std::gcd(inst.e[0], inst.e[1]) != std::gcd(a, b)) continue;
        OracleResult r = bfs_low_path(inst);
        REQUIRE(r.found);
        MovePath p = build_path(ints(inst.d), r.moves);
        CHECK(is_low_admissible(p, ints(inst.d), ints(inst.e)));
      }
}

TEST_CASE("oracle existence matches the gcd criterion at small scale") {
  for (long long a = 1; a <= 6; ++a)
    for (long long b = 1; b <= 6; ++b)
      for (long long c = 1; c <= 6; ++c)
        for (long long d = 1; d <= 6; ++d) {
          OracleResult r = bfs_low_path({{a, b}, {c, d}});
          CHECK(r.found == (std::gcd(a, b) == std::gcd(c, d)));
        }
}

TEST_CASE("oracle rejects oversized instances and caps nodes") {
  CHECK_THROWS_AS(bfs_low_path({{1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}}),
                  InputError);
  CHECK_THROWS_AS(bfs_low_path({{0, 1}, {1, 1}}), InputError);
  IntInstance capped{{9, 10, 11}, {10, 9, 11}};
  capped.node_cap = 3;
  CHECK_THROWS_AS(bfs_low_path(capped), StateSpaceCap);
}

TEST_CASE("oracle is deterministic") {
  OracleResult a = bfs_low_path({{4, 6, 2}, {2, 2, 2}});
  OracleResult b = bfs_low_path({{4, 6, 2}, {2, 2, 2}});
  REQUIRE(a.found);
  REQUIRE(b.found);
  CHECK(a.moves.size() == b.moves.size());
  for (size_t i = 0; i < a.moves.size(); ++i) CHECK(a.moves[i] == b.moves[i]);
}
