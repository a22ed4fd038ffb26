#include <doctest.h>

#include <random>

#include "lagtor/zmodule.hpp"

using namespace lagtor;

namespace {

SymBasisPtr beta_basis() {
  return SymBasis::make({{"1", {Rational(1), Rational(1)}},
                         {"beta", {Rational(141, 100), Rational(71, 50)}}});
}

SymReal make(const SymBasisPtr& b, long long c0, long long c1) {
  return SymReal(b, {Rational(c0), Rational(c1)});
}

SymReal rat(const SymBasisPtr& b, long long v) {
  return SymReal::rational(b, Rational(v));
}

}  // namespace

TEST_CASE("integer matrix helpers") {
  IMat a = {{2, 1}, {1, 1}};
  CHECK(mat_det(a) == 1);
  IMat inv = inverse_unimodular(a);
  CHECK(mat_eq(mat_mul(a, inv), identity_matrix(2)));
  CHECK(mat_det(IMat{{2, 0}, {0, 2}}) == 4);
  CHECK(mat_det(IMat{{1, 2}, {2, 4}}) == 0);
}

TEST_CASE("hnf canonical form") {
  // gens {(1,0),(0,2),(1,2)} -> {(1,0),(0,2)}
  IMat h = hnf({{1, 0}, {0, 2}, {1, 2}});
  CHECK(h == IMat{{1, 0}, {0, 2}});
  // above-pivot reduction into [0, pivot)
  IMat h2 = hnf({{1, 5}, {0, 3}});
  CHECK(h2 == IMat{{1, 2}, {0, 3}});
  // negative pivots normalised
  IMat h3 = hnf({{-2, 0}});
  CHECK(h3 == IMat{{2, 0}});
}

TEST_CASE("smith normal form with transforms") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> pick(-4, 4);
  for (int trial = 0; trial < 50; ++trial) {
    size_t rows = 1 + rng() % 3, cols = 1 + rng() % 3;
    IMat m(rows, IVec(cols));
    for (auto& r : m)
      for (auto& x : r) x = pick(rng);
    SmithResult s = smith(m);
    CHECK(mat_eq(mat_mul(mat_mul(s.u, m), s.v), s.d));
    CHECK(std::llabs(mat_det(s.u)) == 1);
    CHECK(std::llabs(mat_det(s.v)) == 1);
    for (size_t i = 0; i + 1 < s.rank; ++i) {
      CHECK(s.d[i][i] > 0);
      CHECK(s.d[i + 1][i + 1] % s.d[i][i] == 0);
    }
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j)
        if (i != j) CHECK(s.d[i][j] == 0);
  }
}

TEST_CASE("module from generators") {
  auto b = beta_basis();
  // {(1,0),(0,2),(1,2)} over (1, beta)
  ZModule z = zmod_from_generators(
      b, std::vector<SymReal>{make(b, 1, 0), make(b, 0, 2), make(b, 1, 2)});
  CHECK(z.rank() == 2);
  CHECK(z.hnf_rows()[0] == std::vector<Rational>{Rational(1), Rational(0)});
  CHECK(z.hnf_rows()[1] == std::vector<Rational>{Rational(0), Rational(2)});

  auto t = SymBasis::trivial();
  ZModule g = zmod_from_generators(
      t, std::vector<SymReal>{rat(t, 6), rat(t, 10), rat(t, 15)});
  CHECK(g.rank() == 1);
  CHECK(g.hnf_rows()[0][0] == Rational(1));  // gcd(6,10,15) = 1

  ZModule empty = zmod_from_generators(t, std::vector<SymReal>{});
  CHECK(empty.rank() == 0);
}

TEST_CASE("equality and membership") {
  auto t = SymBasis::trivial();
  ZModule two_four = zmod_from_generators(
      t, std::vector<SymReal>{rat(t, 2), rat(t, 4)});
  ZModule two = zmod_from_generators(t, std::vector<SymReal>{rat(t, 2)});
  CHECK(zmod_equal(two_four, two));
  CHECK_FALSE(zmod_member(rat(t, 3), two));
  CHECK(zmod_member(rat(t, 4), two));
  CHECK(zmod_member(rat(t, 0), two));

  auto b = beta_basis();
  ZModule z2 = zmod_from_generators(
      b, std::vector<SymReal>{make(b, 1, 0), make(b, 0, 1)});
  CHECK(zmod_rank(z2) == 2);
}

TEST_CASE("rational coefficient lattices are canonical") {
  auto t = SymBasis::trivial();
  // <1/2> == <1/2, 3/2>
  ZModule a = zmod_from_generators(
      t, std::vector<SymReal>{SymReal::rational(t, Rational(1, 2))});
  ZModule b = zmod_from_generators(
      t, std::vector<SymReal>{SymReal::rational(t, Rational(1, 2)),
                              SymReal::rational(t, Rational(3, 2))});
  CHECK(zmod_equal(a, b));
  CHECK(zmod_member(SymReal::rational(t, Rational(5, 2)), a));
  CHECK_FALSE(zmod_member(SymReal::rational(t, Rational(1, 3)), a));
}

TEST_CASE("primitivity") {
  auto b = beta_basis();
  ZModule z2 = zmod_from_generators(
      b, std::vector<SymReal>{make(b, 1, 0), make(b, 0, 1)});
  CHECK_FALSE(is_primitive(make(b, 2, 4), z2));
  CHECK(is_primitive(make(b, 2, 3), z2));
  auto t = SymBasis::trivial();
  ZModule g = zmod_from_generators(t, std::vector<SymReal>{rat(t, 3)});
  CHECK(is_primitive(rat(t, 3), g));
  CHECK_THROWS_AS(is_primitive(rat(t, 5), g), NotAMember);
  CHECK_THROWS_AS(is_primitive(rat(t, 0), g), InputError);
}

TEST_CASE("saturation") {
  auto b = beta_basis();
  ZModule z2 = zmod_from_generators(
      b, std::vector<SymReal>{make(b, 1, 0), make(b, 0, 1)});
  // <(2,2)> inside Z^2 -> <(1,1)>
  ZModule s = zmod_from_generators(b, std::vector<SymReal>{make(b, 2, 2)});
  ZModule sat = saturate(s, z2);
  CHECK(sat.rank() == 1);
  CHECK(zmod_member(make(b, 1, 1), sat));
  // full sublattice of finite index saturates to the ambient
  ZModule fi = zmod_from_generators(
      b, std::vector<SymReal>{make(b, 2, 0), make(b, 0, 3)});
  CHECK(zmod_equal(saturate(fi, z2), z2));
  // idempotence and containment
  CHECK(zmod_equal(saturate(sat, z2), sat));
  CHECK(zmod_equal(saturate(z2, z2), z2));
  CHECK_THROWS_AS(
      saturate(zmod_from_generators(
                   b, std::vector<SymReal>{SymReal(
                          b, {Rational(1, 2), Rational(0)})}),
               z2),
      NotSubmodule);
}

TEST_CASE("complement splitting") {
  auto b = beta_basis();
  ZModule z2 = zmod_from_generators(
      b, std::vector<SymReal>{make(b, 1, 0), make(b, 0, 1)});
  // (1,0) in Z^2 -> complement <(0,1)>
  ZModule l1 = complement_split(make(b, 1, 0), z2);
  CHECK(l1.rank() == 1);
  CHECK(zmod_member(make(b, 0, 1), l1));
  // (2,3) extends to a unimodular basis
  ZModule l2 = complement_split(make(b, 2, 3), z2);
  CHECK(l2.rank() == 1);
  std::vector<SymReal> gens{make(b, 2, 3), l2.basis_element(0)};
  CHECK(zmod_equal(zmod_from_generators(b, gens), z2));
  // rank-1 module: trivial complement
  auto t = SymBasis::trivial();
  ZModule g = zmod_from_generators(t, std::vector<SymReal>{rat(t, 3)});
  CHECK(complement_split(rat(t, 3), g).rank() == 0);
  CHECK_THROWS_AS(complement_split(make(b, 2, 4), z2), NotPrimitive);
}

TEST_CASE("complement of a saturated submodule") {
  auto b = SymBasis::make({{"1", {Rational(1), Rational(1)}},
                           {"x", {Rational(141, 100), Rational(71, 50)}},
                           {"y", {Rational(173, 100), Rational(174, 100)}}});
  auto mk = [&](long long a, long long c, long long d) {
    return SymReal(b, {Rational(a), Rational(c), Rational(d)});
  };
  ZModule z3 = zmod_from_generators(
      b, std::vector<SymReal>{mk(1, 0, 0), mk(0, 1, 0), mk(0, 0, 1)});
  ZModule delta = zmod_from_generators(
      b, std::vector<SymReal>{mk(1, 0, 0), mk(0, 1, 0)});
  ZModule comp = complement_of_saturated(delta, z3);
  CHECK(comp.rank() == 1);
  std::vector<SymReal> gens{mk(1, 0, 0), mk(0, 1, 0), comp.basis_element(0)};
  CHECK(zmod_equal(zmod_from_generators(b, gens), z3));
  // non-saturated submodule is rejected
  ZModule bad = zmod_from_generators(
      b, std::vector<SymReal>{mk(2, 0, 0), mk(0, 1, 0)});
  CHECK_THROWS_AS(complement_of_saturated(bad, z3), NotSubmodule);
}

TEST_CASE("hnf idempotence and membership cross-check on random modules") {
  auto b = beta_basis();
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long long> pick(-6, 6);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<SymReal> gens;
    for (int g = 0; g < 3; ++g) gens.push_back(make(b, pick(rng), pick(rng)));
    ZModule z = zmod_from_generators(b, gens);
    // feeding the canonical rows back reproduces the identical rows
    std::vector<SymReal> rows;
    for (size_t i = 0; i < z.rank(); ++i) rows.push_back(z.basis_element(i));
    ZModule again = zmod_from_generators(b, rows);
    CHECK(z.hnf_rows() == again.hnf_rows());
    // every generator is a member
    for (const SymReal& g : gens) CHECK(zmod_member(g, z));
  }
}

TEST_CASE("equality iff mutual membership on random pairs") {
  auto b = beta_basis();
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long long> pick(-4, 4);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<SymReal> ga, gb;
    for (int g = 0; g < 2; ++g) {
      ga.push_back(make(b, pick(rng), pick(rng)));
      gb.push_back(make(b, pick(rng), pick(rng)));
    }
    ZModule za = zmod_from_generators(b, ga), zb = zmod_from_generators(b, gb);
    bool mutual = true;
    for (const SymReal& g : ga) mutual = mutual && zmod_member(g, zb);
    for (const SymReal& g : gb) mutual = mutual && zmod_member(g, za);
    CHECK(zmod_equal(za, zb) == mutual);
  }
}

TEST_CASE("small primitive element") {
  auto b = beta_basis();
  // G = <1, beta>, L = <5, 2+beta> has index 5 with cyclic quotient
  ZModule g = zmod_from_generators(
      b, std::vector<SymReal>{make(b, 1, 0), make(b, 0, 1)});
  ZModule l = zmod_from_generators(
      b, std::vector<SymReal>{make(b, 5, 0), make(b, 2, 1)});
  SymReal bound = make(b, 2, 0);
  SymReal z = small_primitive_element(l, g, bound);
  CHECK(zmod_member(z, l));
  CHECK(is_primitive(z, g));
  CHECK(sym_sign(z) > 0);
  CHECK(sym_less(z, bound));
}
