#include <doctest.h>

#include <algorithm>
#include <random>

#include "lagtor/invariants.hpp"

using namespace lagtor;

namespace {

TorusSpec torus(std::vector<long long> comps,
                std::optional<long long> cap = std::nullopt) {
  auto b = SymBasis::trivial();
  SymVec a;
  for (long long c : comps) a.push_back(SymReal::rational(b, Rational(c)));
  std::optional<SymReal> capacity;
  if (cap) capacity = SymReal::rational(b, Rational(*cap));
  return TorusSpec::make(b, std::move(a), std::move(capacity));
}

TorusSpec torus_q(std::vector<Rational> comps,
                  std::optional<Rational> cap = std::nullopt) {
  auto b = SymBasis::trivial();
  SymVec a;
  for (const Rational& c : comps) a.push_back(SymReal::rational(b, c));
  std::optional<SymReal> capacity;
  if (cap) capacity = SymReal::rational(b, *cap);
  return TorusSpec::make(b, std::move(a), std::move(capacity));
}

long long as_int(const SymReal& x) {
  REQUIRE(x.coeffs()[0].is_integer());
  return x.coeffs()[0].num();
}

}  // namespace

TEST_CASE("torus invariants on (1,2,3)") {
  InvariantSet inv = torus_invariants(torus({1, 2, 3}));
  CHECK(as_int(inv.ua) == 1);
  CHECK(inv.multiplicity == 1);
  CHECK(as_int(inv.total) == 6);
  CHECK(as_int(inv.norm) == 7);
  CHECK(inv.gamma.rank() == 1);
  CHECK(inv.gamma.hnf_rows()[0][0] == Rational(1));  // gcd(1,2) = 1
  REQUIRE(inv.stripped.size() == 2);
  CHECK(as_int(inv.stripped[0]) == 1);
  CHECK(as_int(inv.stripped[1]) == 2);
}

TEST_CASE("torus invariants on (2,2,2) and (1,3,5)") {
  InvariantSet inv = torus_invariants(torus({2, 2, 2}));
  CHECK(as_int(inv.ua) == 2);
  CHECK(inv.multiplicity == 3);
  CHECK(inv.gamma.rank() == 0);
  CHECK(inv.stripped.empty());

  InvariantSet inv2 = torus_invariants(torus({1, 3, 5}));
  CHECK(as_int(inv2.ua) == 1);
  CHECK(inv2.multiplicity == 1);
  CHECK(inv2.gamma.hnf_rows()[0][0] == Rational(2));  // <2,4> = 2Z
}

TEST_CASE("invariants are permutation invariant") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<long long> comps;
    for (int i = 0; i < 4; ++i) comps.push_back(1 + rng() % 9);
    std::vector<long long> shuffled = comps;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    InvariantSet a = torus_invariants(torus(comps));
    InvariantSet b = torus_invariants(torus(shuffled));
    CHECK(a.ua.exact_eq(b.ua));
    CHECK(a.multiplicity == b.multiplicity);
    CHECK(a.total.exact_eq(b.total));
    CHECK(zmod_equal(a.gamma, b.gamma));
    REQUIRE(a.stripped.size() == b.stripped.size());
    for (size_t i = 0; i < a.stripped.size(); ++i)
      CHECK(a.stripped[i].exact_eq(b.stripped[i]));
    // norm = total + ua and gamma generated by the stripped entries
    CHECK(a.norm.exact_eq(a.total + a.ua));
    ZModule from_stripped =
        zmod_from_generators(torus(comps).basis, a.stripped);
    CHECK(zmod_equal(from_stripped, a.gamma));
  }
}

TEST_CASE("equivalence decisions") {
  CHECK_FALSE(equiv(torus({1, 2, 3}), torus({1, 3, 5})));  // Z vs 2Z
  CHECK(equiv(torus({1, 3, 5}), torus({1, 3, 3})));
  CHECK(equiv(torus({1, 2, 3}), torus({3, 1, 2})));
  CHECK_THROWS_AS(equiv(torus({1, 2}), torus({1, 2, 3})), DimensionMismatch);
  // reflexive and symmetric
  CHECK(equiv(torus({2, 5}), torus({2, 5})));
  CHECK(equiv(torus({1, 3, 3}), torus({1, 3, 5})));
}

TEST_CASE("equiv transitivity on random triples") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    auto rand_torus = [&] {
      std::vector<long long> comps;
      for (int i = 0; i < 3; ++i) comps.push_back(1 + rng() % 5);
      return torus(comps);
    };
    TorusSpec a = rand_torus(), b = rand_torus(), c = rand_torus();
    if (equiv(a, b) && equiv(b, c)) CHECK(equiv(a, c));
  }
}

TEST_CASE("displacement energy") {
  CHECK(as_int(displacement_energy(torus({1, 2, 3}, 8))) == 1);
  CHECK(as_int(displacement_energy(torus({2, 2, 2}, 8))) == 2);
  // ||a|| = 7 > 6.5
  CHECK_THROWS_AS(
      displacement_energy(torus_q({Rational(1), Rational(2), Rational(3)},
                                  Rational(13, 2))),
      CapacityTooSmall);
  CHECK_THROWS_AS(displacement_energy(torus({1, 2})), InputError);
}

TEST_CASE("perturbed energy matches min(a_i + s_i)") {
  auto b = SymBasis::trivial();
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<long long> num(-9, 9);
  for (int trial = 0; trial < 100; ++trial) {
    TorusSpec t = torus({2, 3, 5}, 40);
    SymVec s;
    std::vector<Rational> sq;
    for (int i = 0; i < 3; ++i) {
      Rational q(num(rng), 20);  // |s_i| <= 9/20 < (3-2)/2... kept small
      sq.push_back(q);
      s.push_back(SymReal::rational(b, q));
    }
    SymReal e = displacement_energy_perturbed(t, s);
    Rational expect = std::min({Rational(2) + sq[0], Rational(3) + sq[1],
                                Rational(5) + sq[2]});
    CHECK(e.coeffs()[0] == expect);
  }
}

TEST_CASE("perturbed energy is ua plus the minimal shift on minima") {
  // second smallest - smallest = 1; shifts below 1/2 keep the formula
  auto b = SymBasis::trivial();
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long long> num(-45, 45);
  for (int trial = 0; trial < 100; ++trial) {
    TorusSpec t = torus({2, 2, 3}, 40);
    std::vector<Rational> sq;
    SymVec s;
    for (int i = 0; i < 3; ++i) {
      Rational q(num(rng), 100);
      sq.push_back(q);
      s.push_back(SymReal::rational(b, q));
    }
    SymReal e = displacement_energy_perturbed(t, s);
    Rational expect = Rational(2) + std::min(sq[0], sq[1]);
    CHECK(e.coeffs()[0] == expect);
  }
}

TEST_CASE("clifford lift") {
  TorusSpec lifted = clifford_lift(torus({1}), SymReal::rational(
                                                   SymBasis::trivial(),
                                                   Rational(3)));
  REQUIRE(lifted.dim() == 2);
  CHECK(as_int(lifted.a[0]) == 1);
  CHECK(as_int(lifted.a[1]) == 2);

  TorusSpec t = torus({1, 2});
  TorusSpec lifted2 =
      clifford_lift(t, SymReal::rational(t.basis, Rational(6)));
  CHECK(as_int(lifted2.a[2]) == 3);
  CHECK_THROWS_AS(clifford_lift(t, SymReal::rational(t.basis, Rational(3))),
                  InputError);
}

TEST_CASE("clifford lift respects equivalence of lifted vectors") {
  // T(1) and T(2) in CP^1(3): lifts (1,2) vs (2,1) are permutations
  auto b = SymBasis::trivial();
  SymReal cap = SymReal::rational(b, Rational(3));
  TorusSpec l1 = clifford_lift(torus({1}), cap);
  TorusSpec l2 = clifford_lift(torus({2}), cap);
  CHECK(equiv(l1, l2));
}

TEST_CASE("ball obstruction") {
  auto b = SymBasis::trivial();
  auto ball = [&](const Rational& q) { return SymReal::rational(b, q); };
  TorusSpec t = torus({1, 3, 5}), u = torus({1, 3, 3});
  // 9 < max(10, 8) and 9 != 7
  CHECK(obstruct_ball(t, u, ball(Rational(9))) == BallVerdict::Obstructed);
  CHECK(obstruct_ball(t, u, ball(Rational(10))) ==
        BallVerdict::CertifiablyIsotopic);
  // permutations need only |a|
  CHECK(obstruct_ball(torus({1, 2}), torus({2, 1}), ball(Rational(3))) ==
        BallVerdict::CertifiablyIsotopic);
  // below |a| nothing is claimed
  CHECK(obstruct_ball(torus({1, 2}), torus({2, 1}), ball(Rational(2))) ==
        BallVerdict::Unknown);
  // equal sums below the bound: the paper leaves it open
  CHECK(obstruct_ball(torus({1, 4}), torus({2, 3}), ball(Rational(4))) ==
        BallVerdict::Unknown);
}

TEST_CASE("obstruction verdicts are mutually exclusive on random inputs") {
  std::mt19937_64 rng(37);
  auto b = SymBasis::trivial();
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<long long> ca, cb;
    for (int i = 0; i < 3; ++i) {
      ca.push_back(1 + rng() % 6);
      cb.push_back(1 + rng() % 6);
    }
    SymReal ball = SymReal::rational(b, Rational(1 + (long long)(rng() % 20)));
    TorusSpec t = torus(ca), u = torus(cb);
    InvariantSet it = torus_invariants(t), iu = torus_invariants(u);
    SymReal mx = sym_less(it.norm, iu.norm) ? iu.norm : it.norm;
    BallVerdict v = obstruct_ball(t, u, ball);
    std::vector<long long> sa = ca, sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    bool is_perm = sa == sb;
    if (v == BallVerdict::Obstructed) {
      CHECK(sym_less(ball, mx));
      CHECK_FALSE(it.total.exact_eq(iu.total));
    }
    if (v == BallVerdict::CertifiablyIsotopic) {
      bool perm_route = is_perm && sym_leq(it.total, ball);
      bool equiv_route = sym_leq(mx, ball) && equiv(t, u);
      CHECK((perm_route || equiv_route));
      // the obstruction conditions cannot hold at the same time
      bool obstruction_conditions =
          sym_less(ball, mx) && !it.total.exact_eq(iu.total);
      CHECK_FALSE(obstruction_conditions);
    }
  }
}

TEST_CASE("classification settings") {
  CHECK(classify(torus({1, 3, 5}), torus({1, 3, 3}), Setting::LiouvilleTame) ==
        ClassifyVerdict::Equivalent);
  CHECK(classify(torus({1, 2, 3}, 8), torus({1, 3, 5}, 12),
                 Setting::AsphericalTameWithCapacity) ==
        ClassifyVerdict::Distinct);
  CHECK(classify(torus({1, 2}, 5), torus({1, 2}, 5),
                 Setting::AsphericalTameWithCapacity) ==
        ClassifyVerdict::InvariantsAgree);
  CHECK_THROWS_AS(classify(torus({1, 2}), torus({1, 2}),
                           Setting::AsphericalTameWithCapacity),
                  InputError);
}
