#include <doctest.h>

#include "support.hpp"
#include "ucov/errors.hpp"
#include "ucov/ktheory.hpp"

using namespace ucov;
using namespace ucov::testing;

TEST_CASE("K0 class arithmetic") {
  TracialAlgebra a = m2m3();
  K0Class c(a, {1, 2});
  K0Class d(a, {-1, -2});
  CHECK(c + d == K0Class::zero(a));
  CHECK(-c == d);
  CHECK_FALSE(c == d);
  CHECK_THROWS_AS(K0Class(a, {1}), InvariantViolation);
  CHECK_THROWS_AS(c + K0Class(m2(), {1}), AlgebraMismatch);
}

TEST_CASE("equivalent projections share a K0 class") {
  TracialAlgebra a = m2m3();
  Rng rng(211);
  Projection p = randomProjectionWithRanks(a, {1, 2}, rng);
  Projection q = randomProjectionWithRanks(a, {1, 2}, rng);
  CHECK(mvnEquivalent(p, q));
  CHECK(k0FromProjection(p) == k0FromProjection(q));
  CHECK(k0FromProjection(p).ranks() == std::vector<std::int64_t>{1, 2});
}

TEST_CASE("trace pairing is exact and injective on a lattice") {
  TracialAlgebra a = m2m3();
  K0Class c(a, {1, 2});
  LatticeVector v = tracePairing(c);
  CHECK(v[0] == makeRational(1, 2));
  CHECK(v[1] == makeRational(2, 3));
  // additive and faithful to signs
  CHECK(tracePairing(-c) == -v);
  CHECK(tracePairing(c + c) == v + v);
  // distinct classes pair to distinct lattice vectors even when the
  // approximate traces collide in the last bits
  K0Class big(a, {1000000001, 3});
  K0Class close(a, {1000000000, 3});
  CHECK_FALSE(tracePairing(big) == tracePairing(close));
}

TEST_CASE("loops map to K0 by winding") {
  TracialAlgebra a = m2m3();
  Rng rng(223);
  Projection p = randomProjectionWithRanks(a, {2, 1}, rng);
  K0Class c = loopToK0(projectionLoop(p));
  CHECK(c == k0FromProjection(p));
}

TEST_CASE("representable classes round-trip through loops") {
  TracialAlgebra a = m2m3();
  for (std::int64_t r0 = 0; r0 <= 2; ++r0) {
    for (std::int64_t r1 = 0; r1 <= 3; ++r1) {
      K0Class c(a, {r0, r1});
      CHECK(loopToK0(k0ToLoop(c)) == c);
    }
  }
}

TEST_CASE("k0ToLoop rejects unrepresentable ranks") {
  TracialAlgebra a = m2m3();
  CHECK_THROWS_AS(k0ToLoop(K0Class(a, {3, 1})), PreconditionError);
  CHECK_THROWS_AS(k0ToLoop(K0Class(a, {-1, 1})), PreconditionError);
  // amplification makes room: rank 3 fits in M_4 + M_6
  K0Class big(amplifiedAlgebra(a, 2), {3, 1});
  CHECK(loopToK0(k0ToLoop(big)) == big);
}

TEST_CASE("loop concatenation adds K0 classes") {
  TracialAlgebra a = m2m1();
  Rng rng(227);
  SegmentPath loopA = randomLoop(a, rng);
  SegmentPath loopB = randomLoop(a, rng);
  K0Class sum = loopToK0(concatenate(loopA, loopB));
  CHECK(sum == loopToK0(loopA) + loopToK0(loopB));
}
