#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "ucov/errors.hpp"

using namespace ucov;
using namespace ucov::testing;

TEST_CASE("algebra construction validates weights and sizes") {
  CHECK_NOTHROW(TracialAlgebra({2, 3}, {0.4, 0.6}));
  CHECK_THROWS_AS(TracialAlgebra({2, 3}, {0.4, 0.7}), InvariantViolation);
  CHECK_THROWS_AS(TracialAlgebra({2, 0}, {0.5, 0.5}), InvariantViolation);
  CHECK_THROWS_AS(TracialAlgebra({2}, {-1.0}), InvariantViolation);
  CHECK_THROWS_AS(TracialAlgebra({}, {}), InvariantViolation);
  CHECK(m2m3().describe() == "M2 + M3");
  CHECK(m2m3() == m2m3());
  CHECK(m2m3() != m2());
}

TEST_CASE("element arithmetic is blockwise") {
  TracialAlgebra a = m2m1();
  Element x(a, {mat2(1, 2, 3, 4), Matrix::Constant(1, 1, Complex(5, 0))});
  Element y = Element::identity(a);
  Element sum = x + y;
  CHECK(sum.block(0)(0, 0) == Complex(2, 0));
  CHECK(sum.block(1)(0, 0) == Complex(6, 0));
  Element prod = x * x;
  CHECK(prod.block(0)(0, 0) == Complex(7, 0));   // [[1,2],[3,4]]^2
  CHECK(prod.block(0)(1, 1) == Complex(22, 0));
  Element scaled = Complex(0, 1) * x;
  CHECK(scaled.block(0)(1, 0) == Complex(0, 3));
  Element adj = x.adjoint();
  CHECK(adj.block(0)(0, 1) == Complex(3, 0));
  CHECK_THROWS_AS(x + Element::zero(m2()), AlgebraMismatch);
  CHECK_THROWS_AS(Element(a, {mat2(1, 0, 0, 1)}), InvariantViolation);
}

TEST_CASE("operator norm and traces") {
  TracialAlgebra a = m2m1();
  // largest singular value of [[0,2],[0,0]] is 2
  Element x(a, {mat2(0, 2, 0, 0), Matrix::Constant(1, 1, Complex(0, -3))});
  CHECK(operatorNorm(x) == doctest::Approx(3.0).epsilon(1e-12));
  // tau = 0.5 * tr/2 + 0.5 * tr/1
  Complex tr = scalarTrace(x);
  CHECK(tr.real() == doctest::Approx(0.0));
  CHECK(tr.imag() == doctest::Approx(-1.5));
  Element h(a, {mat2(1, 0, 0, 3), Matrix::Constant(1, 1, Complex(7, 0))});
  CenterVector ct = centerTrace(h);
  CHECK(ct[0] == doctest::Approx(2.0));
  CHECK(ct[1] == doctest::Approx(7.0));
  CHECK_THROWS_AS(centerTrace(x), PreconditionError);  // not self-adjoint
}

TEST_CASE("checked wrappers reject bad input") {
  TracialAlgebra a = m2();
  CHECK_THROWS_AS(Unitary(Element(a, {mat2(1, 0, 0, 2)})), InvariantViolation);
  CHECK_NOTHROW(Unitary(Element(a, {mat2(0, 1, 1, 0)})));
  CHECK_THROWS_AS(Hermitian(Element(a, {mat2(0, 1, 0, 0)})), InvariantViolation);
  CHECK_NOTHROW(Hermitian(Element(a, {mat2(1, Complex(0, 1), Complex(0, -1), 2)})));
  CHECK_THROWS_AS(Projection(Element(a, {mat2(0.5, 0, 0, 0)})), InvariantViolation);
  CHECK_NOTHROW(Projection(Element(a, {mat2(0.5, 0.5, 0.5, 0.5)})));
}

TEST_CASE("projection ranks and diagonal factory") {
  TracialAlgebra a = m2m3();
  Projection p = Projection::diagonal(a, {1, 2});
  CHECK(p.rank(0) == 1);
  CHECK(p.rank(1) == 2);
  CHECK(p.ranks() == std::vector<std::int64_t>{1, 2});
  CHECK_THROWS_AS(Projection::diagonal(a, {3, 0}), InvariantViolation);
  Rng rng(11);
  Projection q = randomProjectionWithRanks(a, {1, 2}, rng);
  CHECK(mvnEquivalent(p, q));
  CHECK_FALSE(mvnEquivalent(p, Projection::diagonal(a, {1, 3})));
}

TEST_CASE("exponential of a quarter-turn generator") {
  // e^{2 pi i /4} = i, so exp of diag(1/4, -1/4) is diag(i, -i)
  TracialAlgebra a = m2();
  Hermitian h(Element(a, {mat2(0.25, 0, 0, -0.25)}));
  Unitary u = expHermitian(h);
  CHECK(std::abs(u.block(0)(0, 0) - Complex(0, 1)) < 1e-14);
  CHECK(std::abs(u.block(0)(1, 1) - Complex(0, -1)) < 1e-14);
  CHECK(std::abs(u.block(0)(0, 1)) < 1e-14);
}

TEST_CASE("log is the exact inverse of exp on the principal band") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    TracialAlgebra a = randomAlgebra(rng);
    Hermitian h = randomHermitian(a, 0.45, rng);  // spectrum inside (-1/2, 1/2)
    Hermitian back = logUnitary(expHermitian(h));
    for (int i = 0; i < a.blockCount(); ++i)
      CHECK((back.block(i) - h.block(i)).norm() < 1e-12);
  }
}

TEST_CASE("branch margin: -1 eigenvalues are rejected, fallback handles them") {
  TracialAlgebra a = m2();
  Unitary u(Element(a, {mat2(-1, 0, 0, 1)}));
  CHECK_THROWS_AS(logUnitary(u), BranchFailure);
  Hermitian h = hermitianExponent(u);  // never fails, -1 goes to +1/2
  CHECK(h.block(0)(0, 0).real() == doctest::Approx(0.5));
  Unitary round = expHermitian(h);
  CHECK((round.block(0) - u.block(0)).norm() < 1e-14);
}

TEST_CASE("hermitianExponent reaches every random unitary") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    TracialAlgebra a = randomAlgebra(rng);
    Unitary u = randomUnitary(a, rng);
    Unitary round = expHermitian(hermitianExponent(u));
    for (int i = 0; i < a.blockCount(); ++i)
      CHECK((round.block(i) - u.block(i)).norm() < 1e-10);
  }
}

TEST_CASE("projectionWithTrace hits lattice targets and rejects others") {
  TracialAlgebra a = m2m3();
  Projection p = projectionWithTrace(a, CenterVector(a, {0.5, 2.0 / 3.0}));
  CHECK(p.ranks() == std::vector<std::int64_t>{1, 2});
  CHECK_THROWS_AS(projectionWithTrace(a, CenterVector(a, {0.4, 0.0})),
                  UnreachableTrace);
  CHECK_THROWS_AS(projectionWithTrace(a, CenterVector(a, {1.5, 0.0})),
                  UnreachableTrace);
}

TEST_CASE("amplification embeds with the right fill") {
  TracialAlgebra a = m2m1();
  Rng rng(7);
  Unitary u = randomUnitary(a, rng);
  Unitary bigU = amplify(u, 3);
  CHECK(bigU.algebra().blockSize(0) == 6);
  // identity fill keeps unitarity; corner agrees with the original
  CHECK((bigU.block(0).topLeftCorner(2, 2) - u.block(0)).norm() == 0.0);
  CHECK(std::abs(bigU.block(0)(5, 5) - Complex(1, 0)) == 0.0);
  Hermitian h = randomHermitian(a, 1.0, rng);
  Hermitian bigH = amplify(h, 3);
  CHECK(std::abs(bigH.block(0)(5, 5)) == 0.0);  // zero fill
  // block trace (unnormalized) is invariant under zero-fill amplification
  CHECK(bigH.block(0).trace().real() ==
        doctest::Approx(h.block(0).trace().real()).epsilon(1e-14));
  Projection p = Projection::diagonal(a, {1, 1});
  CHECK(amplify(p, 4).ranks() == std::vector<std::int64_t>{1, 1});
  CHECK_THROWS_AS(amplify(u, 0), InvariantViolation);
}

TEST_CASE("reUnitarize returns the polar factor") {
  TracialAlgebra a = m2();
  Rng rng(5);
  Unitary u = randomUnitary(a, rng);
  // drift the unitary and repair it
  Element drifted = u.element() + Complex(1e-6, 0) * Element::identity(a);
  Unitary repaired = reUnitarize(drifted);
  CHECK((repaired.block(0) - u.block(0)).norm() < 1e-5);
  Element singular(a, {mat2(1, 0, 0, 0)});
  CHECK_THROWS_AS(reUnitarize(singular), NotInvertible);
}

TEST_CASE("lattice vectors do exact arithmetic") {
  TracialAlgebra a = m2m3();
  LatticeVector x(a, {makeRational(1, 2), makeRational(1, 3)});
  LatticeVector y(a, {makeRational(1, 2), makeRational(-1, 3)});
  CHECK((x - x).isZero());
  CHECK((x + y)[0] == makeRational(1));
  CHECK((x + y)[1] == makeRational(0));
  CHECK(x.approx()[1] == doctest::Approx(1.0 / 3.0));
  CHECK(x == x);
  CHECK_FALSE(x == y);
}
