#include "ucov/cover.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "ucov/errors.hpp"

namespace ucov {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void checkCompatibility(const Unitary& endpoint, const std::vector<Rational>& w,
                        const Tolerances& tol) {
  for (int i = 0; i < endpoint.algebra().blockCount(); ++i) {
    Complex det = endpoint.block(i).determinant();
    double phase = kTwoPi * endpoint.algebra().blockSize(i) * toDouble(w[i]);
    Complex expected(std::cos(phase), std::sin(phase));
    if (std::abs(det - expected) > tol.coverCompatibility)
      throw InvariantViolation(
          "covering element: det(endpoint) and exp(2 pi i n w) disagree in "
          "block " + std::to_string(i) + " by " +
          std::to_string(std::abs(det - expected)));
  }
}

}  // namespace

// ---- LoopClass ----

LoopClass LoopClass::zero(const TracialAlgebra& algebra) {
  return LoopClass(WindingVector::zero(algebra));
}

LoopClass LoopClass::operator+(const LoopClass& other) const {
  return LoopClass(winds_ + other.winds_);
}

LoopClass LoopClass::operator-() const { return LoopClass(-winds_); }

bool LoopClass::operator==(const LoopClass& other) const {
  return winds_ == other.winds_;
}

// ---- CoveringElement ----

CoveringElement::CoveringElement(Unitary endpoint, std::vector<Rational> w,
                                 const Tolerances& tol)
    : endpoint_(std::move(endpoint)), w_(std::move(w)) {
  if (static_cast<int>(w_.size()) != endpoint_.algebra().blockCount())
    throw InvariantViolation("covering element: w coordinate count mismatch");
  checkCompatibility(endpoint_, w_, tol);
}

LatticeVector CoveringElement::wExact() const {
  return LatticeVector(algebra(), w_);
}

CenterVector CoveringElement::wApprox() const { return wExact().approx(); }

CoveringElement liftPath(const SegmentPath& p, const Tolerances& tol) {
  if (operatorNorm(p.start().element() -
                   Element::identity(p.algebra())) > tol.loopClosure)
    throw PreconditionError("liftPath: path must be based at the identity");
  CenterVector predet = preDeterminant(p);
  std::vector<Rational> w;
  w.reserve(predet.size());
  for (int i = 0; i < predet.size(); ++i)
    w.push_back(rationalFromDouble(predet[i]));
  return CoveringElement(p.endpoint(), std::move(w), tol);
}

CoveringElement coverIdentity(const TracialAlgebra& algebra) {
  return CoveringElement(Unitary::identity(algebra),
                         std::vector<Rational>(algebra.blockCount(), Rational(0)));
}

CoveringElement coverMultiply(const CoveringElement& x, const CoveringElement& y,
                              const Tolerances& tol) {
  requireSameAlgebra(x.algebra(), y.algebra(), "coverMultiply");
  std::vector<Rational> w(x.w());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += y.w()[i];
  return CoveringElement(Unitary(x.endpoint().element() * y.endpoint().element(), tol),
                         std::move(w), tol);
}

CoveringElement coverInverse(const CoveringElement& x, const Tolerances& tol) {
  std::vector<Rational> w(x.w());
  for (auto& v : w) v = -v;
  return CoveringElement(x.endpoint().adjoint(), std::move(w), tol);
}

CoveringElement embedLoopClass(const LoopClass& c) {
  std::vector<Rational> w;
  w.reserve(c.size());
  for (int i = 0; i < c.size(); ++i)
    w.push_back(makeRational(c[i], c.algebra().blockSize(i)));
  return CoveringElement(Unitary::identity(c.algebra()), std::move(w));
}

Unitary coverEndpoint(const CoveringElement& x) { return x.endpoint(); }

LoopClass loopClassRetraction(const CoveringElement& x, const Tolerances& tol) {
  std::vector<std::int64_t> winds;
  winds.reserve(x.w().size());
  Rational bound = rationalFromDouble(tol.latticeResidual);
  for (std::size_t i = 0; i < x.w().size(); ++i) {
    Rational scaled = Rational(x.algebra().blockSize(i)) * x.w()[i];
    Rational residual;
    Rational nearest = roundToInteger(scaled, &residual);
    if (residual > bound)
      throw NotInLattice(
          "loopClassRetraction: n * w in block " + std::to_string(i) + " is " +
          toString(scaled) + ", residual " + toString(residual) +
          " above the lattice tolerance");
    winds.push_back(integerValue(nearest));
  }
  return LoopClass(WindingVector(x.algebra(), std::move(winds)));
}

LatticeVector commutatorCenterComponent(const CoveringElement& x,
                                        const CoveringElement& y) {
  requireSameAlgebra(x.algebra(), y.algebra(), "commutatorCenterComponent");
  // (w + w') + (-w) + (-w'), exactly; returned rather than asserted so tests
  // can observe the cancellation.
  std::vector<Rational> c;
  c.reserve(x.w().size());
  for (std::size_t i = 0; i < x.w().size(); ++i)
    c.push_back(x.w()[i] + y.w()[i] - x.w()[i] - y.w()[i]);
  return LatticeVector(x.algebra(), std::move(c));
}

CoverSplit splitCoveringElement(const CoveringElement& x, const Tolerances& tol) {
  LoopClass loopPart = loopClassRetraction(x, tol);
  std::vector<Rational> remainder(x.w());
  for (std::size_t i = 0; i < remainder.size(); ++i)
    remainder[i] -= makeRational(loopPart[static_cast<int>(i)],
                                 x.algebra().blockSize(static_cast<int>(i)));
  return CoverSplit{loopPart,
                    CoveringElement(x.endpoint(), std::move(remainder), tol)};
}

// ---- dyadic ladder ----

std::vector<DyadicRung> dyadicTraceLadder(const Rational& target, int maxLevel) {
  if (target < 0 || target > 1)
    throw PreconditionError("dyadicTraceLadder: target must lie in [0, 1]");
  if (maxLevel < 1 || maxLevel > 20)
    throw PreconditionError("dyadicTraceLadder: maxLevel must be in [1, 20]");
  std::vector<DyadicRung> rungs;
  rungs.reserve(maxLevel);
  for (int m = 1; m <= maxLevel; ++m) {
    Rational dimension = makeRational(std::int64_t(1) << m);
    Rational residual;
    Rational rank = roundToInteger(dimension * target, &residual);
    DyadicRung rung;
    rung.level = m;
    rung.rank = integerValue(rank);
    rung.achieved = rank / dimension;
    rung.error = abs(rung.achieved - target);
    rungs.push_back(std::move(rung));
  }
  return rungs;
}

Projection dyadicProjection(const DyadicRung& rung) {
  if (rung.level > 10)
    throw PreconditionError(
        "dyadicProjection: dense materialization capped at level 10 "
        "(use the exact rung data beyond that)");
  TracialAlgebra algebra =
      TracialAlgebra::matrixBlock(1 << rung.level);
  return Projection::diagonal(algebra, {rung.rank});
}

}  // namespace ucov
