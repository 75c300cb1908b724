#include "ucov/ktheory.hpp"

#include <utility>

#include "ucov/errors.hpp"

namespace ucov {

K0Class::K0Class(TracialAlgebra algebra, std::vector<std::int64_t> ranks)
    : algebra_(std::move(algebra)), ranks_(std::move(ranks)) {
  if (static_cast<int>(ranks_.size()) != algebra_.blockCount())
    throw InvariantViolation("K0 class: coordinate count mismatch");
}

K0Class K0Class::zero(const TracialAlgebra& algebra) {
  return K0Class(algebra, std::vector<std::int64_t>(algebra.blockCount(), 0));
}

K0Class K0Class::operator+(const K0Class& other) const {
  requireSameAlgebra(algebra_, other.algebra_, "K0 add");
  std::vector<std::int64_t> r(ranks_);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += other.ranks_[i];
  return K0Class(algebra_, std::move(r));
}

K0Class K0Class::operator-() const {
  std::vector<std::int64_t> r(ranks_);
  for (auto& v : r) v = -v;
  return K0Class(algebra_, std::move(r));
}

bool K0Class::operator==(const K0Class& other) const {
  return algebra_ == other.algebra_ && ranks_ == other.ranks_;
}

K0Class k0FromProjection(const Projection& p) {
  return K0Class(p.algebra(), p.ranks());
}

LatticeVector tracePairing(const K0Class& c) {
  std::vector<Rational> coords;
  coords.reserve(c.size());
  for (int i = 0; i < c.size(); ++i)
    coords.push_back(makeRational(c[i], c.algebra().blockSize(i)));
  return LatticeVector(c.algebra(), std::move(coords));
}

K0Class loopToK0(const SegmentPath& loop, const Tolerances& tol) {
  WindingVector w = windingOracle(loop, tol);
  return K0Class(loop.algebra(), w.winds());
}

SegmentPath k0ToLoop(const K0Class& c) {
  for (int i = 0; i < c.size(); ++i)
    if (c[i] < 0 || c[i] > c.algebra().blockSize(i))
      throw PreconditionError(
          "k0ToLoop: rank " + std::to_string(c[i]) + " in block " +
          std::to_string(i) + " is not representable by a projection here; "
          "amplify the algebra first");
  return projectionLoop(Projection::diagonal(c.algebra(), c.ranks()));
}

}  // namespace ucov
