#pragma once

#include <cstdint>
#include <vector>

#include "ucov/ktheory.hpp"
#include "ucov/paths.hpp"
#include "ucov/predet.hpp"

namespace ucov {

// A homotopy class of loops based at 1, i.e. an element of the fundamental
// group of the unitary group; carried by its winding vector.
class LoopClass {
 public:
  explicit LoopClass(WindingVector winds) : winds_(std::move(winds)) {}

  static LoopClass zero(const TracialAlgebra& algebra);

  const TracialAlgebra& algebra() const { return winds_.algebra(); }
  const WindingVector& winding() const { return winds_; }
  std::int64_t operator[](int i) const { return winds_[i]; }
  int size() const { return winds_.size(); }

  LoopClass operator+(const LoopClass& other) const;
  LoopClass operator-() const;
  bool operator==(const LoopClass& other) const;
  bool isZero() const { return winds_.isZero(); }

 private:
  WindingVector winds_;
};

// Normal form of a class of based paths modulo null-homotopy: the endpoint
// unitary plus the pre-determinant value of any representative. In a finite
// direct sum the pair determines the class, subject to the per-block
// compatibility det(u_i) = exp(2 pi i n_i w_i). The w coordinates are exact
// rationals (floating inputs embed losslessly as dyadics), so the group law
// on w is exact.
class CoveringElement {
 public:
  CoveringElement(Unitary endpoint, std::vector<Rational> w,
                  const Tolerances& tol = Tolerances::defaults());

  const TracialAlgebra& algebra() const { return endpoint_.algebra(); }
  const Unitary& endpoint() const { return endpoint_; }
  const std::vector<Rational>& w() const { return w_; }
  LatticeVector wExact() const;
  CenterVector wApprox() const;

 private:
  Unitary endpoint_;
  std::vector<Rational> w_;
};

// (endpoint(p), preDeterminant(p)) for a path based at 1. The compatibility
// invariant is re-verified; failure there signals corruption upstream.
CoveringElement liftPath(const SegmentPath& p,
                         const Tolerances& tol = Tolerances::defaults());

CoveringElement coverIdentity(const TracialAlgebra& algebra);

// (u, w)(v, x) = (uv, w + x); w-arithmetic exact, endpoints numeric.
CoveringElement coverMultiply(const CoveringElement& x, const CoveringElement& y,
                              const Tolerances& tol = Tolerances::defaults());
CoveringElement coverInverse(const CoveringElement& x,
                             const Tolerances& tol = Tolerances::defaults());

// The embedding of loop classes: class c maps to (1, c_i / n_i) exactly.
CoveringElement embedLoopClass(const LoopClass& c);

// Evaluation at the end of the path: the endpoint unitary. Surjective, with
// kernel exactly the embedded loop classes.
Unitary coverEndpoint(const CoveringElement& x);

// The retraction onto loop classes: wind_i = round(n_i * w_i), requiring the
// residual to stay within tol.latticeResidual. Off-lattice values throw
// NotInLattice - the precise finite-dimensional obstruction, absent in the
// infinite-dimensional setting the dyadic ladder approximates.
LoopClass loopClassRetraction(const CoveringElement& x,
                              const Tolerances& tol = Tolerances::defaults());

// w-component of x y x^{-1} y^{-1}, computed in exact rational arithmetic;
// identically zero. Combined with embedLoopClass being nonzero on nonzero
// classes, this witnesses that the covering group is not perfect.
LatticeVector commutatorCenterComponent(const CoveringElement& x,
                                        const CoveringElement& y);

struct CoverSplit {
  LoopClass loopPart;
  // (endpoint, w - lattice part); retracts to the zero class.
  CoveringElement basePart;
};

// Factors a lattice-compatible element as
// x = embedLoopClass(loopPart) * basePart, exactly in w.
CoverSplit splitCoveringElement(const CoveringElement& x,
                                const Tolerances& tol = Tolerances::defaults());

// One rung of the dyadic ladder: the best projection rank in M_{2^level}.
struct DyadicRung {
  int level = 0;
  std::int64_t rank = 0;
  Rational achieved;  // rank / 2^level
  Rational error;     // |achieved - target|, exact
};

// Demonstrates divisibility-in-the-limit: for each level m = 1..maxLevel the
// nearest rank r to target * 2^m gives |r/2^m - target| <= 2^{-(m+1)}, and
// the error never increases with m. Exact rational reporting throughout;
// maxLevel <= 20.
std::vector<DyadicRung> dyadicTraceLadder(const Rational& target, int maxLevel);

// Materializes the rung as an actual diagonal projection in M_{2^level}
// (dense; level <= 10).
Projection dyadicProjection(const DyadicRung& rung);

}  // namespace ucov
