#pragma once

#include <vector>

#include "ucov/algebra.hpp"

namespace ucov {

// A finitely sampled continuous path in the unitary group: strictly
// increasing times t_0 = 0 < ... < t_last = 1 and one unitary per time,
// based at the identity (values[0] = 1 within tol.loopClosure).
class SampledPath {
 public:
  SampledPath(std::vector<double> times, std::vector<Unitary> values,
              const Tolerances& tol = Tolerances::defaults());

  const TracialAlgebra& algebra() const;
  int sampleCount() const { return static_cast<int>(values_.size()); }
  double time(int j) const { return times_.at(j); }
  const Unitary& value(int j) const { return values_.at(j); }

 private:
  std::vector<double> times_;
  std::vector<Unitary> values_;
};

// The canonical computable form of a path of unitaries: a start value and an
// ordered list of Hermitian generators a_1..a_m. On the j-th subinterval of
// the uniform partition of [0,1] the path runs
//
//   t |-> endpoint_{j-1} * e^{2 pi i s a_j},   s = m*t - (j-1),
//
// with endpoint_0 = start and endpoint_j = endpoint_{j-1} * e^{2 pi i a_j}.
// Eigendecompositions of the generators and the cumulative endpoints are
// precomputed, so evaluation is cheap. Immutable.
class SegmentPath {
 public:
  SegmentPath(Unitary start, std::vector<Hermitian> generators);

  static SegmentPath constant(const TracialAlgebra& algebra);

  const TracialAlgebra& algebra() const { return start_.algebra(); }
  const Unitary& start() const { return start_; }
  const Unitary& endpoint() const { return cumulative_.back(); }
  int segmentCount() const { return static_cast<int>(generators_.size()); }
  const Hermitian& generator(int j) const { return generators_.at(j); }
  const std::vector<Hermitian>& generators() const { return generators_; }
  // Value at the end of segment j (j = 0 gives the start).
  const Unitary& milestone(int j) const { return cumulative_.at(j); }

  // The segment formula above; t in [0, 1].
  Unitary evaluate(double t, const Tolerances& tol = Tolerances::defaults()) const;

  // ||endpoint - start|| <= tol.loopClosure.
  bool isLoop(const Tolerances& tol = Tolerances::defaults()) const;

 private:
  Unitary start_;
  std::vector<Hermitian> generators_;
  std::vector<Unitary> cumulative_;
  // eigensystem of generator j, block b
  std::vector<std::vector<Eigen::VectorXd>> angles_;
  std::vector<std::vector<Matrix>> vectors_;
};

// Reduces a sampled path to exponential-segment form: one segment per sample
// gap, generator a_j = logUnitary(v_{j-1}^* v_j). Requires every gap to
// satisfy ||v_{j-1}^* v_j - 1|| < 1 - tol.gapSlack; otherwise throws
// GapTooLarge with the offending index. Sample times only order the data;
// the result lives on the uniform partition (a reparametrization, which no
// downstream invariant can see).
SegmentPath fromSamples(const SampledPath& samples,
                        const Tolerances& tol = Tolerances::defaults());

// Path of pointwise inverses t |-> p(t)^{-1} in segment form: the start is
// inverted and generator j becomes -(c_{j-1} a_j c_{j-1}^*) for the running
// endpoint c_{j-1}.
SegmentPath pointwiseInverse(const SegmentPath& p);

// Runs p backwards and re-bases at 1: t |-> endpoint(p)^* p(1 - t).
SegmentPath reversed(const SegmentPath& p);

// Appends the generator lists; requires endpoint(p) == start(q) within
// tol.loopClosure (EndpointMismatch otherwise).
SegmentPath concatenate(const SegmentPath& p, const SegmentPath& q,
                        const Tolerances& tol = Tolerances::defaults());

// Samples t |-> p(t) q(t) on a uniform grid, doubling the resolution until
// every consecutive gap satisfies the fromSamples precondition. Both paths
// must be based at 1 so the product is again based. Grid capped at 2^20
// points (RefinementExceeded).
SampledPath pointwiseProduct(const SegmentPath& p, const SegmentPath& q,
                             const Tolerances& tol = Tolerances::defaults());

// The loop t |-> e^{2 pi i t} p + (1 - p): a single-generator path with
// a_1 = p, based and ending at 1.
SegmentPath projectionLoop(const Projection& p);

// Generators amplified with zero fill, start with identity fill.
SegmentPath amplifyPath(const SegmentPath& p, int m);

// t |-> e^{2 pi i t a} with e^{2 pi i a} = u: a one-segment path from 1
// to u. Every unitary in a finite direct sum is such an exponential.
SegmentPath exponentialPath(const Unitary& u);

// t |-> u p(t); generators are unchanged, only the start moves.
SegmentPath leftTranslate(const Unitary& u, const SegmentPath& p);

// max ||p(t) - u0|| over a probe grid (pointsPerSegment interior points per
// segment plus all boundaries). A diagnostic bound, not a certified sup.
double supDistance(const SegmentPath& p, const Unitary& u0,
                   int pointsPerSegment = 32,
                   const Tolerances& tol = Tolerances::defaults());

}  // namespace ucov
