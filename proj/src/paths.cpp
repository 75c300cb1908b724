#include "ucov/paths.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "ucov/errors.hpp"

namespace ucov {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxGridPoints = 1 << 20;

}  // namespace

// ---- SampledPath ----

SampledPath::SampledPath(std::vector<double> times, std::vector<Unitary> values,
                         const Tolerances& tol)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.size() != values_.size() || times_.size() < 2)
    throw InvariantViolation("sampled path: need matching times/values, >= 2 samples");
  if (times_.front() != 0.0 || times_.back() != 1.0)
    throw InvariantViolation("sampled path: times must start at 0 and end at 1");
  for (std::size_t j = 1; j < times_.size(); ++j)
    if (!(times_[j] > times_[j - 1]))
      throw InvariantViolation("sampled path: times must be strictly increasing");
  for (std::size_t j = 1; j < values_.size(); ++j)
    requireSameAlgebra(values_[0].algebra(), values_[j].algebra(), "sampled path");
  Element defect = values_[0].element() - Element::identity(values_[0].algebra());
  if (operatorNorm(defect) > tol.loopClosure)
    throw InvariantViolation("sampled path: must be based at the identity");
}

const TracialAlgebra& SampledPath::algebra() const { return values_.front().algebra(); }

// ---- SegmentPath ----

SegmentPath::SegmentPath(Unitary start, std::vector<Hermitian> generators)
    : start_(std::move(start)), generators_(std::move(generators)) {
  for (const auto& g : generators_)
    requireSameAlgebra(start_.algebra(), g.algebra(), "segment path");
  cumulative_.reserve(generators_.size() + 1);
  cumulative_.push_back(start_);
  angles_.reserve(generators_.size());
  vectors_.reserve(generators_.size());
  for (const auto& g : generators_) {
    std::vector<Eigen::VectorXd> angles;
    std::vector<Matrix> vectors;
    std::vector<Matrix> expBlocks;
    for (int i = 0; i < g.element().blockCount(); ++i) {
      const Matrix& b = g.block(i);
      Eigen::SelfAdjointEigenSolver<Matrix> es((b + b.adjoint()) / 2.0);
      if (es.info() != Eigen::Success)
        throw Error("segment path: generator eigensolver failed");
      angles.push_back(es.eigenvalues());
      vectors.push_back(es.eigenvectors());
      Eigen::VectorXcd phases(es.eigenvalues().size());
      for (int r = 0; r < es.eigenvalues().size(); ++r) {
        double theta = kTwoPi * es.eigenvalues()[r];
        phases[r] = Complex(std::cos(theta), std::sin(theta));
      }
      expBlocks.push_back(es.eigenvectors() * phases.asDiagonal() *
                          es.eigenvectors().adjoint());
    }
    angles_.push_back(std::move(angles));
    vectors_.push_back(std::move(vectors));
    Element step(start_.algebra(), std::move(expBlocks));
    cumulative_.push_back(Unitary(cumulative_.back().element() * step));
  }
}

SegmentPath SegmentPath::constant(const TracialAlgebra& algebra) {
  return SegmentPath(Unitary::identity(algebra), {});
}

Unitary SegmentPath::evaluate(double t, const Tolerances& tol) const {
  if (t < 0.0 || t > 1.0)
    throw PreconditionError("segment path: evaluation time outside [0, 1]");
  if (generators_.empty()) return start_;
  int m = segmentCount();
  // Locate the segment; t = 1 belongs to the last one.
  int j = std::min(static_cast<int>(t * m), m - 1);
  double s = t * m - j;
  if (s == 0.0) return cumulative_[j];
  std::vector<Matrix> blocks;
  blocks.reserve(start_.element().blockCount());
  for (int i = 0; i < start_.element().blockCount(); ++i) {
    const Eigen::VectorXd& angles = angles_[j][i];
    const Matrix& q = vectors_[j][i];
    Eigen::VectorXcd phases(angles.size());
    for (int r = 0; r < angles.size(); ++r) {
      double theta = kTwoPi * s * angles[r];
      phases[r] = Complex(std::cos(theta), std::sin(theta));
    }
    blocks.push_back(cumulative_[j].block(i) * (q * phases.asDiagonal() * q.adjoint()));
  }
  return Unitary(Element(algebra(), std::move(blocks)), tol);
}

bool SegmentPath::isLoop(const Tolerances& tol) const {
  return operatorNorm(endpoint().element() - start_.element()) <= tol.loopClosure;
}

// ---- constructions ----

SegmentPath fromSamples(const SampledPath& samples, const Tolerances& tol) {
  std::vector<Hermitian> generators;
  generators.reserve(samples.sampleCount() - 1);
  for (int j = 1; j < samples.sampleCount(); ++j) {
    Unitary gap(samples.value(j - 1).adjoint() * samples.value(j));
    double distance =
        operatorNorm(gap.element() - Element::identity(gap.algebra()));
    if (distance >= 1.0 - tol.gapSlack)
      throw GapTooLarge(j, "sample gap " + std::to_string(j) +
                               " has ||v_{j-1}^* v_j - 1|| = " +
                               std::to_string(distance) + " >= " +
                               std::to_string(1.0 - tol.gapSlack));
    // ||u - 1|| < 1 keeps the spectrum away from -1, so the principal branch
    // is safe regardless of the branch margin.
    generators.push_back(logUnitary(gap, tol));
  }
  return SegmentPath(samples.value(0), std::move(generators));
}

SegmentPath pointwiseInverse(const SegmentPath& p) {
  std::vector<Hermitian> generators;
  generators.reserve(p.segmentCount());
  for (int j = 0; j < p.segmentCount(); ++j) {
    const Unitary& c = p.milestone(j);
    Element conjugated = c.element() * p.generator(j).element() * c.adjoint().element();
    generators.push_back(Hermitian(-conjugated));
  }
  return SegmentPath(p.start().adjoint(), std::move(generators));
}

SegmentPath reversed(const SegmentPath& p) {
  // q(t) = endpoint^* p(1-t). On segment j of q we sit inside segment
  // m+1-j of p, and e^{2 pi i (1-s) a} = e^{2 pi i a} e^{-2 pi i s a}
  // folds the constant factor into the milestone, so q is the segment path
  // with start 1 and generators b_j = -a_{m+1-j}.
  int m = p.segmentCount();
  std::vector<Hermitian> generators;
  generators.reserve(m);
  for (int j = 1; j <= m; ++j) generators.push_back(-p.generator(m - j));
  return SegmentPath(Unitary::identity(p.algebra()), std::move(generators));
}

SegmentPath concatenate(const SegmentPath& p, const SegmentPath& q,
                        const Tolerances& tol) {
  requireSameAlgebra(p.algebra(), q.algebra(), "concatenate");
  if (operatorNorm(p.endpoint().element() - q.start().element()) > tol.loopClosure)
    throw EndpointMismatch("concatenate: endpoint of first path differs from start of second");
  std::vector<Hermitian> generators = p.generators();
  // q's generators transport verbatim: the concatenation's running endpoint
  // after p's segments is p.endpoint() ~ q.start(), and q's own milestones
  // are q.start() * (products of exponentials), so appending generator lists
  // reproduces q up to the closure tolerance.
  for (const auto& g : q.generators()) generators.push_back(g);
  return SegmentPath(p.start(), std::move(generators));
}

SampledPath pointwiseProduct(const SegmentPath& p, const SegmentPath& q,
                             const Tolerances& tol) {
  requireSameAlgebra(p.algebra(), q.algebra(), "pointwiseProduct");
  auto isBased = [&](const SegmentPath& r) {
    return operatorNorm(r.start().element() -
                        Element::identity(r.algebra())) <= tol.loopClosure;
  };
  if (!isBased(p) || !isBased(q))
    throw PreconditionError("pointwiseProduct: both paths must be based at the identity");
  int count = std::max(2, std::max(p.segmentCount(), q.segmentCount()) + 1);
  for (;; count = 2 * (count - 1) + 1) {
    if (count > kMaxGridPoints)
      throw RefinementExceeded("pointwiseProduct: grid cap reached without small gaps");
    std::vector<double> times(count);
    std::vector<Unitary> values;
    values.reserve(count);
    for (int j = 0; j < count; ++j) {
      times[j] = static_cast<double>(j) / (count - 1);
      values.push_back(Unitary(p.evaluate(times[j], tol).element() *
                                   q.evaluate(times[j], tol).element(),
                               tol));
    }
    bool fine = true;
    for (int j = 1; j < count && fine; ++j) {
      Element gap = values[j - 1].adjoint().element() * values[j].element() -
                    Element::identity(p.algebra());
      if (operatorNorm(gap) >= 1.0 - tol.gapSlack) fine = false;
    }
    if (fine) return SampledPath(std::move(times), std::move(values), tol);
  }
}

SegmentPath projectionLoop(const Projection& p) {
  return SegmentPath(Unitary::identity(p.algebra()), {Hermitian(p.element())});
}

SegmentPath amplifyPath(const SegmentPath& p, int m) {
  std::vector<Hermitian> generators;
  generators.reserve(p.segmentCount());
  for (const auto& g : p.generators()) generators.push_back(amplify(g, m));
  return SegmentPath(amplify(p.start(), m), std::move(generators));
}

SegmentPath exponentialPath(const Unitary& u) {
  return SegmentPath(Unitary::identity(u.algebra()), {hermitianExponent(u)});
}

SegmentPath leftTranslate(const Unitary& u, const SegmentPath& p) {
  requireSameAlgebra(u.algebra(), p.algebra(), "leftTranslate");
  return SegmentPath(Unitary(u.element() * p.start().element()), p.generators());
}

double supDistance(const SegmentPath& p, const Unitary& u0, int pointsPerSegment,
                   const Tolerances& tol) {
  requireSameAlgebra(p.algebra(), u0.algebra(), "supDistance");
  int m = std::max(1, p.segmentCount());
  double sup = 0.0;
  int perSegment = std::max(1, pointsPerSegment);
  for (int j = 0; j <= m * perSegment; ++j) {
    double t = static_cast<double>(j) / (m * perSegment);
    Unitary value = p.evaluate(t, tol);
    sup = std::max(sup, operatorNorm(value.element() - u0.element()));
  }
  return sup;
}

}  // namespace ucov
