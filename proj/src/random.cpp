#include "ucov/random.hpp"

#include <cmath>
#include <numbers>

#include "ucov/errors.hpp"

namespace ucov {

std::uint64_t Rng::next() {
  // splitmix64
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int Rng::uniformInt(int lo, int hi) {
  // modulo bias is irrelevant for test-data ranges (spans << 2^64)
  return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
}

double Rng::gaussian() {
  if (haveSpare_) {
    haveSpare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  while (u1 == 0.0) u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  haveSpare_ = true;
  return r * std::cos(theta);
}

Complex Rng::gaussianComplex() {
  double re = gaussian();
  double im = gaussian();
  return Complex(re, im);
}

TracialAlgebra randomAlgebra(Rng& rng, int maxBlocks, int maxSize) {
  int blocks = rng.uniformInt(1, maxBlocks);
  std::vector<int> sizes;
  std::vector<double> weights;
  double sum = 0.0;
  for (int i = 0; i < blocks; ++i) {
    sizes.push_back(rng.uniformInt(1, maxSize));
    double w = rng.uniform(0.2, 1.0);
    weights.push_back(w);
    sum += w;
  }
  double acc = 0.0;
  for (int i = 0; i + 1 < blocks; ++i) {
    weights[i] /= sum;
    acc += weights[i];
  }
  weights[blocks - 1] = 1.0 - acc;  // exact normalization
  return TracialAlgebra(std::move(sizes), std::move(weights));
}

Hermitian randomHermitian(const TracialAlgebra& algebra, double scale, Rng& rng) {
  std::vector<Matrix> blocks;
  blocks.reserve(algebra.blockCount());
  for (int i = 0; i < algebra.blockCount(); ++i) {
    int n = algebra.blockSize(i);
    Matrix g(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) g(r, c) = rng.gaussianComplex();
    blocks.push_back((g + g.adjoint()) / 2.0);
  }
  Element raw(algebra, std::move(blocks));
  double norm = operatorNorm(raw);
  if (norm > 0.0 && norm > scale)
    raw = Complex(scale / norm, 0.0) * raw;
  return Hermitian(raw);
}

Unitary randomUnitary(const TracialAlgebra& algebra, Rng& rng) {
  std::vector<Matrix> blocks;
  blocks.reserve(algebra.blockCount());
  for (int i = 0; i < algebra.blockCount(); ++i) {
    int n = algebra.blockSize(i);
    Matrix g(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) g(r, c) = rng.gaussianComplex();
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // fix the phase ambiguity so Q is Haar-distributed
    for (int c = 0; c < n; ++c) {
      Complex d = r(c, c);
      double a = std::abs(d);
      q.col(c) *= a > 0.0 ? d / a : Complex(1.0, 0.0);
    }
    blocks.push_back(std::move(q));
  }
  return Unitary(Element(algebra, std::move(blocks)));
}

Projection randomProjectionWithRanks(const TracialAlgebra& algebra,
                                     const std::vector<std::int64_t>& ranks,
                                     Rng& rng) {
  Projection diag = Projection::diagonal(algebra, ranks);
  Unitary u = randomUnitary(algebra, rng);
  return Projection(u.element() * diag.element() * u.adjoint().element());
}

Projection randomProjection(const TracialAlgebra& algebra, Rng& rng) {
  std::vector<std::int64_t> ranks;
  ranks.reserve(algebra.blockCount());
  for (int i = 0; i < algebra.blockCount(); ++i)
    ranks.push_back(rng.uniformInt(0, algebra.blockSize(i)));
  return randomProjectionWithRanks(algebra, ranks, rng);
}

SegmentPath randomPath(const TracialAlgebra& algebra, int segments, double scale,
                       Rng& rng) {
  std::vector<Hermitian> generators;
  generators.reserve(segments);
  for (int j = 0; j < segments; ++j)
    generators.push_back(randomHermitian(algebra, scale, rng));
  return SegmentPath(Unitary::identity(algebra), std::move(generators));
}

SegmentPath randomLoop(const TracialAlgebra& algebra, Rng& rng,
                       int extraProjectionLoops) {
  SegmentPath open = randomPath(algebra, rng.uniformInt(1, 3), 0.2, rng);
  // close back to 1 with one exponential segment
  SegmentPath closing = exponentialPath(open.endpoint().adjoint());
  SegmentPath loop = concatenate(
      open, leftTranslate(open.endpoint(), closing));
  for (int j = 0; j < extraProjectionLoops; ++j) {
    Projection p = randomProjection(algebra, rng);
    loop = concatenate(loop, projectionLoop(p));
  }
  return loop;
}

SegmentPath randomSmallLoop(const TracialAlgebra& algebra, double radius,
                            Rng& rng) {
  if (radius <= 0.0 || radius >= 1.0)
    throw PreconditionError("randomSmallLoop: radius must lie in (0, 1)");
  // ||e^{2 pi i a} - 1|| <= 2 pi ||a||, so a palindrome a, b, -b, -a with
  // 2 pi (||a|| + ||b||) below the radius stays inside the ball and returns
  // to 1 exactly.
  double budget = radius / (2.0 * std::numbers::pi) / 2.5;
  Hermitian a = randomHermitian(algebra, budget, rng);
  Hermitian b = randomHermitian(algebra, budget, rng);
  Unitary ea = expHermitian(a);
  Unitary eb = expHermitian(b);
  SegmentPath first(Unitary::identity(algebra), {a});
  SegmentPath second = leftTranslate(ea, SegmentPath(Unitary::identity(algebra), {b}));
  SegmentPath third = leftTranslate(Unitary(ea.element() * eb.element()),
                                    SegmentPath(Unitary::identity(algebra), {-b}));
  SegmentPath fourth =
      leftTranslate(ea, SegmentPath(Unitary::identity(algebra), {-a}));
  return concatenate(concatenate(first, second), concatenate(third, fourth));
}

}  // namespace ucov
