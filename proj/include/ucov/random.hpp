#pragma once

#include <cstdint>

#include "ucov/algebra.hpp"
#include "ucov/paths.hpp"

namespace ucov {

// Deterministic generator for test data (splitmix64 core). Avoids the
// standard <random> distributions on purpose: their output is
// implementation-defined, and the CLI generation subcommand must produce
// identical files for identical seeds everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  // uniform in [0, 1)
  double uniform();
  // uniform in [lo, hi)
  double uniform(double lo, double hi);
  // uniform integer in [lo, hi]
  int uniformInt(int lo, int hi);
  // standard normal (Box-Muller)
  double gaussian();
  Complex gaussianComplex();

 private:
  std::uint64_t state_;
  bool haveSpare_ = false;
  double spare_ = 0.0;
};

// Random algebra with blockCount in [1, maxBlocks], sizes in [1, maxSize],
// weights positive and normalized.
TracialAlgebra randomAlgebra(Rng& rng, int maxBlocks = 3, int maxSize = 5);

// Gaussian Hermitian scaled to operator norm <= scale.
Hermitian randomHermitian(const TracialAlgebra& algebra, double scale, Rng& rng);

// Haar-distributed unitary per block (QR of a Ginibre matrix with phase fix).
Unitary randomUnitary(const TracialAlgebra& algebra, Rng& rng);

// u diag(1..1,0..0) u* with random ranks (or the given ones).
Projection randomProjection(const TracialAlgebra& algebra, Rng& rng);
Projection randomProjectionWithRanks(const TracialAlgebra& algebra,
                                     const std::vector<std::int64_t>& ranks,
                                     Rng& rng);

// Path based at 1 with `segments` generators of norm <= scale.
SegmentPath randomPath(const TracialAlgebra& algebra, int segments, double scale,
                       Rng& rng);

// Closed path based at 1: a random path, a closing exponential segment back
// to 1, and a few conjugated projection loops to spread the winding.
SegmentPath randomLoop(const TracialAlgebra& algebra, Rng& rng,
                       int extraProjectionLoops = 2);

// Loop based at 1 confined to a ball of the given radius around 1: pairs of
// generators played forward then backward in palindrome order.
SegmentPath randomSmallLoop(const TracialAlgebra& algebra, double radius,
                            Rng& rng);

}  // namespace ucov
