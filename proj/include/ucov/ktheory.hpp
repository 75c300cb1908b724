#pragma once

#include <cstdint>
#include <vector>

#include "ucov/paths.hpp"
#include "ucov/predet.hpp"

namespace ucov {

// K_0 class of a finite direct sum: a formal difference of projection
// classes, i.e. one exact integer rank per block (negative entries allowed).
class K0Class {
 public:
  K0Class(TracialAlgebra algebra, std::vector<std::int64_t> ranks);

  static K0Class zero(const TracialAlgebra& algebra);

  const TracialAlgebra& algebra() const { return algebra_; }
  std::int64_t operator[](int i) const { return ranks_.at(i); }
  const std::vector<std::int64_t>& ranks() const { return ranks_; }
  int size() const { return static_cast<int>(ranks_.size()); }

  K0Class operator+(const K0Class& other) const;
  K0Class operator-() const;
  bool operator==(const K0Class& other) const;

 private:
  TracialAlgebra algebra_;
  std::vector<std::int64_t> ranks_;
};

// In finite direct sums the unitary group is connected, so K_1 is trivial;
// there is no operation to compute, only this documented fact.
inline constexpr bool kUnitaryGroupConnected = true;

// Per-block ranks of a projection. Murray-von Neumann equivalent projections
// give the same class.
K0Class k0FromProjection(const Projection& p);

// The trace pairing: coordinate i = rank_i / n_i, exact. Injective; its
// image is the lattice (1/n_1) Z + ... + (1/n_k) Z.
LatticeVector tracePairing(const K0Class& c);

// The loop -> K_0 identification: ranks = determinant windings.
K0Class loopToK0(const SegmentPath& loop,
                 const Tolerances& tol = Tolerances::defaults());

// The K_0 -> loop map on representable classes (0 <= rank_i <= n_i): the
// projection loop of a diagonal projection with the given ranks. Amplify
// first for larger ranks.
SegmentPath k0ToLoop(const K0Class& c);

}  // namespace ucov
