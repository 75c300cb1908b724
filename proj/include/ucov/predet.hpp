#pragma once

#include <cstdint>
#include <vector>

#include "ucov/paths.hpp"

namespace ucov {

// Per-block winding numbers of the determinant along a loop of unitaries.
// Exact integers; the finite-dimensional image of the pre-determinant
// restricted to loops.
class WindingVector {
 public:
  WindingVector(TracialAlgebra algebra, std::vector<std::int64_t> winds);

  static WindingVector zero(const TracialAlgebra& algebra);

  const TracialAlgebra& algebra() const { return algebra_; }
  std::int64_t operator[](int i) const { return winds_.at(i); }
  const std::vector<std::int64_t>& winds() const { return winds_; }
  int size() const { return static_cast<int>(winds_.size()); }

  WindingVector operator+(const WindingVector& other) const;
  WindingVector operator-() const;
  bool operator==(const WindingVector& other) const;
  bool isZero() const;

 private:
  TracialAlgebra algebra_;
  std::vector<std::int64_t> winds_;
};

// The pre-determinant of a segment path, as a center vector. On an
// exponential segment the integrand (1/2 pi i) p'(t) p(t)^{-1} is the
// conjugated generator, so the path integral collapses exactly to
// sum_j centerTrace(a_j); no quadrature is involved.
CenterVector preDeterminant(const SegmentPath& p);

// Unnormalized per-block data n_i * preDeterminant_i, i.e. the plain block
// traces sum_j tr(a_j | block i). This is the quantity invariant under
// amplification and the one the winding integers approximate.
std::vector<double> preDeterminantUnnormalized(const SegmentPath& p);

// Scalar-trace form sum_i lambda_i * preDeterminant_i.
double preDeterminantScalar(const SegmentPath& p);

// The closed form valid for short paths: (1/2 pi i) Tr(log endpoint).
// Requires ||p(t) - 1|| < 1 on a probe grid (PreconditionError otherwise).
// Agrees with preDeterminant whenever the precondition holds.
CenterVector shortPathFormula(const SegmentPath& p,
                              const Tolerances& tol = Tolerances::defaults());

struct WindingResult {
  WindingVector winds;
  // |accumulated angle / 2 pi - wind| per block, before snapping.
  std::vector<double> residuals;
  // grid size at which every increment fell below pi/2.
  int gridPoints = 0;
};

// Determinant-winding oracle: accumulates principal argument increments of
// t |-> det(block_i of p(t)) on a grid sized from a Lipschitz bound on the
// argument rate (8 n ||a_j|| steps per segment, so aliasing is impossible)
// and refined by doubling until every increment is below pi/2. Independent
// of the generator-trace route to the pre-determinant. Requires a closed
// path; residuals above tol.latticeResidual are a hard error, never rounded
// away.
WindingResult windingOracleDetailed(const SegmentPath& p,
                                    const Tolerances& tol = Tolerances::defaults());
WindingVector windingOracle(const SegmentPath& p,
                            const Tolerances& tol = Tolerances::defaults());

// Loop homotopy decision: equal winding vectors (exact integer equality),
// cross-checked against rounding of n_i * preDeterminant_i for both loops.
// Complete for loops in finite direct sums.
bool homotopyEquivalent(const SegmentPath& p, const SegmentPath& q,
                        const Tolerances& tol = Tolerances::defaults());

// Fuglede-Kadison determinant exp(tau(log|x|)) =
// prod_i |det(block_i)|^{lambda_i / n_i}. Requires every block singular
// value above tol.invertibility (NotInvertible otherwise). Identically 1 on
// unitaries.
double fugledeKadison(const Element& x,
                      const Tolerances& tol = Tolerances::defaults());

struct SmallBallReport {
  // sup ||p(t) - u0|| over the probe grid.
  double supDistance = 0.0;
  // whether the loop stayed inside the open radius-1/2 ball around u0.
  bool radiusBounded = false;
  // winding of the left-translated loop (valid only when radiusBounded).
  bool windingZero = false;
  // radiusBounded ? windingZero : vacuously true.
  bool verdict = false;
};

// Checks the small-ball null-homotopy invariant: a loop confined to an open
// ball of radius 1/2 around u0 has zero winding after left-translation by
// u0^*. If the loop leaves the ball the claim is vacuous and the verdict is
// true with radiusBounded = false.
SmallBallReport smallBallLoopCheck(const SegmentPath& p, const Unitary& u0,
                                   const Tolerances& tol = Tolerances::defaults());

}  // namespace ucov
