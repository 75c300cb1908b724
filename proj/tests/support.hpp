#pragma once

// Shared fixtures and test-side oracles. Anything here that duplicates a
// library computation does so deliberately by a different route (fixed grids,
// finite differences) so the tests stay independent of the code under test.

#include <cmath>
#include <numbers>
#include <vector>

#include "ucov/algebra.hpp"
#include "ucov/paths.hpp"
#include "ucov/random.hpp"

namespace ucov::testing {

inline TracialAlgebra m2() { return TracialAlgebra::matrixBlock(2); }

inline TracialAlgebra m2m3() { return TracialAlgebra({2, 3}, {0.4, 0.6}); }

inline TracialAlgebra m2m1() { return TracialAlgebra({2, 1}, {0.5, 0.5}); }

inline Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// Pre-determinant by quadrature of the logarithmic derivative, with the
// derivative taken by central finite differences. Shares nothing with the
// segment-trace identity the library uses. Nodes are strict segment
// midpoints offset so the difference stencil never straddles a segment
// boundary kink.
inline std::vector<double> quadraturePreDeterminant(const SegmentPath& p,
                                                    int nodesPerSegment = 8,
                                                    double h = 1e-6) {
  const double twoPi = 2.0 * std::numbers::pi;
  int m = p.segmentCount();
  std::vector<double> result(p.algebra().blockCount(), 0.0);
  for (int j = 0; j < m; ++j) {
    for (int q = 0; q < nodesPerSegment; ++q) {
      double t = (j + (q + 0.5) / nodesPerSegment) / m;
      Unitary plus = p.evaluate(t + h);
      Unitary minus = p.evaluate(t - h);
      Unitary at = p.evaluate(t);
      for (int i = 0; i < p.algebra().blockCount(); ++i) {
        Matrix derivative = (plus.block(i) - minus.block(i)) / (2.0 * h);
        // unitary inverse is the adjoint
        Complex logDeriv = (derivative * at.block(i).adjoint()).trace();
        // (1/2 pi i) tr(...) integrated by the midpoint rule, normalized
        result[i] += (logDeriv / Complex(0.0, twoPi)).real() /
                     (m * nodesPerSegment * p.algebra().blockSize(i));
      }
    }
  }
  return result;
}

// Winding by plain argument accumulation on one fixed fine grid - no
// adaptive refinement, no residual logic. Valid when the grid is fine
// enough, which callers ensure by passing a large count.
inline std::vector<double> fixedGridWindingTurns(const SegmentPath& p,
                                                 int gridPoints) {
  const double pi = std::numbers::pi;
  int blocks = p.algebra().blockCount();
  std::vector<double> total(blocks, 0.0);
  std::vector<double> prev(blocks);
  for (int i = 0; i < blocks; ++i) {
    Complex det = p.evaluate(0.0).block(i).determinant();
    prev[i] = std::atan2(det.imag(), det.real());
  }
  for (int g = 1; g < gridPoints; ++g) {
    double t = static_cast<double>(g) / (gridPoints - 1);
    Unitary u = p.evaluate(t);
    for (int i = 0; i < blocks; ++i) {
      Complex det = u.block(i).determinant();
      double arg = std::atan2(det.imag(), det.real());
      double inc = arg - prev[i];
      if (inc > pi) inc -= 2.0 * pi;
      if (inc <= -pi) inc += 2.0 * pi;
      total[i] += inc;
      prev[i] = arg;
    }
  }
  for (auto& v : total) v /= 2.0 * pi;
  return total;
}

}  // namespace ucov::testing
