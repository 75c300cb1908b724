#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ucov/rational.hpp"
#include "ucov/tolerances.hpp"

namespace ucov {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// A finite direct sum of complex matrix blocks M_{n_1} + ... + M_{n_k} with
// trace weights lambda_1..lambda_k > 0 summing to 1. The scalar trace is
// tau = sum_i lambda_i * tr_{n_i} (each block trace normalized), and the
// center-valued trace sends a block to its normalized trace times the block
// identity.
class TracialAlgebra {
 public:
  TracialAlgebra(std::vector<int> blockSizes, std::vector<double> traceWeights);

  // Single block M_n with weight 1.
  static TracialAlgebra matrixBlock(int n);

  int blockCount() const { return static_cast<int>(sizes_.size()); }
  int blockSize(int i) const { return sizes_.at(i); }
  double traceWeight(int i) const { return weights_.at(i); }
  const std::vector<int>& blockSizes() const { return sizes_; }
  const std::vector<double>& traceWeights() const { return weights_; }

  // Same block sizes and bitwise-equal weights.
  bool operator==(const TracialAlgebra& other) const;
  bool operator!=(const TracialAlgebra& other) const { return !(*this == other); }

  std::string describe() const;

 private:
  std::vector<int> sizes_;
  std::vector<double> weights_;
};

// Throws AlgebraMismatch unless a == b; `where` names the operation.
void requireSameAlgebra(const TracialAlgebra& a, const TracialAlgebra& b,
                        const char* where);

// An element of the algebra: one dense complex matrix per block.
class Element {
 public:
  Element(TracialAlgebra algebra, std::vector<Matrix> blocks);

  static Element zero(const TracialAlgebra& algebra);
  static Element identity(const TracialAlgebra& algebra);

  const TracialAlgebra& algebra() const { return algebra_; }
  int blockCount() const { return static_cast<int>(blocks_.size()); }
  const Matrix& block(int i) const { return blocks_.at(i); }

  Element adjoint() const;

  friend Element operator+(const Element& x, const Element& y);
  friend Element operator-(const Element& x, const Element& y);
  friend Element operator*(const Element& x, const Element& y);
  friend Element operator*(Complex scalar, const Element& x);
  Element operator-() const;

 private:
  TracialAlgebra algebra_;
  std::vector<Matrix> blocks_;
};

// Self-adjoint part of the center: one real coordinate per block (the
// coefficient of the block identity). Codomain of the center-valued trace
// and of the pre-determinant.
class CenterVector {
 public:
  CenterVector(TracialAlgebra algebra, std::vector<double> coords);

  static CenterVector zero(const TracialAlgebra& algebra);

  const TracialAlgebra& algebra() const { return algebra_; }
  double operator[](int i) const { return coords_.at(i); }
  const std::vector<double>& coords() const { return coords_; }
  int size() const { return static_cast<int>(coords_.size()); }

  CenterVector operator+(const CenterVector& other) const;
  CenterVector operator-(const CenterVector& other) const;
  CenterVector operator-() const;

  double maxAbs() const;
  // max_i |this_i - other_i|
  double distance(const CenterVector& other) const;

 private:
  TracialAlgebra algebra_;
  std::vector<double> coords_;
};

// Center vector with exact rational coordinates; used wherever the lattice
// statements are exact (trace pairings, embedded loop classes).
class LatticeVector {
 public:
  LatticeVector(TracialAlgebra algebra, std::vector<Rational> coords);

  static LatticeVector zero(const TracialAlgebra& algebra);

  const TracialAlgebra& algebra() const { return algebra_; }
  const Rational& operator[](int i) const { return coords_.at(i); }
  const std::vector<Rational>& coords() const { return coords_; }
  int size() const { return static_cast<int>(coords_.size()); }

  LatticeVector operator+(const LatticeVector& other) const;
  LatticeVector operator-(const LatticeVector& other) const;
  LatticeVector operator-() const;
  bool operator==(const LatticeVector& other) const;

  CenterVector approx() const;
  bool isZero() const;

 private:
  TracialAlgebra algebra_;
  std::vector<Rational> coords_;
};

// Checked wrapper: ||u*u - 1|| <= tol.unitarity per block.
class Unitary {
 public:
  explicit Unitary(Element e, const Tolerances& tol = Tolerances::defaults());

  static Unitary identity(const TracialAlgebra& algebra);

  const Element& element() const { return e_; }
  const TracialAlgebra& algebra() const { return e_.algebra(); }
  const Matrix& block(int i) const { return e_.block(i); }

  Unitary adjoint() const;
  friend Unitary operator*(const Unitary& u, const Unitary& v);

 private:
  struct Trusted {};
  Unitary(Element e, Trusted) : e_(std::move(e)) {}
  Element e_;
};

// Checked wrapper: ||a - a*|| <= tol.hermiticity per block.
class Hermitian {
 public:
  explicit Hermitian(Element e, const Tolerances& tol = Tolerances::defaults());

  static Hermitian zero(const TracialAlgebra& algebra);

  const Element& element() const { return e_; }
  const TracialAlgebra& algebra() const { return e_.algebra(); }
  const Matrix& block(int i) const { return e_.block(i); }

  Hermitian operator-() const;
  Hermitian scaled(double s) const;

 private:
  Element e_;
};

// Checked wrapper: ||p^2 - p|| <= tol.idempotency, ||p - p*|| <=
// tol.hermiticity, and every eigenvalue within tol.projectionSpectrum of
// {0, 1}, per block.
class Projection {
 public:
  explicit Projection(Element e, const Tolerances& tol = Tolerances::defaults());

  static Projection zero(const TracialAlgebra& algebra);
  static Projection identity(const TracialAlgebra& algebra);
  // diag(1,...,1,0,...,0) with `ranks[i]` ones in block i.
  static Projection diagonal(const TracialAlgebra& algebra,
                             const std::vector<std::int64_t>& ranks);

  const Element& element() const { return e_; }
  const TracialAlgebra& algebra() const { return e_.algebra(); }
  const Matrix& block(int i) const { return e_.block(i); }

  // Block rank as the rounded block trace (residual-checked).
  std::int64_t rank(int i) const;
  std::vector<std::int64_t> ranks() const;

 private:
  Element e_;
};

// ---- operations ----

// Largest singular value over all blocks.
double operatorNorm(const Element& x);

// sum_i lambda_i * tr(block_i)/n_i.
Complex scalarTrace(const Element& x);

// Center-valued trace, coordinate i = tr(block_i)/n_i. Requires x to pass
// the Hermitian bound (the center-valued trace restricted to self-adjoints).
CenterVector centerTrace(const Element& x,
                         const Tolerances& tol = Tolerances::defaults());
CenterVector centerTrace(const Hermitian& a);

// e^{2 pi i a} via eigendecomposition per block.
Unitary expHermitian(const Hermitian& a);

// Principal logarithm scaled so that expHermitian(logUnitary(u)) == u:
// returns Hermitian a with spectrum in (-1/2, 1/2). Throws BranchFailure if
// any eigenvalue of u lies within tol.branchMargin radians of -1.
Hermitian logUnitary(const Unitary& u,
                     const Tolerances& tol = Tolerances::defaults());

// Like logUnitary but never fails: an eigenvalue at -1 maps to +1/2. The
// resulting spectrum lies in (-1/2, 1/2]. Use for constructing exponential
// paths to arbitrary unitaries, not for branch-sensitive reductions.
Hermitian hermitianExponent(const Unitary& u);

// Murray-von Neumann equivalence in a finite direct sum: equal block ranks.
bool mvnEquivalent(const Projection& p, const Projection& q);

// Diagonal projection whose center trace hits `target` exactly. Each target
// coordinate must be an integer multiple of 1/n_i in [0, 1] (within
// tol.latticeResidual); otherwise throws UnreachableTrace.
Projection projectionWithTrace(const TracialAlgebra& algebra,
                               const CenterVector& target,
                               const Tolerances& tol = Tolerances::defaults());

enum class AmplifyFill { Zero, Identity };

// Replaces every block size n_i by m*n_i, trace weights unchanged.
TracialAlgebra amplifiedAlgebra(const TracialAlgebra& algebra, int m);

// Embeds x in the top corner of each enlarged block, padding with zero or
// the identity on the complement.
Element amplify(const Element& x, int m, AmplifyFill fill);
Unitary amplify(const Unitary& u, int m);      // identity fill
Hermitian amplify(const Hermitian& a, int m);  // zero fill
Projection amplify(const Projection& p, int m);

// Closest unitary per block (polar factor via SVD). Explicit repair for
// accumulated drift; nothing in the library re-unitarizes silently.
Unitary reUnitarize(const Element& x,
                    const Tolerances& tol = Tolerances::defaults());

}  // namespace ucov
