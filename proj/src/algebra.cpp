#include "ucov/algebra.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "ucov/errors.hpp"

namespace ucov {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double frobenius(const Matrix& m) { return m.norm(); }

// Largest singular value. The Frobenius norm dominates it, so callers can
// use frobenius() as a cheap sufficient bound first.
double spectralNorm(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.adjoint() * m);
  if (es.info() != Eigen::Success)
    throw Error("spectralNorm: eigensolver failed");
  double top = es.eigenvalues().maxCoeff();
  return std::sqrt(std::max(0.0, top));
}

}  // namespace

// ---- TracialAlgebra ----

TracialAlgebra::TracialAlgebra(std::vector<int> blockSizes,
                               std::vector<double> traceWeights)
    : sizes_(std::move(blockSizes)), weights_(std::move(traceWeights)) {
  if (sizes_.empty()) throw InvariantViolation("algebra: needs at least one block");
  if (sizes_.size() != weights_.size())
    throw InvariantViolation("algebra: block/weight count mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (sizes_[i] < 1)
      throw InvariantViolation("algebra: block size must be positive");
    if (!(weights_[i] > 0.0))
      throw InvariantViolation("algebra: trace weights must be positive");
    sum += weights_[i];
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw InvariantViolation("algebra: trace weights must sum to 1");
}

TracialAlgebra TracialAlgebra::matrixBlock(int n) {
  return TracialAlgebra({n}, {1.0});
}

bool TracialAlgebra::operator==(const TracialAlgebra& other) const {
  return sizes_ == other.sizes_ && weights_ == other.weights_;
}

std::string TracialAlgebra::describe() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (i) os << " + ";
    os << "M" << sizes_[i];
  }
  return os.str();
}

void requireSameAlgebra(const TracialAlgebra& a, const TracialAlgebra& b,
                        const char* where) {
  if (a != b)
    throw AlgebraMismatch(std::string(where) + ": operands live in different algebras");
}

// ---- Element ----

Element::Element(TracialAlgebra algebra, std::vector<Matrix> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
  if (static_cast<int>(blocks_.size()) != algebra_.blockCount())
    throw InvariantViolation("element: block count mismatch");
  for (int i = 0; i < algebra_.blockCount(); ++i) {
    int n = algebra_.blockSize(i);
    if (blocks_[i].rows() != n || blocks_[i].cols() != n)
      throw InvariantViolation("element: block " + std::to_string(i) +
                               " has wrong shape");
  }
}

Element Element::zero(const TracialAlgebra& algebra) {
  std::vector<Matrix> blocks;
  blocks.reserve(algebra.blockCount());
  for (int i = 0; i < algebra.blockCount(); ++i)
    blocks.push_back(Matrix::Zero(algebra.blockSize(i), algebra.blockSize(i)));
  return Element(algebra, std::move(blocks));
}

Element Element::identity(const TracialAlgebra& algebra) {
  std::vector<Matrix> blocks;
  blocks.reserve(algebra.blockCount());
  for (int i = 0; i < algebra.blockCount(); ++i)
    blocks.push_back(Matrix::Identity(algebra.blockSize(i), algebra.blockSize(i)));
  return Element(algebra, std::move(blocks));
}

Element Element::adjoint() const {
  std::vector<Matrix> blocks;
  blocks.reserve(blocks_.size());
  for (const auto& b : blocks_) blocks.push_back(b.adjoint());
  return Element(algebra_, std::move(blocks));
}

Element operator+(const Element& x, const Element& y) {
  requireSameAlgebra(x.algebra_, y.algebra_, "add");
  std::vector<Matrix> blocks;
  blocks.reserve(x.blocks_.size());
  for (std::size_t i = 0; i < x.blocks_.size(); ++i)
    blocks.push_back(x.blocks_[i] + y.blocks_[i]);
  return Element(x.algebra_, std::move(blocks));
}

Element operator-(const Element& x, const Element& y) {
  requireSameAlgebra(x.algebra_, y.algebra_, "sub");
  std::vector<Matrix> blocks;
  blocks.reserve(x.blocks_.size());
  for (std::size_t i = 0; i < x.blocks_.size(); ++i)
    blocks.push_back(x.blocks_[i] - y.blocks_[i]);
  return Element(x.algebra_, std::move(blocks));
}

Element operator*(const Element& x, const Element& y) {
  requireSameAlgebra(x.algebra_, y.algebra_, "multiply");
  std::vector<Matrix> blocks;
  blocks.reserve(x.blocks_.size());
  for (std::size_t i = 0; i < x.blocks_.size(); ++i)
    blocks.push_back(x.blocks_[i] * y.blocks_[i]);
  return Element(x.algebra_, std::move(blocks));
}

Element operator*(Complex scalar, const Element& x) {
  std::vector<Matrix> blocks;
  blocks.reserve(x.blocks_.size());
  for (const auto& b : x.blocks_) blocks.push_back(scalar * b);
  return Element(x.algebra_, std::move(blocks));
}

Element Element::operator-() const { return Complex(-1.0, 0.0) * *this; }

// ---- CenterVector / LatticeVector ----

CenterVector::CenterVector(TracialAlgebra algebra, std::vector<double> coords)
    : algebra_(std::move(algebra)), coords_(std::move(coords)) {
  if (static_cast<int>(coords_.size()) != algebra_.blockCount())
    throw InvariantViolation("center vector: coordinate count mismatch");
}

CenterVector CenterVector::zero(const TracialAlgebra& algebra) {
  return CenterVector(algebra, std::vector<double>(algebra.blockCount(), 0.0));
}

CenterVector CenterVector::operator+(const CenterVector& other) const {
  requireSameAlgebra(algebra_, other.algebra_, "center add");
  std::vector<double> c(coords_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += other.coords_[i];
  return CenterVector(algebra_, std::move(c));
}

CenterVector CenterVector::operator-(const CenterVector& other) const {
  return *this + (-other);
}

CenterVector CenterVector::operator-() const {
  std::vector<double> c(coords_);
  for (auto& v : c) v = -v;
  return CenterVector(algebra_, std::move(c));
}

double CenterVector::maxAbs() const {
  double m = 0.0;
  for (double v : coords_) m = std::max(m, std::abs(v));
  return m;
}

double CenterVector::distance(const CenterVector& other) const {
  return (*this - other).maxAbs();
}

LatticeVector::LatticeVector(TracialAlgebra algebra, std::vector<Rational> coords)
    : algebra_(std::move(algebra)), coords_(std::move(coords)) {
  if (static_cast<int>(coords_.size()) != algebra_.blockCount())
    throw InvariantViolation("lattice vector: coordinate count mismatch");
}

LatticeVector LatticeVector::zero(const TracialAlgebra& algebra) {
  return LatticeVector(algebra, std::vector<Rational>(algebra.blockCount(), Rational(0)));
}

LatticeVector LatticeVector::operator+(const LatticeVector& other) const {
  requireSameAlgebra(algebra_, other.algebra_, "lattice add");
  std::vector<Rational> c(coords_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += other.coords_[i];
  return LatticeVector(algebra_, std::move(c));
}

LatticeVector LatticeVector::operator-(const LatticeVector& other) const {
  return *this + (-other);
}

LatticeVector LatticeVector::operator-() const {
  std::vector<Rational> c(coords_);
  for (auto& v : c) v = -v;
  return LatticeVector(algebra_, std::move(c));
}

bool LatticeVector::operator==(const LatticeVector& other) const {
  return algebra_ == other.algebra_ && coords_ == other.coords_;
}

CenterVector LatticeVector::approx() const {
  std::vector<double> c;
  c.reserve(coords_.size());
  for (const auto& q : coords_) c.push_back(toDouble(q));
  return CenterVector(algebra_, std::move(c));
}

bool LatticeVector::isZero() const {
  for (const auto& q : coords_)
    if (q != 0) return false;
  return true;
}

// ---- checked wrappers ----

Unitary::Unitary(Element e, const Tolerances& tol) : e_(std::move(e)) {
  for (int i = 0; i < e_.blockCount(); ++i) {
    Matrix defect = e_.block(i).adjoint() * e_.block(i) -
                    Matrix::Identity(e_.block(i).rows(), e_.block(i).cols());
    // Frobenius dominates the operator norm; settle borderline cases exactly.
    if (frobenius(defect) <= tol.unitarity) continue;
    if (spectralNorm(defect) > tol.unitarity)
      throw InvariantViolation("unitary: ||u*u - 1|| exceeds tolerance in block " +
                               std::to_string(i));
  }
}

Unitary Unitary::identity(const TracialAlgebra& algebra) {
  return Unitary(Element::identity(algebra), Trusted{});
}

Unitary Unitary::adjoint() const { return Unitary(e_.adjoint(), Trusted{}); }

Unitary operator*(const Unitary& u, const Unitary& v) {
  return Unitary(u.e_ * v.e_, Unitary::Trusted{});
}

Hermitian::Hermitian(Element e, const Tolerances& tol) : e_(std::move(e)) {
  for (int i = 0; i < e_.blockCount(); ++i) {
    if (frobenius(e_.block(i) - e_.block(i).adjoint()) > tol.hermiticity)
      throw InvariantViolation("hermitian: ||a - a*|| exceeds tolerance in block " +
                               std::to_string(i));
  }
}

Hermitian Hermitian::zero(const TracialAlgebra& algebra) {
  return Hermitian(Element::zero(algebra));
}

Hermitian Hermitian::operator-() const { return Hermitian(-e_); }

Hermitian Hermitian::scaled(double s) const {
  return Hermitian(Complex(s, 0.0) * e_);
}

Projection::Projection(Element e, const Tolerances& tol) : e_(std::move(e)) {
  for (int i = 0; i < e_.blockCount(); ++i) {
    const Matrix& p = e_.block(i);
    if (frobenius(p - p.adjoint()) > tol.hermiticity)
      throw InvariantViolation("projection: not self-adjoint in block " +
                               std::to_string(i));
    Matrix defect = p * p - p;
    if (frobenius(defect) > tol.idempotency && spectralNorm(defect) > tol.idempotency)
      throw InvariantViolation("projection: not idempotent in block " +
                               std::to_string(i));
    Eigen::SelfAdjointEigenSolver<Matrix> es((p + p.adjoint()) / 2.0);
    if (es.info() != Eigen::Success)
      throw Error("projection: eigensolver failed");
    for (int r = 0; r < es.eigenvalues().size(); ++r) {
      double lambda = es.eigenvalues()[r];
      if (std::min(std::abs(lambda), std::abs(lambda - 1.0)) > tol.projectionSpectrum)
        throw InvariantViolation("projection: eigenvalue off {0,1} in block " +
                                 std::to_string(i));
    }
  }
}

Projection Projection::zero(const TracialAlgebra& algebra) {
  return Projection(Element::zero(algebra));
}

Projection Projection::identity(const TracialAlgebra& algebra) {
  return Projection(Element::identity(algebra));
}

Projection Projection::diagonal(const TracialAlgebra& algebra,
                                const std::vector<std::int64_t>& ranks) {
  if (static_cast<int>(ranks.size()) != algebra.blockCount())
    throw InvariantViolation("diagonal projection: rank count mismatch");
  std::vector<Matrix> blocks;
  blocks.reserve(ranks.size());
  for (int i = 0; i < algebra.blockCount(); ++i) {
    int n = algebra.blockSize(i);
    if (ranks[i] < 0 || ranks[i] > n)
      throw InvariantViolation("diagonal projection: rank out of range in block " +
                               std::to_string(i));
    Matrix b = Matrix::Zero(n, n);
    for (std::int64_t r = 0; r < ranks[i]; ++r) b(r, r) = 1.0;
    blocks.push_back(std::move(b));
  }
  return Projection(Element(algebra, std::move(blocks)));
}

std::int64_t Projection::rank(int i) const {
  double tr = e_.block(i).trace().real();
  auto rounded = std::llround(tr);
  if (std::abs(tr - static_cast<double>(rounded)) > 1e-6)
    throw ResidualTooLarge("projection rank: block trace far from integer");
  return rounded;
}

std::vector<std::int64_t> Projection::ranks() const {
  std::vector<std::int64_t> r;
  r.reserve(e_.blockCount());
  for (int i = 0; i < e_.blockCount(); ++i) r.push_back(rank(i));
  return r;
}

// ---- operations ----

double operatorNorm(const Element& x) {
  double m = 0.0;
  for (int i = 0; i < x.blockCount(); ++i)
    m = std::max(m, spectralNorm(x.block(i)));
  return m;
}

Complex scalarTrace(const Element& x) {
  Complex sum = 0.0;
  for (int i = 0; i < x.blockCount(); ++i)
    sum += x.algebra().traceWeight(i) * x.block(i).trace() /
           static_cast<double>(x.algebra().blockSize(i));
  return sum;
}

CenterVector centerTrace(const Element& x, const Tolerances& tol) {
  for (int i = 0; i < x.blockCount(); ++i)
    if (frobenius(x.block(i) - x.block(i).adjoint()) > tol.hermiticity)
      throw PreconditionError("centerTrace: input is not self-adjoint");
  std::vector<double> coords;
  coords.reserve(x.blockCount());
  for (int i = 0; i < x.blockCount(); ++i)
    coords.push_back(x.block(i).trace().real() /
                     static_cast<double>(x.algebra().blockSize(i)));
  return CenterVector(x.algebra(), std::move(coords));
}

CenterVector centerTrace(const Hermitian& a) { return centerTrace(a.element()); }

Unitary expHermitian(const Hermitian& a) {
  std::vector<Matrix> blocks;
  blocks.reserve(a.element().blockCount());
  for (int i = 0; i < a.element().blockCount(); ++i) {
    const Matrix& b = a.block(i);
    Eigen::SelfAdjointEigenSolver<Matrix> es((b + b.adjoint()) / 2.0);
    if (es.info() != Eigen::Success)
      throw Error("expHermitian: eigensolver failed (degenerate input?)");
    Eigen::VectorXcd phases(es.eigenvalues().size());
    for (int r = 0; r < es.eigenvalues().size(); ++r) {
      double theta = kTwoPi * es.eigenvalues()[r];
      phases[r] = Complex(std::cos(theta), std::sin(theta));
    }
    blocks.push_back(es.eigenvectors() * phases.asDiagonal() *
                     es.eigenvectors().adjoint());
  }
  return Unitary(Element(a.algebra(), std::move(blocks)));
}

namespace {

// Shared core of logUnitary / hermitianExponent. The Schur form of a normal
// matrix is diagonal with orthonormal Schur basis, so this handles clustered
// eigenvalues without losing orthogonality. margin < 0 disables the branch
// check and sends angle pi to +1/2.
Hermitian unitaryLogImpl(const Unitary& u, double margin) {
  std::vector<Matrix> blocks;
  blocks.reserve(u.element().blockCount());
  for (int i = 0; i < u.element().blockCount(); ++i) {
    const Matrix& b = u.block(i);
    Eigen::ComplexSchur<Matrix> schur(b);
    if (schur.info() != Eigen::Success)
      throw Error("logUnitary: Schur decomposition failed");
    const Matrix& t = schur.matrixT();
    const Matrix& q = schur.matrixU();
    Eigen::VectorXd scaled(t.rows());
    for (int r = 0; r < t.rows(); ++r) {
      Complex lambda = t(r, r);
      double theta = std::atan2(lambda.imag(), lambda.real());
      if (margin >= 0.0 && std::numbers::pi - std::abs(theta) < margin)
        throw BranchFailure(
            "logUnitary: eigenvalue within branch margin of -1 in block " +
            std::to_string(i));
      scaled[r] = theta / kTwoPi;
    }
    Matrix log = q * scaled.asDiagonal() * q.adjoint();
    blocks.push_back((log + log.adjoint()) / 2.0);
  }
  return Hermitian(Element(u.algebra(), std::move(blocks)));
}

}  // namespace

Hermitian logUnitary(const Unitary& u, const Tolerances& tol) {
  return unitaryLogImpl(u, tol.branchMargin);
}

Hermitian hermitianExponent(const Unitary& u) { return unitaryLogImpl(u, -1.0); }

bool mvnEquivalent(const Projection& p, const Projection& q) {
  requireSameAlgebra(p.algebra(), q.algebra(), "mvnEquivalent");
  return p.ranks() == q.ranks();
}

Projection projectionWithTrace(const TracialAlgebra& algebra,
                               const CenterVector& target, const Tolerances& tol) {
  requireSameAlgebra(algebra, target.algebra(), "projectionWithTrace");
  std::vector<std::int64_t> ranks;
  ranks.reserve(algebra.blockCount());
  for (int i = 0; i < algebra.blockCount(); ++i) {
    double scaled = target[i] * algebra.blockSize(i);
    auto rounded = std::llround(scaled);
    if (std::abs(scaled - static_cast<double>(rounded)) > tol.latticeResidual ||
        rounded < 0 || rounded > algebra.blockSize(i))
      throw UnreachableTrace(
          "projectionWithTrace: coordinate " + std::to_string(i) +
          " is not a multiple of 1/" + std::to_string(algebra.blockSize(i)) +
          " in [0,1]");
    ranks.push_back(rounded);
  }
  return Projection::diagonal(algebra, ranks);
}

TracialAlgebra amplifiedAlgebra(const TracialAlgebra& algebra, int m) {
  if (m < 1) throw InvariantViolation("amplify: factor must be positive");
  std::vector<int> sizes;
  sizes.reserve(algebra.blockCount());
  for (int n : algebra.blockSizes()) sizes.push_back(m * n);
  return TracialAlgebra(sizes, algebra.traceWeights());
}

Element amplify(const Element& x, int m, AmplifyFill fill) {
  TracialAlgebra big = amplifiedAlgebra(x.algebra(), m);
  std::vector<Matrix> blocks;
  blocks.reserve(x.blockCount());
  for (int i = 0; i < x.blockCount(); ++i) {
    int n = x.algebra().blockSize(i);
    Matrix b = Matrix::Zero(m * n, m * n);
    if (fill == AmplifyFill::Identity) b.setIdentity();
    b.topLeftCorner(n, n) = x.block(i);
    blocks.push_back(std::move(b));
  }
  return Element(big, std::move(blocks));
}

Unitary amplify(const Unitary& u, int m) {
  return Unitary(amplify(u.element(), m, AmplifyFill::Identity));
}

Hermitian amplify(const Hermitian& a, int m) {
  return Hermitian(amplify(a.element(), m, AmplifyFill::Zero));
}

Projection amplify(const Projection& p, int m) {
  return Projection(amplify(p.element(), m, AmplifyFill::Zero));
}

Unitary reUnitarize(const Element& x, const Tolerances& tol) {
  std::vector<Matrix> blocks;
  blocks.reserve(x.blockCount());
  for (int i = 0; i < x.blockCount(); ++i) {
    Eigen::JacobiSVD<Matrix> svd(x.block(i),
                                 Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.singularValues().minCoeff() <= tol.invertibility)
      throw NotInvertible("reUnitarize: block " + std::to_string(i) +
                          " is numerically singular");
    blocks.push_back(svd.matrixU() * svd.matrixV().adjoint());
  }
  return Unitary(Element(x.algebra(), std::move(blocks)));
}

}  // namespace ucov
