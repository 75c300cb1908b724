#pragma once

namespace ucov {

// Numerical tolerances used across the library. All operations take a
// Tolerances argument defaulting to Tolerances::defaults(); a CLI config file
// can override individual entries and every run report prints the active set.
struct Tolerances {
  // ||u*u - 1|| bound for the Unitary invariant (operator norm, per block).
  double unitarity = 1e-10;
  // ||a - a*|| bound for the Hermitian invariant.
  double hermiticity = 1e-12;
  // ||p^2 - p|| bound for the Projection invariant.
  double idempotency = 1e-10;
  // eigenvalues of a projection must lie within this of {0, 1}.
  double projectionSpectrum = 1e-8;
  // angular margin (radians) an eigenvalue must keep from -1 before the
  // principal logarithm is attempted.
  double branchMargin = 1e-6;
  // delta_gap: sample gaps must satisfy ||u^-1 v - 1|| < 1 - gapSlack.
  double gapSlack = 0.05;
  // a quantity that must round to an integer may differ from it by this much.
  double latticeResidual = 1e-6;
  // endpoint distance below which a path counts as closed.
  double loopClosure = 1e-9;
  // |det(u_i) - exp(2 pi i n_i w_i)| bound for covering elements.
  double coverCompatibility = 1e-8;
  // smallest singular value below which an element counts as singular.
  double invertibility = 1e-10;

  static const Tolerances& defaults();
};

}  // namespace ucov
