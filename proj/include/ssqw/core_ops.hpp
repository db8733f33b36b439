// Shared dense-operator toolbox: shift generators, Hermitian spectral
// calculus, trace norms, heat-semigroup trace differences, resolvent
// entries, and quadrature against the semicircle spectral measure of the
// free hopping operator v + v*.
//
// Everything here is deliberately boring numerics; the model-specific
// structure lives in the walk/half-line modules built on top.

#pragma once

#include <functional>

#include "ssqw/operator_matrix.hpp"

namespace ssqw {

/// Cyclic left shift on n sites: (S psi)(x) = psi(x + 1 mod n).
/// As a matrix, basis vector delta_x is mapped to delta_{x-1 mod n}.
/// Requires n >= 2.
OperatorMatrix cyclic_shift(long n);

/// Right shift on the half-line window {0, ..., n-1}: v delta_x = delta_{x+1}
/// (and the last column is annihilated by the truncation).  Satisfies
/// v*v = 1 - e_{n-1}e_{n-1}* and vv* = 1 - e_0 e_0* exactly.  Requires n >= 2.
OperatorMatrix halfline_shift(long n);

/// Eigendecomposition of a Hermitian operator.  Throws std::invalid_argument
/// if the matrix deviates from Hermitian by more than hermiticity_tol in
/// max-abs norm (message reports the deviation).
EigenDecomposition hermitian_eig(const OperatorMatrix& m,
                                 double hermiticity_tol = 1e-12);

/// Eigenvalues only (ascending); same Hermiticity contract as hermitian_eig.
/// Real-symmetric input is detected and dispatched to the faster real solver.
RealVector hermitian_eigenvalues(const OperatorMatrix& m,
                                 double hermiticity_tol = 1e-12);

/// Tr exp(-t m1) - Tr exp(-t m0) for Hermitian m1, m0 of equal dimension.
/// Summed as paired differences of ascending eigenvalues, which keeps the
/// result accurate when the two heat traces individually dwarf their
/// difference.  Requires t > 0 and matching dimensions.
double heat_trace_diff(const OperatorMatrix& m1, const OperatorMatrix& m0,
                       double t);

/// Same heat-trace difference evaluated from precomputed spectra (both
/// ascending, equal length).  Callers sampling many t values decompose once
/// and loop over this.
double heat_trace_diff_spectra(const RealVector& spectrum1,
                               const RealVector& spectrum0, double t);

/// Trace norm (sum of singular values).
double trace_norm(const OperatorMatrix& m);

/// Operator norm (largest singular value).
double operator_norm(const OperatorMatrix& m);

/// Result of checking ||exp(z h1) - exp(z h0)||_1 against its analytic bound
/// |z| e^{|z| max(||h1||, ||h0||)} ||h1 - h0||_1 for Hermitian h1, h0.
struct ExpBoundCheck {
  double lhs = 0.0;  ///< trace norm of the exponential difference
  double rhs = 0.0;  ///< the product bound
  bool holds = false;
};

/// Evaluates both sides of the exponential-difference trace-norm bound.
/// Inputs must be Hermitian (exponentials are formed spectrally); z may be
/// any complex number.
ExpBoundCheck exp_difference_bound_check(const OperatorMatrix& h1,
                                         const OperatorMatrix& h0, Complex z);

/// First diagonal entry <delta_0, (m - z)^{-1} delta_0> of the resolvent.
/// The shifted matrix is solved sparsely, so banded operators at n ~ 4000
/// cost O(n) rather than O(n^3).  Throws std::runtime_error if m - z is
/// numerically singular (z too close to the spectrum).
Complex resolvent_entry(const OperatorMatrix& m, Complex z);

/// Uniform midpoint rule in the angle variable on (0, pi).  Spectrally
/// accurate for integrands that extend to smooth 2pi-periodic functions,
/// which covers every use in this library.
QuadratureRule angle_midpoint_rule(int count = 16384);

/// Integral of g against the semicircle measure sqrt(4 - t^2)/(2 pi) dt on
/// (-2, 2), i.e. the spectral measure of delta_0 under v + v* on the
/// half-line.  Uses t = 2 cos(theta) and the midpoint rule above; moments
/// <t^{2k}> reproduce the Catalan numbers to ~1e-15.
double semicircle_integral(const std::function<double(double)>& g,
                           int node_count = 16384);
double semicircle_integral(const std::function<double(double)>& g,
                           const QuadratureRule& rule);

}  // namespace ssqw
