// Builders for the split-step walk and its reduced boundary generator.
//
// The walk acts on two copies of the lattice as U = Gamma Gamma', a product
// of two Hermitian unitaries:
//
//     Gamma  = [ p        q L          ]      Gamma' = [ a   conj(b) ]
//              [ L* conj(q)   -p(.-1)  ]               [ b   -a      ]
//
// with L the left shift (psi(x) -> psi(x+1)) and all letters site-dependent
// multiplication operators.  Gamma anticommutes with the imaginary part
// Q = (U - U*)/(2i), and rotating Q into the eigenbasis of Gamma compresses
// it to a single tridiagonal operator on one lattice copy,
//
//     Qr = (i/2) [ s+ L (b e^{i arg q}) s+  -  s- (conj(b) e^{-i arg q}) L* s-
//                  - |q| (a + a(.+1)) ],        s± := sqrt(1 ± p),
//
// which is what build_qe0 assembles entrywise; for phase-free coefficients
// the phase factors drop out and only the moduli remain.  Cyclic windows
// make every one of these identities exact at machine precision; plain
// truncation is used for the spectral numerics.

#pragma once

#include <utility>

#include "ssqw/coefficients.hpp"
#include "ssqw/operator_matrix.hpp"

namespace ssqw {

/// The walk's constituent operators on a common window.
struct WalkOperators {
  OperatorMatrix gamma;        ///< shift-side Hermitian unitary
  OperatorMatrix gamma_prime;  ///< coin-side Hermitian unitary
  OperatorMatrix walk;         ///< U = gamma * gamma_prime
  OperatorMatrix supercharge;  ///< Q = (U - U*) / (2i)
};

/// Builds the walk on the window [-n/2, n/2) (n even, spinor-valued, so the
/// matrices are 2n x 2n).  Boundary must be Cyclic (exact operator algebra)
/// or FullLineTruncated (plain cutoff for spectral numerics).
WalkOperators build_walk(const WalkCoefficients& c, long n,
                         Boundary boundary = Boundary::Cyclic);

/// The reduced boundary generator Qr above, on the scalar window [-n/2, n/2)
/// (n even).  Boundary Cyclic or FullLineTruncated.
OperatorMatrix build_qe0(const WalkCoefficients& c, long n, Boundary boundary);

/// Q compressed to the map ker(gamma - 1) -> ker(gamma + 1).
struct ChiralBlock {
  Matrix block;      ///< minus_dim x plus_dim matrix of the compression
  long plus_dim = 0;   ///< dim ker(gamma - 1)
  long minus_dim = 0;  ///< dim ker(gamma + 1)
};

/// Diagonalizes gamma (all eigenvalues must sit within cluster_tol of ±1)
/// and compresses q between the two eigenspaces.  Its singular values equal
/// those of the reduced generator on the same cyclic window.
ChiralBlock chiral_block_extract(const OperatorMatrix& gamma,
                                 const OperatorMatrix& q,
                                 double cluster_tol = 1e-8);

/// Decoupling of a full-line operator at the bond (-1, 0).
struct SplitResult {
  OperatorMatrix split;   ///< P- m P-  +  P+ m P+
  OperatorMatrix defect;  ///< m - split (supported on the cut bond)
  long defect_rank = 0;   ///< numerical rank of the defect
};

/// Splits a scalar full-line operator at the origin.  The window must
/// contain sites -1 and 0.  Rank is counted from singular values above
/// rank_tol.
SplitResult split_at_origin(const OperatorMatrix& m, double rank_tol = 1e-10);

/// Rewrites a cut-decoupled full-line operator as a pair of half-line
/// operators: (negative side reindexed by x -> -x - 1, nonnegative side
/// unchanged).  Throws if any matrix entry couples the two sides.
std::pair<OperatorMatrix, OperatorMatrix> reindex_halflines(
    const OperatorMatrix& m);

/// Trace-norm distance between the reduced generator (in phase-free form)
/// and the pair of constant-coefficient comparison operators glued over the
/// cut, on the n-site window [-n/2, n/2).  Its stabilization as n grows is
/// what makes the two-sided limit data meaningful.
double reduction_residual(const WalkCoefficients& c, long n);

}  // namespace ssqw
