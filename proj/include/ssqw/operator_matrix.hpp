// Dense lattice operators with explicit boundary bookkeeping.
//
// Every operator in this library acts on a finite window of the 1D integer
// lattice, either as an exact cyclic model (wrap-around index arithmetic,
// used when operator identities must hold to machine precision) or as a
// plain truncation of a half-line / full-line operator (used for spectral
// numerics, where the far edge is controlled by heat-kernel propagation
// bounds).  The window records which lattice sites the matrix indices mean,
// and a component count distinguishes scalar operators on l2(Z) from
// spinor-valued ones on l2(Z) (+) l2(Z).

#pragma once

#include <Eigen/Dense>
#include <complex>

namespace ssqw {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// How the finite matrix relates to the infinite lattice operator.
enum class Boundary {
  Cyclic,             ///< wrap-around shifts; operator algebra is exact
  HalfLineTruncated,  ///< sites {0, 1, ..., n-1} of a half-line operator
  FullLineTruncated,  ///< symmetric window of a full-line operator, cut off
};

/// Contiguous block of lattice sites represented by a matrix.
struct Window {
  long first = 0;   ///< lattice coordinate of matrix index 0
  long length = 0;  ///< number of sites

  long last() const { return first + length - 1; }
  bool contains(long site) const { return site >= first && site <= last(); }
};

/// Square matrix plus the lattice metadata needed to interpret it.
///
/// For components == 1 the flat index i means site window.first + i.
/// For components == 2 (spinor-valued operators) indices [0, length) are the
/// first component and [length, 2*length) the second, so
/// dim == components * window.length always holds.
struct OperatorMatrix {
  Matrix entries;
  Boundary boundary = Boundary::FullLineTruncated;
  Window window;
  int components = 1;

  long dim() const { return entries.rows(); }

  /// Flat matrix index of (site, component).
  long index_of(long site, int component = 0) const {
    return component * window.length + (site - window.first);
  }
  /// Lattice site of a flat matrix index.
  long site_of(long index) const {
    return window.first + (index % window.length);
  }
  /// Component (0 or 1) of a flat matrix index.
  int component_of(long index) const {
    return static_cast<int>(index / window.length);
  }

  /// True when dim, window and component count are mutually consistent.
  bool shape_consistent() const {
    return entries.rows() == entries.cols() &&
           entries.rows() == static_cast<long>(components) * window.length &&
           (components == 1 || components == 2) && window.length >= 0;
  }
};

/// Eigensystem of a Hermitian operator, eigenvalues ascending.
struct EigenDecomposition {
  RealVector eigenvalues;
  Matrix eigenvectors;  ///< column k pairs with eigenvalues(k)
};

/// Nodes/weights for integrals over the angle parametrization (0, pi).
/// Invariants: nodes strictly inside (0, pi), weights positive, and constants
/// integrate to pi (checked by the unit tests to 1e-12).
struct QuadratureRule {
  RealVector nodes;
  RealVector weights;
};

}  // namespace ssqw
