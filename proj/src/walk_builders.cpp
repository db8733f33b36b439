#include "ssqw/walk_builders.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ssqw/core_ops.hpp"

namespace ssqw {

namespace {

constexpr Complex kImag{0.0, 1.0};

void require_even_window(const char* where, long n) {
  if (n < 4 || n % 2 != 0) {
    std::ostringstream msg;
    msg << where << ": window size must be even and >= 4, got " << n;
    throw std::invalid_argument(msg.str());
  }
}

// Index bookkeeping for a window [-n/2, n/2) with optional wrap-around.
struct Lattice {
  long n;
  bool cyclic;

  long first() const { return -n / 2; }
  long site(long index) const { return first() + index; }
  // Flat index of a lattice site, or -1 if outside a truncated window.
  long index(long s) const {
    if (cyclic) {
      long i = (s - first()) % n;
      if (i < 0) i += n;
      return i;
    }
    const long i = s - first();
    return (i >= 0 && i < n) ? i : -1;
  }
  // Sequence lookup site: wrapped onto the window when cyclic (so cyclic
  // operators are built from the periodized sequences), untouched otherwise.
  long seq_site(long s) const { return cyclic ? site(index(s)) : s; }
};

Lattice make_lattice(const char* where, long n, Boundary boundary) {
  require_even_window(where, n);
  if (boundary == Boundary::HalfLineTruncated) {
    std::ostringstream msg;
    msg << where
        << ": boundary must be Cyclic (exact algebra) or FullLineTruncated";
    throw std::invalid_argument(msg.str());
  }
  return {n, boundary == Boundary::Cyclic};
}

}  // namespace

WalkOperators build_walk(const WalkCoefficients& c, long n, Boundary boundary) {
  const Lattice lat = make_lattice("build_walk", n, boundary);
  const Window window{lat.first(), n};

  Matrix gamma = Matrix::Zero(2 * n, 2 * n);
  Matrix gamma_prime = Matrix::Zero(2 * n, 2 * n);
  auto up = [n](long i) { return i; };        // first lattice copy
  auto dn = [n](long i) { return n + i; };    // second lattice copy

  for (long i = 0; i < n; ++i) {
    const long x = lat.site(i);

    gamma(up(i), up(i)) = c.p(x);
    gamma(dn(i), dn(i)) = -c.p(lat.seq_site(x - 1));
    // hopping blocks: (q L psi)(x) = q(x) psi(x+1) and its adjoint
    const long right = lat.index(x + 1);
    if (right >= 0) gamma(up(i), dn(right)) = c.q(x);
    const long left = lat.index(x - 1);
    if (left >= 0) gamma(dn(i), up(left)) = std::conj(c.q(lat.seq_site(x - 1)));

    gamma_prime(up(i), up(i)) = c.a(x);
    gamma_prime(up(i), dn(i)) = std::conj(c.b(x));
    gamma_prime(dn(i), up(i)) = c.b(x);
    gamma_prime(dn(i), dn(i)) = -c.a(x);
  }

  WalkOperators ops;
  ops.gamma = {std::move(gamma), boundary, window, 2};
  ops.gamma_prime = {std::move(gamma_prime), boundary, window, 2};
  Matrix u = ops.gamma.entries * ops.gamma_prime.entries;
  Matrix q = (u - u.adjoint()) / (2.0 * kImag);
  ops.walk = {std::move(u), boundary, window, 2};
  ops.supercharge = {std::move(q), boundary, window, 2};
  return ops;
}

OperatorMatrix build_qe0(const WalkCoefficients& c, long n, Boundary boundary) {
  const Lattice lat = make_lattice("build_qe0", n, boundary);
  Matrix qr = Matrix::Zero(n, n);

  auto splus = [&](long s) { return std::sqrt(1.0 + c.p(s)); };
  auto sminus = [&](long s) { return std::sqrt(1.0 - c.p(s)); };
  auto phase = [&](long s) { return std::arg(c.q(s)); };

  for (long i = 0; i < n; ++i) {
    const long x = lat.site(i);

    // diagonal: -(i/2) |q(x)| (a(x) + a(x+1))
    qr(i, i) = -0.5 * kImag * std::abs(c.q(x)) *
               (c.a(x) + c.a(lat.seq_site(x + 1)));

    // up-hopping: +(i/2) s+(x) b(x+1) e^{i arg q(x+1)} s+(x+1).  Both phase
    // factors sit at x+1: this is the exact compression convention, the one
    // that stays unitarily equivalent to Q on a cyclic window even when the
    // accumulated coin phase has nonzero holonomy around the ring.
    const long right = lat.index(x + 1);
    if (right >= 0) {
      const long xr = lat.seq_site(x + 1);
      qr(i, right) = 0.5 * kImag * splus(x) * c.b(xr) *
                     std::polar(1.0, phase(xr)) * splus(xr);
    }

    // down-hopping: -(i/2) s-(x) conj(b(x)) e^{-i arg q(x)} s-(x-1)
    const long left = lat.index(x - 1);
    if (left >= 0) {
      const long xl = lat.seq_site(x - 1);
      qr(i, left) = -0.5 * kImag * sminus(x) * std::conj(c.b(x)) *
                    std::polar(1.0, -phase(x)) * sminus(xl);
    }
  }
  return {std::move(qr), boundary, {lat.first(), n}, 1};
}

ChiralBlock chiral_block_extract(const OperatorMatrix& gamma,
                                 const OperatorMatrix& q, double cluster_tol) {
  if (gamma.dim() != q.dim()) {
    throw std::invalid_argument(
        "chiral_block_extract: gamma and q dimensions differ");
  }
  const EigenDecomposition ed = hermitian_eig(gamma);

  long minus_dim = 0;
  for (long i = 0; i < ed.eigenvalues.size(); ++i) {
    const double lambda = ed.eigenvalues(i);
    if (std::abs(std::abs(lambda) - 1.0) > cluster_tol) {
      std::ostringstream msg;
      msg << "chiral_block_extract: eigenvalue " << lambda
          << " is not within " << cluster_tol << " of +-1";
      throw std::invalid_argument(msg.str());
    }
    if (lambda < 0.0) ++minus_dim;
  }
  // Ascending order puts the -1 cluster first.
  const long plus_dim = ed.eigenvalues.size() - minus_dim;
  const Matrix basis_minus = ed.eigenvectors.leftCols(minus_dim);
  const Matrix basis_plus = ed.eigenvectors.rightCols(plus_dim);

  ChiralBlock result;
  result.block = basis_minus.adjoint() * q.entries * basis_plus;
  result.plus_dim = plus_dim;
  result.minus_dim = minus_dim;
  return result;
}

SplitResult split_at_origin(const OperatorMatrix& m, double rank_tol) {
  if (m.components != 1) {
    throw std::invalid_argument("split_at_origin: expected a scalar operator");
  }
  if (!m.window.contains(-1) || !m.window.contains(0)) {
    std::ostringstream msg;
    msg << "split_at_origin: window [" << m.window.first << ", "
        << m.window.last() << "] does not contain the cut bond (-1, 0)";
    throw std::invalid_argument(msg.str());
  }
  const long n = m.dim();
  const long cut = m.index_of(0);  // first index of the nonnegative side

  Matrix split = Matrix::Zero(n, n);
  split.topLeftCorner(cut, cut) = m.entries.topLeftCorner(cut, cut);
  split.bottomRightCorner(n - cut, n - cut) =
      m.entries.bottomRightCorner(n - cut, n - cut);

  SplitResult result;
  result.defect = {m.entries - split, m.boundary, m.window, 1};
  result.split = {std::move(split), m.boundary, m.window, 1};

  Eigen::BDCSVD<Matrix> svd(result.defect.entries);
  result.defect_rank =
      (svd.singularValues().array() > rank_tol).count();
  return result;
}

std::pair<OperatorMatrix, OperatorMatrix> reindex_halflines(
    const OperatorMatrix& m) {
  if (m.components != 1 || !m.window.contains(-1) || !m.window.contains(0)) {
    throw std::invalid_argument(
        "reindex_halflines: need a scalar operator whose window contains "
        "sites -1 and 0");
  }
  const long n = m.dim();
  const long cut = m.index_of(0);
  const double coupling =
      std::max(m.entries.topRightCorner(cut, n - cut).cwiseAbs().maxCoeff(),
               m.entries.bottomLeftCorner(n - cut, cut).cwiseAbs().maxCoeff());
  if (coupling != 0.0) {
    std::ostringstream msg;
    msg << "reindex_halflines: operator couples the two sides of the cut "
           "(max cross entry "
        << coupling << "); split it first";
    throw std::invalid_argument(msg.str());
  }

  // Negative side: site x maps to half-line coordinate -x - 1, so the matrix
  // block (ascending in x) is read out in reversed order.
  const long minus_len = cut;
  Matrix minus(minus_len, minus_len);
  for (long i = 0; i < minus_len; ++i) {
    for (long j = 0; j < minus_len; ++j) {
      minus(i, j) = m.entries(m.index_of(-i - 1), m.index_of(-j - 1));
    }
  }
  Matrix plus = m.entries.bottomRightCorner(n - cut, n - cut);

  OperatorMatrix minus_op{std::move(minus), Boundary::HalfLineTruncated,
                          {0, minus_len}, 1};
  OperatorMatrix plus_op{std::move(plus), Boundary::HalfLineTruncated,
                         {0, n - cut}, 1};
  return {std::move(minus_op), std::move(plus_op)};
}

double reduction_residual(const WalkCoefficients& c, long n) {
  require_even_window("reduction_residual", n);
  // constants of the one-sided comparison operators, in phase-free form
  const WalkCoefficients cf = c.phase_free();
  const AnisotropicLimits& l = cf.limits();

  const OperatorMatrix qr = build_qe0(cf, n, Boundary::FullLineTruncated);

  Matrix glued = Matrix::Zero(n, n);
  auto fill_side = [&](long begin_index, long end_index, double a, double p,
                       double b, double q) {
    // (i/2) [ (1+p) b L - (1-p) b L* - 2 q a ] restricted to one side
    for (long i = begin_index; i < end_index; ++i) {
      glued(i, i) = -kImag * q * a;
      if (i + 1 < end_index) {
        glued(i, i + 1) = 0.5 * kImag * (1.0 + p) * b;
        glued(i + 1, i) = -0.5 * kImag * (1.0 - p) * b;
      }
    }
  };
  const long cut = qr.index_of(0);
  fill_side(0, cut, l.a_minus, l.p_minus, l.b_minus.real(), l.q_minus.real());
  fill_side(cut, n, l.a_plus, l.p_plus, l.b_plus.real(), l.q_plus.real());

  OperatorMatrix difference{qr.entries - glued, Boundary::FullLineTruncated,
                            qr.window, 1};
  return trace_norm(difference);
}

}  // namespace ssqw
