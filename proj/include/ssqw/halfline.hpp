// One-sided comparison operators of the reduced generator.
//
// Far from the cut the reduced generator looks like a banded Laurent-type
// operator with constant coefficients; compressing each side to a half-line
// gives the symbol operator
//
//     F(X) = (i/2) [ (1+p) b X - (1-p) b X* - 2 q a ],
//
// evaluated at X = v* (plus side) or X = v (minus side), where v is the
// right shift on the half-line and (a, b, p, q) are the one-sided limits in
// phase-free form (b, q >= 0).  The products F*F and FF* admit closed
// pentadiagonal forms with a rank-one defect at the boundary site, and when
// |a| = |p| they complete to a shifted square
//
//     T = ( (v + v*) + 2AP/(1-P^2) )^2  +  (2/(1-P)) |delta_0><delta_0|
//
// whose heat semigroup drives all the spectral-shift numerics downstream.

#pragma once

#include <optional>

#include "ssqw/operator_matrix.hpp"

namespace ssqw {

enum class Side { Plus, Minus };

/// One-sided limit data in phase-free form; b_lim, q_lim are the nonnegative
/// moduli pinned by the circle constraints.
struct FSymbol {
  Side side = Side::Plus;
  double a_lim = 0.0;
  double p_lim = 0.0;
  double b_lim = 0.0;
  double q_lim = 0.0;
};

/// Symbol from (a, p) alone, with b = sqrt(1-a^2), q = sqrt(1-p^2).
/// Requires |a| <= 1 and |p| <= 1.
FSymbol make_symbol(Side side, double a_lim, double p_lim);

/// F evaluated at a complex number (X -> z, X* -> conj z):
/// (i/2) [ (1+p) b z - (1-p) b conj(z) - 2 q a ].  On the unit circle
/// z = e^{-i theta} this is the Fredholm symbol of the half-line operator.
Complex f_symbol_eval(const FSymbol& s, Complex z);

/// The half-line operator F(v*) (plus side) or F(v) (minus side) truncated
/// to n sites.  Requires n >= 2.
OperatorMatrix build_F_halfline(const FSymbol& s, long n);

/// Which product of the half-line operator A = build_F_halfline to form.
enum class ProductKind { AstarA, AAstar };

/// Closed-form flavor: Expanded is the pentadiagonal normal form valid for
/// any limits; CompletedSquare is the shifted-square form, defined only when
/// |a| = |p| (throws otherwise).  The two agree except in the last row/column
/// touched by the far-edge truncation.
enum class ProductForm { Expanded, CompletedSquare };

/// Closed form of A*A or AA* on n sites, bypassing the matrix product:
/// (1/4) [ -b^2(1-p^2)(v^2 + v*^2) - 4abpq (v + v*)
///         + (2b^2(1+p^2) + 4a^2q^2) - omega |delta_0><delta_0| ],
/// where omega = b^2 (1 ± p)^2 depending on side and product kind.
OperatorMatrix product_closed_form(const FSymbol& s, ProductKind which, long n,
                                   ProductForm form = ProductForm::Expanded);

/// Parameters of the shifted-square operator family.
struct HalfLineParams {
  double P = 0.0;  ///< in (-1, 1)
  double A = 0.0;  ///< sign carrier with |A| = |P|

  double m() const { return P * P / (1.0 - P * P); }
  double alpha() const {
    const double c = 1.0 - P * P;
    return c * c / 4.0;
  }
  /// Top of the essential spectrum of T: 4(1+m)^2 = 1/alpha.
  double edge() const {
    const double mp = m();
    return 4.0 * (1.0 + mp) * (1.0 + mp);
  }
};

/// Validated construction; A defaults to -P (the reduction's convention).
/// Requires |P| < 1 and |A| = |P|.
HalfLineParams make_halfline_params(double P, std::optional<double> A = {});

/// T (with_rank_one = true) or its boundary-free part T0 = K^2 with
/// K = (v + v*) + 2AP/(1-P^2), truncated to n sites.  Both are real
/// symmetric positive semidefinite.
OperatorMatrix build_T(const HalfLineParams& params, bool with_rank_one,
                       long n);

/// Max-abs deviation of W T(A, P) W from T(-A, P), where W = diag((-1)^x).
/// The conjugation is an exact lattice symmetry, so this returns 0.0 up to
/// nothing at all -- any nonzero value indicates a broken builder.
double parity_conjugate_check(const HalfLineParams& params, long n);

}  // namespace ssqw
