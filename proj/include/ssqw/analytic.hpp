// Scalar analytic machinery for the rank-one spectral problem.
//
// The boundary term of the shifted-square operator T = T0 + (2/(1-P)) Omega
// is rank one, so its spectral shift relative to T0 is carried entirely by
// the scalar perturbation determinant
//
//     Delta(z) = det( (T - z)(T0 - z)^{-1} )
//              = 1 + (2/(1-P)) <delta_0, (T0 - z)^{-1} delta_0>
//              = 1 + [ H(tau_+(z)) - H(tau_-(z)) ] / ( (1-P) sqrt(z) ),
//
// where tau_±(z) = 2m ± sqrt(z) (m = P^2/(1-P^2)) and H is the Stieltjes
// transform of the semicircle measure -- equivalently the boundary resolvent
// entry of the half-line hopping operator v + v*:
//
//     H(z) = ( -z + (z+2) sqrt((z-2)/(z+2)) ) / 2,   H(z)^2 + z H(z) + 1 = 0.
//
// The spectral shift function is the boundary argument xi(x) =
// Arg Delta(x + i0) / pi, evaluated here in closed form region by region.

#pragma once

#include <utility>

#include "ssqw/halfline.hpp"
#include "ssqw/operator_matrix.hpp"

namespace ssqw {

/// Principal branch square root (positive real part).  Throws
/// std::invalid_argument on the branch cut (-inf, 0].
Complex principal_sqrt(Complex z);

/// Stieltjes transform of the semicircle measure, analytic off [-2, 2],
/// satisfying H^2 + zH + 1 = 0 with |H| < 1 and Im H * Im z > 0.
/// Throws std::invalid_argument for z on [-2, 2].
Complex stieltjes_h(Complex z);

/// The pair (2m + sqrt(z), 2m - sqrt(z)); same branch-cut domain as
/// principal_sqrt.
std::pair<Complex, Complex> tau_pm(Complex z, const HalfLineParams& params);

/// Delta(z) for z off the nonnegative real axis.  On the negative real axis
/// the two H terms are complex conjugates and the value is real (and
/// positive: there is no spectrum below 0).  Throws for z on [0, inf) --
/// boundary_det is the evaluator there.
Complex perturbation_determinant(Complex z, const HalfLineParams& params);

/// Boundary value Delta(x + i0) for real x.  Region breakpoints
/// {0, 4(m-1)^2, 4(m+1)^2} carry a guard band of 1e-9; inputs inside a band
/// are errors.  Values below 0 and above the band edge are real and
/// positive.
Complex boundary_det(double x, const HalfLineParams& params);

/// Where a real energy sits relative to the spectra of T and T0.
enum class RegionTag {
  BelowZero,   ///< x < 0: below both spectra
  Inner,       ///< 0 < x < 4(1-m)^2, m < 1: inside the band, both tau small
  OuterGap,    ///< 0 < x < 4(m-1)^2, m > 1: in the gap below the band
  MiddleBand,  ///< 4(m-1)^2 < x < 4(m+1)^2: tau_+ above, tau_- inside
  AboveEdge,   ///< x > 4(m+1)^2: above both spectra
};

/// One evaluated point of the spectral shift function.
struct SSFSample {
  double x = 0.0;
  double xi = 0.0;
  RegionTag region = RegionTag::BelowZero;
  bool degenerate = false;  ///< x fell in a breakpoint guard band
};

/// Closed-form spectral shift of the pair (T, T0) at x.  Values lie in
/// [0, 1]; at a guard-banded breakpoint the midpoint of the two one-sided
/// limits is reported with degenerate = true.
SSFSample ssf(double x, const HalfLineParams& params);

/// Left limit of the spectral shift at the band edge: 0 for P < 0, 1/2 for
/// P >= 0.  This is the value the large-t heat-trace difference converges to.
double ssf_edge(const HalfLineParams& params);

}  // namespace ssqw
