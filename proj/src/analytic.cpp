#include "ssqw/analytic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ssqw {

namespace {

constexpr double kGuard = 1e-9;  // breakpoint guard band half-width

// sgn with sgn(0) = 0.
double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// Boundary values of (tau + 2) sqrt((tau - 2)/(tau + 2)) as tau approaches
// the real axis from above/below; this is the square-root piece of H.
Complex edge_root_from_above(double tau) {
  if (tau > 2.0) return std::sqrt(tau * tau - 4.0);
  if (tau < -2.0) return -std::sqrt(tau * tau - 4.0);
  return Complex(0.0, std::sqrt(4.0 - tau * tau));
}

Complex edge_root_from_below(double tau) {
  if (std::abs(tau) <= 2.0) return Complex(0.0, -std::sqrt(4.0 - tau * tau));
  return edge_root_from_above(tau);
}

struct Breakpoints {
  double inner = 0.0;  // 4(m-1)^2: tau_+ (m<1) or tau_- (m>1) crosses +2
  double edge = 0.0;   // 4(m+1)^2: tau_- crosses -2
};

Breakpoints breakpoints_of(const HalfLineParams& params) {
  const double m = params.m();
  return {4.0 * (m - 1.0) * (m - 1.0), 4.0 * (m + 1.0) * (m + 1.0)};
}

bool in_guard_band(double x, const HalfLineParams& params) {
  const Breakpoints bp = breakpoints_of(params);
  return std::abs(x) <= kGuard || std::abs(x - bp.inner) <= kGuard ||
         std::abs(x - bp.edge) <= kGuard;
}

}  // namespace

Complex principal_sqrt(Complex z) {
  if (z.imag() == 0.0 && z.real() <= 0.0) {
    std::ostringstream msg;
    msg << "principal_sqrt: " << z.real()
        << " lies on the branch cut (-inf, 0]";
    throw std::invalid_argument(msg.str());
  }
  return std::sqrt(z);
}

Complex stieltjes_h(Complex z) {
  if (z.imag() == 0.0 && std::abs(z.real()) <= 2.0) {
    throw std::invalid_argument(
        "stieltjes_h: argument lies on the spectral interval [-2, 2]");
  }
  // (z-2)/(z+2) avoids (-inf, 0] whenever z avoids [-2, 2], so the principal
  // root is safe here.
  const Complex ratio = (z - 2.0) / (z + 2.0);
  return (-z + (z + 2.0) * principal_sqrt(ratio)) / 2.0;
}

std::pair<Complex, Complex> tau_pm(Complex z, const HalfLineParams& params) {
  const Complex root = principal_sqrt(z);
  const double twice_m = 2.0 * params.m();
  return {twice_m + root, twice_m - root};
}

Complex perturbation_determinant(Complex z, const HalfLineParams& params) {
  const double one_minus_p = 1.0 - params.P;
  if (z.imag() == 0.0) {
    if (z.real() >= 0.0) {
      throw std::invalid_argument(
          "perturbation_determinant: use boundary_det on [0, inf)");
    }
    // Negative real axis: sqrt(x + i0) = i sqrt(|x|), the two tau are
    // complex conjugates, and reflection symmetry of H makes Delta real.
    const double root = std::sqrt(-z.real());
    const Complex h_up = stieltjes_h(Complex(2.0 * params.m(), root));
    return Complex(1.0 + 2.0 * h_up.imag() / (one_minus_p * root), 0.0);
  }
  const auto [tau_plus, tau_minus] = tau_pm(z, params);
  const Complex root = principal_sqrt(z);
  return 1.0 +
         (stieltjes_h(tau_plus) - stieltjes_h(tau_minus)) /
             (one_minus_p * root);
}

Complex boundary_det(double x, const HalfLineParams& params) {
  if (x < -kGuard) return perturbation_determinant(Complex(x, 0.0), params);
  if (in_guard_band(x, params)) {
    std::ostringstream msg;
    msg << "boundary_det: x = " << x
        << " lies within " << kGuard << " of a region breakpoint";
    throw std::invalid_argument(msg.str());
  }
  // Delta(x + i0) = [ -2P sqrt(x) + R(tau_+) - R(tau_-) ] / (2(1-P) sqrt(x)),
  // with R the directional boundary root: tau_+ approaches the real axis
  // from above, tau_- from below.
  const double root = std::sqrt(x);
  const double m = params.m();
  const double tau_plus = 2.0 * m + root;
  const double tau_minus = 2.0 * m - root;
  const Complex numerator = -2.0 * params.P * root +
                            edge_root_from_above(tau_plus) -
                            edge_root_from_below(tau_minus);
  return numerator / (2.0 * (1.0 - params.P) * root);
}

namespace {

// Closed-form xi on each open region (no guard-band handling here).
double ssf_value(double x, const HalfLineParams& params, RegionTag region) {
  const double pi = std::numbers::pi;
  switch (region) {
    case RegionTag::BelowZero:
    case RegionTag::AboveEdge:
      return 0.0;
    case RegionTag::Inner: {
      if (params.P == 0.0) return 0.5;  // determinant is purely imaginary
      const double root = std::sqrt(x);
      const double m = params.m();
      const double tau_plus = 2.0 * m + root;
      const double tau_minus = 2.0 * m - root;
      const double denom = std::sqrt(4.0 - tau_plus * tau_plus) +
                           std::sqrt(4.0 - tau_minus * tau_minus);
      return 0.5 - std::atan(-2.0 * params.P * root / denom) / pi;
    }
    case RegionTag::OuterGap: {
      const double root = std::sqrt(x);
      const double m = params.m();
      const double tau_plus = 2.0 * m + root;
      const double tau_minus = 2.0 * m - root;
      const double value = -2.0 * params.P * root +
                           std::sqrt(tau_plus * tau_plus - 4.0) -
                           std::sqrt(tau_minus * tau_minus - 4.0);
      return 0.5 - 0.5 * sign_of(value);
    }
    case RegionTag::MiddleBand: {
      const double root = std::sqrt(x);
      const double m = params.m();
      const double tau_plus = 2.0 * m + root;
      const double tau_minus = 2.0 * m - root;
      const double numer =
          -2.0 * params.P * root + std::sqrt(tau_plus * tau_plus - 4.0);
      const double denom = std::sqrt(4.0 - tau_minus * tau_minus);
      return 0.5 - std::atan(numer / denom) / pi;
    }
  }
  return 0.0;  // unreachable
}

RegionTag region_of(double x, const HalfLineParams& params) {
  const Breakpoints bp = breakpoints_of(params);
  if (x < 0.0) return RegionTag::BelowZero;
  if (x > bp.edge) return RegionTag::AboveEdge;
  if (x < bp.inner) {
    return params.m() < 1.0 ? RegionTag::Inner : RegionTag::OuterGap;
  }
  return RegionTag::MiddleBand;
}

}  // namespace

SSFSample ssf(double x, const HalfLineParams& params) {
  if (!in_guard_band(x, params)) {
    const RegionTag region = region_of(x, params);
    return {x, ssf_value(x, params, region), region, false};
  }
  // Guard-banded breakpoint: report the midpoint of the one-sided limits,
  // approximated just outside the band, and flag the sample.
  const double step = 8.0 * kGuard * std::max(1.0, std::abs(x));
  const double left = x - step;
  const double right = x + step;
  const double xi_left = ssf_value(left, params, region_of(left, params));
  const double xi_right = ssf_value(right, params, region_of(right, params));
  return {x, 0.5 * (xi_left + xi_right), region_of(right, params), true};
}

double ssf_edge(const HalfLineParams& params) {
  return params.P >= 0.0 ? 0.5 : 0.0;
}

}  // namespace ssqw
