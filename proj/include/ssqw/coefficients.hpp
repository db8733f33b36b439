// Site-dependent coin data for the one-dimensional split-step walk.
//
// The walk is specified by four sequences on the integer lattice: real a, p
// and complex b, q obeying the pointwise circle constraints
//     a(x)^2 + |b(x)|^2 = 1,     p(x)^2 + |q(x)|^2 = 1,
// together with two-sided limits (a±, b±, p±, q±) approached summably fast.
// Profiles below generate such sequences by construction: the step profile
// is constant on each half-line apart from finitely many overridden sites,
// and the geometric profile relaxes to its limits like rate^distance with
// |b|, |q| re-derived pointwise from a, p so the constraints hold exactly.
// A raw tabulated mode exists so the validator can be shown broken input.

#pragma once

#include <complex>
#include <vector>

#include "ssqw/operator_matrix.hpp"

namespace ssqw {

/// Two-sided limits.  The moduli of b±, q± are pinned by the circle
/// constraints, so make_limits takes only a±, p± and the four phases.
struct AnisotropicLimits {
  double a_plus = 0.0;
  double p_plus = 0.0;
  double a_minus = 0.0;
  double p_minus = 0.0;
  Complex b_plus{0.0, 0.0};
  Complex q_plus{0.0, 0.0};
  Complex b_minus{0.0, 0.0};
  Complex q_minus{0.0, 0.0};
};

/// Limits in the standard form |b| = sqrt(1-a^2) e^{i b_phase}, etc.
/// Requires |a±| <= 1 and |p±| <= 1.
AnisotropicLimits make_limits(double a_plus, double p_plus, double a_minus,
                              double p_minus, double b_plus_phase = 0.0,
                              double q_plus_phase = 0.0,
                              double b_minus_phase = 0.0,
                              double q_minus_phase = 0.0);

/// Per-site override for the step profile.  Moduli of b, q are derived from
/// a, p, so an override can never break the circle constraints.
struct SiteOverride {
  long x = 0;
  double a = 0.0;
  double p = 0.0;
  double b_phase = 0.0;
  double q_phase = 0.0;
};

enum class ProfileKind { TwoSidedStep, GeometricDecay, Tabulated };

class WalkCoefficients {
 public:
  /// Constant on each half-line (sites >= 0 take the plus limits), with
  /// optional finitely many overridden sites.
  static WalkCoefficients two_sided_step(AnisotropicLimits limits,
                                         std::vector<SiteOverride> overrides = {});

  /// a(x) = a± + a_amplitude * rate^{d(x)} with d(x) the distance into the
  /// half-line (d = x for x >= 0, d = -x-1 for x < 0), and likewise for p;
  /// phases of b, q relax the same way.  Amplitudes must satisfy
  /// |amplitude| <= min(1 - |limit|, 1)/2 on both sides so the sequences stay
  /// inside (-1, 1); rate must lie in (0, 1).
  static WalkCoefficients geometric_decay(AnisotropicLimits limits, double rate,
                                          double a_amplitude,
                                          double p_amplitude,
                                          double b_phase_amplitude = 0.0,
                                          double q_phase_amplitude = 0.0);

  /// Raw values on a window (step continuation by the limits outside).
  /// No constraints are enforced here; this is the validator's test bed.
  static WalkCoefficients tabulated(long first_site, std::vector<double> a,
                                    std::vector<Complex> b,
                                    std::vector<double> p,
                                    std::vector<Complex> q,
                                    AnisotropicLimits limits);

  double a(long x) const;
  Complex b(long x) const;
  double p(long x) const;
  Complex q(long x) const;

  const AnisotropicLimits& limits() const { return limits_; }
  ProfileKind kind() const { return kind_; }

  /// Copy with every phase stripped: b, q (and their limits) replaced by
  /// their moduli.  This is the target normal form of the gauge map.
  WalkCoefficients phase_free() const;

 private:
  WalkCoefficients() = default;

  ProfileKind kind_ = ProfileKind::TwoSidedStep;
  AnisotropicLimits limits_;
  std::vector<SiteOverride> overrides_;

  double rate_ = 0.0;
  double a_amplitude_ = 0.0;
  double p_amplitude_ = 0.0;
  double b_phase_amplitude_ = 0.0;
  double q_phase_amplitude_ = 0.0;

  long table_first_ = 0;
  std::vector<double> table_a_, table_p_;
  std::vector<Complex> table_b_, table_q_;
};

/// Checks the circle constraints at every site of [-half_width, half_width]
/// and on the limits themselves, all within 1e-12.  Throws
/// std::invalid_argument naming the first offending site and its residual.
void validate_coefficients(const WalkCoefficients& c, long half_width = 64);

}  // namespace ssqw
