#pragma once

// Index engine: everything that turns operators and coefficient limits into
// index values.
//
// Three independent routes to the same integer (or half-integer):
//
//   * analytic:  the weight
//
//         W(r, s) = 0                              if |r| = |s| = 1,
//                   [sgn(r+s) - sgn(r-s)] / 2      otherwise,
//
//     evaluated at the right/left coefficient limits,
//     witten = W(a_+, p_+) - W(a_-, p_-);
//
//   * symbol winding:  when a side is Fredholm (|a| != |p|) the winding
//     number of its symbol curve theta -> F(e^{-i theta}) around 0 gives the
//     half-line index, and the total index is -wn_+ + wn_-;
//
//   * heat semigroup:  ind_t(A) = Tr[exp(-t A*A) - exp(-t A A*)], equal to
//     the Fredholm index when A is Fredholm; in the non-Fredholm gapless
//     cases it converges as t -> infinity to the Witten index, with leading
//     correction of order t^{-1/2}.
//
// The numeric routes work on finite truncations, so every report carries its
// truncation size and a tail-fit residual instead of pretending to be exact.
//
// One truncation fact shapes the design here: a SQUARE matrix always has
// spec(A*A) = spec(AA*), so the full-trace ind_t of a square truncation is
// identically zero — the artificial boundary carries an interface index
// that exactly cancels the physical one.  The infinite-volume ind_t is an
// absolutely convergent lattice sum of diagonal heat-kernel differences
// concentrated near the physical interface, so the right estimator on a
// truncation is the same sum restricted to the interior of the window,
// where the boundary anomaly never reaches (the banded heat kernel decays
// superexponentially beyond site distance ~2t, and the t <= dim/8 rule
// keeps 2t inside the dim/4 buffer).  witten_numeric therefore traces over
// the middle half of the window for square input; rectangular input keeps
// the full trace, which is already meaningful there.

#include <optional>
#include <utility>
#include <vector>

#include "ssqw/analytic.hpp"
#include "ssqw/coefficients.hpp"
#include "ssqw/halfline.hpp"
#include "ssqw/operator_matrix.hpp"

namespace ssqw {

/// Sign of x as an integer in {-1, 0, +1}.
int sgn(double x);

/// The two-parameter weight W(r, s) defined above.  Requires |r| <= 1 and
/// |s| <= 1; values are exact multiples of 1/2.
double witten_weight(double r, double s);

/// Witten index of the anisotropic walk from its coefficient limits alone:
/// W(a_+, p_+) - W(a_-, p_-).
double witten_analytic(const AnisotropicLimits& limits);

/// How one side of the lattice behaves, decided by the exact comparison of
/// |a| and |p| at that side's limit.
enum class SideRegime {
  CoinDominant,   ///< |a| > |p|: gapped, contributes 0 to the index
  ShiftDominant,  ///< |p| > |a|: gapped, contributes -+ sgn(p)
  Gapless,        ///< |a| = |p| < 1: spectral gap closes, not Fredholm
  Endpoint,       ///< |a| = |p| = 1: walk degenerates, not Fredholm
};

/// Full classification of one choice of limits.
struct ClassificationCell {
  AnisotropicLimits limits;
  SideRegime plus_regime = SideRegime::Gapless;
  SideRegime minus_regime = SideRegime::Gapless;
  bool fredholm = false;
  /// Fredholm index, present exactly when fredholm is true.
  std::optional<int> fredholm_index;
  /// Witten index; equals the Fredholm index whenever that exists.
  double witten = 0.0;
};

/// Classify limits: Fredholm iff both sides satisfy |a| != |p|, in which
/// case the index is assembled from sgn(p_+) and -sgn(p_-) on the
/// shift-dominant sides.
ClassificationCell fredholm_classify(const AnisotropicLimits& limits);

/// Winding number of theta -> F(e^{-i theta}) around 0, accumulated over a
/// uniform grid on [0, 2 pi).  Throws if the curve passes within 1e-9 of the
/// origin (the symbol is not invertible, so no winding number exists) or if
/// the accumulated phase fails to close up to an integer.
long winding_number(const FSymbol& symbol, int grid = 4096);

/// Heat-semigroup regularization Tr[exp(-t A*A) - exp(-t A A*)] for a single
/// matrix A, as a full trace.  Exactly zero for every square matrix (equal
/// product spectra); genuinely informative for rectangular truncations,
/// e.g. the (n+1) x n right shift gives exactly -1 at every t.  Decomposes
/// both products; for repeated t prefer witten_numeric, which reuses the
/// decompositions.
double ind_t(const OperatorMatrix& a, double t);

/// Least-squares fit of samples (t, y) to y = c0 + c1 / sqrt(t).
struct TailFit {
  double c0 = 0.0;
  double c1 = 0.0;
  /// Root-mean-square misfit of the model over the fitted samples.
  double residual = 0.0;
};

/// Fit the model to the (up to) four largest-t samples.
TailFit fit_inverse_sqrt_tail(
    const std::vector<std::pair<double, double>>& samples);

/// Result of a heat-semigroup index computation on a truncation.
struct IndexReport {
  /// Analytic classification, when the caller knows the limits.
  std::optional<ClassificationCell> cell;
  /// (t, ind_t estimate) samples along the requested grid.
  std::vector<std::pair<double, double>> samples;
  /// t -> infinity extrapolation c0 of the c0 + c1 t^{-1/2} tail model.
  double extrapolated = 0.0;
  /// RMS misfit of the tail model; large values mean the grid never reached
  /// the asymptotic regime (or the truncation polluted it).
  double fit_residual = 0.0;
  long truncation = 0;
  /// Index range the diagonal was summed over (the interior window for
  /// square input, everything for rectangular input).
  Window trace_window{0, 0};
  /// True when fit_residual > 0.1.
  bool unreliable_fit = false;
};

/// Sample the heat-semigroup index estimate over t_grid (ascending,
/// positive) and extrapolate.  Square spatially-indexed input is traced
/// over the middle half of its window (see the file-top note on the
/// boundary anomaly); rectangular input gets the full trace.  Enforces
/// max(t) <= dim/8: beyond that, boundary effects of the truncation reach
/// the interior and the samples stop meaning anything.
IndexReport witten_numeric(const OperatorMatrix& a,
                           const std::vector<double>& t_grid);

/// Heat-semigroup computation for one half-line in completed-square form.
struct HalfLineWittenReport {
  double p_limit = 0.0;
  std::vector<std::pair<double, double>> samples;
  double extrapolated = 0.0;
  double fit_residual = 0.0;
  /// Exact t -> infinity limit, for comparison: the spectral shift at the
  /// band edge.
  double target = 0.0;
  long truncation = 0;
  bool unreliable_fit = false;
};

/// Sample e^{-t} Tr[exp(t alpha T) - exp(t alpha T0)] over t_grid on an
/// n-site truncation, where T = K^2 + rank-one defect and T0 = K^2 are the
/// completed-square operators of the half-line products.  Converges to
/// ssf_edge(params) as t -> infinity.
HalfLineWittenReport halfline_witten_numeric(const HalfLineParams& params,
                                             const std::vector<double>& t_grid,
                                             long n);

/// Two sides of the trace formula connecting the heat semigroup to the
/// spectral shift function.
struct KreinCheck {
  double lhs = 0.0;  ///< e^{-t} Tr[exp(t alpha T) - exp(t alpha T0)]
  double rhs = 0.0;  ///< integral of t alpha e^{t(alpha x - 1)} xi(x) dx
  double abs_err = 0.0;
  long truncation = 0;
};

/// Evaluate both sides at one t: the left on an n-site truncation, the right
/// by adaptive quadrature of the spectral shift function against the
/// derivative of the heat weight.
KreinCheck krein_check(const HalfLineParams& params, double t, long n);

}  // namespace ssqw
