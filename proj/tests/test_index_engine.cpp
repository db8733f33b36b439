// Index engine: the analytic weight, classification, symbol winding, and the
// heat-semigroup route with its tail extrapolation.  The three routes are
// checked against each other wherever more than one applies.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/QR>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "ssqw/core_ops.hpp"
#include "ssqw/index_engine.hpp"
#include "ssqw/walk_builders.hpp"

using namespace ssqw;

namespace {

/// (n+1) x n right shift; columns stay orthonormal, so A*A = 1 while AA*
/// annihilates the top basis vector: the cleanest index -1 operator there is.
OperatorMatrix rect_shift(long n, double scale = 1.0) {
  OperatorMatrix a;
  a.entries = scale * halfline_shift(n + 1).entries.leftCols(n);
  a.boundary = Boundary::HalfLineTruncated;
  a.window = {0, n + 1};
  return a;
}

}  // namespace

TEST_CASE("sign and weight tables") {
  CHECK(sgn(3.2) == 1);
  CHECK(sgn(-0.1) == -1);
  CHECK(sgn(0.0) == 0);

  // shift-dominant: weight follows the sign of the shift limit
  CHECK(witten_weight(0.6, 0.8) == 1.0);
  CHECK(witten_weight(0.6, -0.8) == -1.0);
  CHECK(witten_weight(0.5, 1.0) == 1.0);
  // coin-dominant: zero
  CHECK(witten_weight(0.8, 0.6) == 0.0);
  CHECK(witten_weight(1.0, 0.5) == 0.0);
  CHECK(witten_weight(0.0, 0.0) == 0.0);
  // gapless half-integers, all four sign quadrants
  CHECK(witten_weight(0.5, 0.5) == 0.5);
  CHECK(witten_weight(-0.5, 0.5) == 0.5);
  CHECK(witten_weight(0.5, -0.5) == -0.5);
  CHECK(witten_weight(-0.5, -0.5) == -0.5);
  // degenerate endpoint corners are defined to vanish
  CHECK(witten_weight(1.0, 1.0) == 0.0);
  CHECK(witten_weight(-1.0, 1.0) == 0.0);
  CHECK(witten_weight(1.0, -1.0) == 0.0);

  CHECK_THROWS_AS(witten_weight(1.2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(witten_weight(0.0, -1.01), std::invalid_argument);
}

TEST_CASE("analytic Witten index of limit data") {
  auto w = [](double ap, double pp, double am, double pm) {
    return witten_analytic(make_limits(ap, pp, am, pm));
  };
  CHECK(w(0.3, 0.8, 0.8, 0.3) == 1.0);
  CHECK(w(0.3, 0.8, 0.3, -0.8) == 2.0);
  CHECK(w(0.3, -0.8, 0.3, 0.8) == -2.0);
  CHECK(w(0.8, 0.3, 0.8, 0.3) == 0.0);
  CHECK(w(0.5, 0.5, 0.8, 0.3) == 0.5);
  CHECK(w(0.5, 0.5, 0.5, -0.5) == 1.0);
  CHECK(w(0.5, -0.5, 0.5, 0.5) == -1.0);
}

TEST_CASE("classification cells") {
  const ClassificationCell plus_one =
      fredholm_classify(make_limits(0.3, 0.8, 0.8, 0.3));
  CHECK(plus_one.plus_regime == SideRegime::ShiftDominant);
  CHECK(plus_one.minus_regime == SideRegime::CoinDominant);
  CHECK(plus_one.fredholm);
  REQUIRE(plus_one.fredholm_index.has_value());
  CHECK(*plus_one.fredholm_index == 1);
  CHECK(plus_one.witten == 1.0);

  const ClassificationCell two =
      fredholm_classify(make_limits(0.3, 0.8, 0.3, -0.8));
  CHECK(*two.fredholm_index == 2);

  const ClassificationCell gapless =
      fredholm_classify(make_limits(0.5, 0.5, 0.8, 0.3));
  CHECK(gapless.plus_regime == SideRegime::Gapless);
  CHECK_FALSE(gapless.fredholm);
  CHECK_FALSE(gapless.fredholm_index.has_value());
  CHECK(gapless.witten == 0.5);

  // sign of the coefficients must not matter for gaplessness
  CHECK(fredholm_classify(make_limits(0.5, -0.5, 0.8, 0.3)).plus_regime ==
        SideRegime::Gapless);

  const ClassificationCell endpoint =
      fredholm_classify(make_limits(1.0, 1.0, 0.8, 0.3));
  CHECK(endpoint.plus_regime == SideRegime::Endpoint);
  CHECK_FALSE(endpoint.fredholm);

  // The gap comparison is exact, so one ulp of asymmetry restores Fredholm.
  const ClassificationCell nudged =
      fredholm_classify(make_limits(0.5, 0.5 + 1e-12, 0.8, 0.3));
  CHECK(nudged.fredholm);
  CHECK(*nudged.fredholm_index == 1);
}

TEST_CASE("symbol winding agrees with the classification") {
  // coin and shift moduli drawn from disjoint sets, so every combination
  // below is Fredholm
  const std::vector<double> coin{-0.8, -0.3, 0.4, 0.9};
  const std::vector<double> shift{-0.7, -0.2, 0.5, 0.95};
  for (double ap : coin)
    for (double pp : shift)
      for (double am : coin)
        for (double pm : shift) {
          const ClassificationCell cell =
              fredholm_classify(make_limits(ap, pp, am, pm));
          REQUIRE(cell.fredholm);  // all pairs here have |a| != |p|
          const long wn_plus = winding_number(make_symbol(Side::Plus, ap, pp));
          const long wn_minus =
              winding_number(make_symbol(Side::Minus, am, pm));
          CHECK(*cell.fredholm_index == -wn_plus + wn_minus);
        }

  CHECK(winding_number(make_symbol(Side::Plus, 0.3, 0.8)) == -1);
  CHECK(winding_number(make_symbol(Side::Plus, 0.3, -0.8)) == 1);
  CHECK(winding_number(make_symbol(Side::Plus, 0.8, 0.3)) == 0);

  // gapless symbol curves pass through the origin: no winding number
  CHECK_THROWS_AS(winding_number(make_symbol(Side::Plus, 0.5, 0.5)),
                  std::invalid_argument);
}

TEST_CASE("full-trace heat index") {
  // Hermitian input: the two products coincide.
  std::mt19937 rng(23);
  std::normal_distribution<double> gauss;
  Matrix raw(8, 8);
  for (long i = 0; i < 8; ++i)
    for (long j = 0; j < 8; ++j) raw(i, j) = Complex(gauss(rng), gauss(rng));
  OperatorMatrix herm;
  herm.entries = 0.5 * (raw + raw.adjoint());
  herm.window = {0, 8};
  CHECK(std::abs(ind_t(herm, 1.7)) < 1e-12);

  // Any square truncation: spec(A*A) = spec(AA*) forces exactly zero, even
  // for a genuinely index-1 profile.  This is the boundary anomaly that the
  // interior-window estimator in witten_numeric exists to dodge.
  const OperatorMatrix qe0 = build_qe0(
      WalkCoefficients::two_sided_step(make_limits(0.3, 0.8, 0.8, 0.3)), 64,
      Boundary::FullLineTruncated);
  CHECK(std::abs(ind_t(qe0, 4.0)) < 1e-10);

  // Rectangular right shift: exactly -1 at every t.
  const OperatorMatrix shift = rect_shift(32);
  for (double t : {0.5, 2.0, 7.0}) {
    CHECK(ind_t(shift, t) == doctest::Approx(-1.0).epsilon(1e-12));
  }
}

TEST_CASE("full-trace heat index: invariance and additivity") {
  // ind_t only sees the singular values, so A -> U A V* changes nothing.
  std::mt19937 rng(41);
  std::normal_distribution<double> gauss;
  auto haar_like = [&](long n) {
    Matrix g(n, n);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    return Matrix(Eigen::HouseholderQR<Matrix>(g).householderQ());
  };
  OperatorMatrix rotated = rect_shift(32);
  rotated.entries =
      haar_like(33) * rotated.entries * haar_like(32).adjoint();
  CHECK(ind_t(rotated, 3.0) == doctest::Approx(-1.0).epsilon(1e-12));

  // Direct sums add indices; scaling a block rescales its spectrum only.
  OperatorMatrix pair;
  pair.entries = Matrix::Zero(25 + 17, 24 + 16);
  pair.entries.topLeftCorner(25, 24) = rect_shift(24).entries;
  pair.entries.bottomRightCorner(17, 16) = rect_shift(16, 0.7).entries;
  pair.window = {0, 42};
  for (double t : {1.0, 5.0}) {
    CHECK(ind_t(pair, t) == doctest::Approx(-2.0).epsilon(1e-12));
  }
}

TEST_CASE("inverse-sqrt tail fit") {
  std::vector<std::pair<double, double>> clean;
  for (double t : {10.0, 20.0, 40.0, 80.0}) {
    clean.emplace_back(t, 0.75 - 1.3 / std::sqrt(t));
  }
  const TailFit fit = fit_inverse_sqrt_tail(clean);
  CHECK(fit.c0 == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(fit.c1 == doctest::Approx(-1.3).epsilon(1e-12));
  CHECK(fit.residual < 1e-12);

  // Only the four largest-t samples participate: poison the small-t ones.
  std::vector<std::pair<double, double>> padded{{1.0, 999.0}, {2.0, -999.0}};
  padded.insert(padded.end(), clean.begin(), clean.end());
  const TailFit trimmed = fit_inverse_sqrt_tail(padded);
  CHECK(trimmed.c0 == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(trimmed.residual < 1e-12);
}

TEST_CASE("windowed heat estimator on walk truncations") {
  const std::vector<double> grid{6.0, 12.0, 18.0, 24.0};
  const OperatorMatrix qe0 = build_qe0(
      WalkCoefficients::two_sided_step(make_limits(0.3, 0.8, 0.8, 0.3)), 192,
      Boundary::FullLineTruncated);
  const IndexReport report = witten_numeric(qe0, grid);
  CHECK_FALSE(report.cell.has_value());
  CHECK(report.samples.size() == 4);
  CHECK(report.truncation == 192);
  CHECK(report.trace_window.length == 96);  // interior half of the window
  CHECK_FALSE(report.unreliable_fit);
  CHECK(std::abs(report.extrapolated - 1.0) < 0.1);

  const OperatorMatrix gapless = build_qe0(
      WalkCoefficients::two_sided_step(make_limits(0.5, 0.5, 0.8, 0.3)), 192,
      Boundary::FullLineTruncated);
  CHECK(std::abs(witten_numeric(gapless, grid).extrapolated - 0.5) < 0.1);

  // Rectangular input keeps the full trace and needs no extrapolation slack.
  const IndexReport rect = witten_numeric(rect_shift(48), {1.0, 2.0, 4.0});
  CHECK(rect.trace_window.length == 49);
  CHECK(std::abs(rect.extrapolated + 1.0) < 1e-10);

  CHECK_THROWS_AS(witten_numeric(qe0, {30.0}), std::invalid_argument);
  CHECK_THROWS_AS(witten_numeric(qe0, {4.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(witten_numeric(qe0, {}), std::invalid_argument);
}

TEST_CASE("half-line heat estimator converges to the edge shift") {
  // P = 0 closed form: both sides of the trace identity equal
  // (1/2)(1 - e^{-t}).
  const HalfLineParams flat = make_halfline_params(0.0);
  const HalfLineWittenReport flat_report =
      halfline_witten_numeric(flat, {5.0, 10.0}, 512);
  CHECK(flat_report.target == 0.5);
  CHECK(flat_report.p_limit == 0.0);
  CHECK(flat_report.truncation == 512);
  for (const auto& [t, value] : flat_report.samples) {
    CHECK(std::abs(value - 0.5 * (1.0 - std::exp(-t))) < 1e-6);
  }

  const std::vector<double> grid{12.0, 25.0, 50.0, 100.0};
  for (double p : {0.5, -0.5}) {
    const HalfLineParams par = make_halfline_params(p);
    const HalfLineWittenReport report =
        halfline_witten_numeric(par, grid, 800);
    CHECK(report.target == ssf_edge(par));
    CHECK(std::abs(report.extrapolated - report.target) < 0.05);
  }
}

TEST_CASE("trace identity for the rank-one pair") {
  const KreinCheck flat = krein_check(make_halfline_params(0.0), 10.0, 512);
  const double closed = 0.5 * (1.0 - std::exp(-10.0));
  CHECK(std::abs(flat.lhs - closed) < 1e-6);
  CHECK(std::abs(flat.rhs - closed) < 1e-6);
  CHECK(flat.abs_err == doctest::Approx(std::abs(flat.lhs - flat.rhs)));
  CHECK(flat.truncation == 512);

  for (double p : {0.5, -0.5}) {
    const KreinCheck check = krein_check(make_halfline_params(p), 10.0, 768);
    CHECK(check.abs_err < 1e-4);
  }
}
