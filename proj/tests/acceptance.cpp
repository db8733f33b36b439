// Acceptance gate: ten end-to-end criteria, one [PASS]/[FAIL] line each,
// exit status 1 if anything failed.
//
// The criteria cross-check every layer of the library at realistic problem
// sizes: the three index routes against each other on a dense grid of limit
// data, the closed-form analytic kernel against quadrature and large sparse
// resolvents, the heat-semigroup extrapolations against the exact edge
// limits, the trace identity connecting both, and the exact operator
// algebra underlying all of it.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/SVD>

#include "ssqw/analytic.hpp"
#include "ssqw/coefficients.hpp"
#include "ssqw/core_ops.hpp"
#include "ssqw/gauge.hpp"
#include "ssqw/halfline.hpp"
#include "ssqw/index_engine.hpp"
#include "ssqw/walk_builders.hpp"

using namespace ssqw;

namespace {

struct Outcome {
  bool pass = false;
  std::string metric;
};

std::string fmt(const char* pattern, double a, double b = 0.0,
                double c = 0.0) {
  char buffer[160];
  std::snprintf(buffer, sizeof(buffer), pattern, a, b, c);
  return buffer;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// --- 1: the three index routes agree cell by cell --------------------------

Outcome classification_triple_agreement() {
  // coin moduli {0, .225, .45, .675, .9}; shift moduli offset so the two
  // sets never collide and every cell is Fredholm
  std::vector<double> coin(9), shift(9);
  for (int i = 0; i < 9; ++i) {
    coin[i] = -0.9 + 0.225 * i;
    shift[i] = -0.85 + 0.225 * i;
  }
  std::map<std::pair<int, int>, long> wind_plus, wind_minus;
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) {
      wind_plus[{i, j}] = winding_number(make_symbol(Side::Plus, coin[i],
                                                     shift[j]));
      wind_minus[{i, j}] = winding_number(make_symbol(Side::Minus, coin[i],
                                                      shift[j]));
    }
  }
  long cells = 0;
  long disagreements = 0;
  for (int ip = 0; ip < 9; ++ip)
    for (int jp = 0; jp < 9; ++jp)
      for (int im = 0; im < 9; ++im)
        for (int jm = 0; jm < 9; ++jm) {
          const AnisotropicLimits limits =
              make_limits(coin[ip], shift[jp], coin[im], shift[jm]);
          const ClassificationCell cell = fredholm_classify(limits);
          ++cells;
          if (!cell.fredholm || !cell.fredholm_index.has_value()) {
            ++disagreements;
            continue;
          }
          const long table = *cell.fredholm_index;
          const double analytic = witten_analytic(limits);
          const long winding =
              -wind_plus[{ip, jp}] + wind_minus[{im, jm}];
          if (static_cast<double>(table) != analytic || table != winding ||
              cell.witten != analytic) {
            ++disagreements;
          }
        }
  return {disagreements == 0 && cells == 6561,
          fmt("cells=%.0f disagreements=%.0f", static_cast<double>(cells),
              static_cast<double>(disagreements))};
}

// --- 2: half-integer catalogue ---------------------------------------------

Outcome half_integer_catalogue() {
  struct Case {
    double ap, pp, am, pm, expected;
  };
  // gapless side(s) with every sign of the shift limit, against
  // coin-dominant, shift-dominant, and gapless partners
  const std::vector<Case> table{
      {0.5, 0.5, 0.8, 0.3, 0.5},     {0.5, -0.5, 0.8, 0.3, -0.5},
      {-0.5, 0.5, 0.8, 0.3, 0.5},    {0.5, 0.5, 0.3, -0.8, 1.5},
      {0.5, -0.5, 0.3, 0.8, -1.5},   {0.8, 0.3, 0.5, 0.5, -0.5},
      {0.8, 0.3, 0.5, -0.5, 0.5},    {0.3, 0.8, 0.5, 0.5, 0.5},
      {0.3, -0.8, 0.5, 0.5, -1.5},   {0.5, 0.5, 0.5, -0.5, 1.0},
      {0.5, -0.5, 0.5, 0.5, -1.0},   {0.5, 0.5, -0.5, 0.5, 0.0},
  };
  int wrong = 0;
  for (const Case& c : table) {
    const AnisotropicLimits limits = make_limits(c.ap, c.pp, c.am, c.pm);
    const ClassificationCell cell = fredholm_classify(limits);
    // exact rational agreement: these are all sums of halves
    if (witten_analytic(limits) != c.expected || cell.witten != c.expected ||
        cell.fredholm || cell.fredholm_index.has_value()) {
      ++wrong;
    }
  }
  return {wrong == 0, fmt("cases=%.0f wrong=%.0f",
                          static_cast<double>(table.size()),
                          static_cast<double>(wrong))};
}

// --- 3: semicircle transform against direct quadrature ----------------------

Outcome semicircle_transform_oracle() {
  std::mt19937 rng(314159);
  std::uniform_real_distribution<double> re(-6.0, 6.0);
  std::uniform_real_distribution<double> im(0.5, 4.0);
  const QuadratureRule rule = angle_midpoint_rule();
  double worst_quad = 0.0;
  for (int k = 0; k < 50; ++k) {
    const Complex z(re(rng), im(rng));
    const double qre = semicircle_integral(
        [z](double t) { return (1.0 / (t - z)).real(); }, rule);
    const double qim = semicircle_integral(
        [z](double t) { return (1.0 / (t - z)).imag(); }, rule);
    worst_quad = std::max(worst_quad,
                          std::abs(stieltjes_h(z) - Complex(qre, qim)));
  }
  std::uniform_real_distribution<double> im2(-4.0, 4.0);
  double worst_residual = 0.0;
  int used = 0;
  while (used < 1000) {
    const Complex z(re(rng), im2(rng));
    if (std::abs(z.imag()) < 0.05 && std::abs(z.real()) < 2.5) continue;
    if (std::abs(z.imag()) < 1e-12) continue;
    ++used;
    const Complex h = stieltjes_h(z);
    worst_residual = std::max(worst_residual, std::abs(h * h + z * h + 1.0));
  }
  return {worst_quad < 1e-10 && worst_residual < 1e-12,
          fmt("max|H-quad|=%.2e max|H^2+zH+1|=%.2e", worst_quad,
              worst_residual)};
}

// --- 4: perturbation determinant against large sparse resolvents ------------

const std::vector<double> kPGrid{-0.9, -0.5, 0.0, 0.5,
                                 1.0 / std::numbers::sqrt2, 0.9};

Outcome determinant_resolvent_oracle() {
  std::mt19937 rng(271828);
  double worst = 0.0;
  for (double p : kPGrid) {
    const HalfLineParams par = make_halfline_params(p);
    const OperatorMatrix t0 = build_T(par, false, 4000);
    const double coupling = 2.0 / (1.0 - par.P);
    std::uniform_real_distribution<double> re(-4.0, 1.2 * par.edge() + 2.0);
    std::uniform_real_distribution<double> im(0.5, 2.5);
    for (int k = 0; k < 20; ++k) {
      Complex z(re(rng), im(rng));
      if (k % 2 == 1) z = std::conj(z);  // exercise both half-planes
      const Complex direct = 1.0 + coupling * resolvent_entry(t0, z);
      worst = std::max(worst,
                       std::abs(perturbation_determinant(z, par) - direct));
    }
  }
  return {worst < 1e-8, fmt("points=120 max|delta|=%.2e", worst)};
}

// --- 5: spectral shift against the finite-epsilon boundary argument ---------

Outcome shift_function_boundary_argument() {
  double worst = 0.0;
  long used = 0;
  for (double p : kPGrid) {
    const HalfLineParams par = make_halfline_params(p);
    const double edge = par.edge();
    const double breaks[] = {0.0, 4.0 * (par.m() - 1.0) * (par.m() - 1.0),
                             edge};
    for (int k = 0; k < 200; ++k) {
      const double x = -0.5 + (1.15 * edge + 0.5) * k / 199.0;
      bool excluded = false;
      for (double b : breaks) {
        if (std::abs(x - b) < 0.02 * edge) excluded = true;
      }
      if (excluded) continue;
      const SSFSample s = ssf(x, par);
      if (s.degenerate) continue;
      const double finite_eps =
          std::arg(perturbation_determinant(Complex(x, 1e-6), par)) /
          std::numbers::pi;
      worst = std::max(worst, std::abs(s.xi - finite_eps));
      ++used;
    }
  }
  return {worst < 1e-3 && used > 800,
          fmt("samples=%.0f max|xi-arg/pi|=%.2e", static_cast<double>(used),
              worst)};
}

// --- 6: half-line heat extrapolation reaches the edge limit ------------------

Outcome halfline_edge_extrapolation() {
  const std::vector<double> t_grid{25.0, 50.0, 100.0, 200.0, 375.0};
  double worst = 0.0;
  for (double p : {-0.7, -0.3, 0.0, 0.3, 0.7}) {
    const HalfLineParams par = make_halfline_params(p);
    const HalfLineWittenReport report =
        halfline_witten_numeric(par, t_grid, 3000);
    worst = std::max(worst, std::abs(report.extrapolated - report.target));
  }
  return {worst < 0.02, fmt("n=3000 max|c0-edge|=%.2e", worst)};
}

// --- 7: full-line heat extrapolation reaches the analytic index --------------

Outcome fullline_witten_extrapolation() {
  const std::vector<double> t_grid{45.0, 90.0, 135.0, 180.0};
  const long n = 1500;
  double worst = 0.0;
  for (const AnisotropicLimits& limits :
       {make_limits(0.3, 0.8, 0.8, 0.3),      // Fredholm, index 1
        make_limits(0.5, 0.5, 0.8, 0.3),      // right side gapless, 1/2
        make_limits(0.5, 0.5, 0.5, -0.5)}) {  // both sides gapless, 1
    const OperatorMatrix q = build_qe0(WalkCoefficients::two_sided_step(limits),
                                       n, Boundary::FullLineTruncated);
    const IndexReport report = witten_numeric(q, t_grid);
    worst = std::max(worst, std::abs(report.extrapolated -
                                     witten_analytic(limits)));
  }
  return {worst < 0.05, fmt("n=1500 max|w-target|=%.2e", worst)};
}

// --- 8: heat-trace identity ---------------------------------------------------

Outcome heat_trace_identity() {
  double worst = 0.0;
  double closed_form_err = 0.0;
  for (double p : {-0.5, 0.0, 0.5}) {
    const KreinCheck check = krein_check(make_halfline_params(p), 10.0, 1500);
    worst = std::max(worst, check.abs_err);
    if (p == 0.0) {
      closed_form_err =
          std::abs(check.rhs - 0.5 * (1.0 - std::exp(-10.0)));
    }
  }
  return {worst < 1e-3 && closed_form_err < 1e-6,
          fmt("max|lhs-rhs|=%.2e |rhs-closed|=%.2e", worst, closed_form_err)};
}

// --- 9: structural reductions --------------------------------------------------

Outcome structural_reductions() {
  // cut defect is exactly the two cut bonds, on all profile families
  const std::vector<WalkCoefficients> profiles{
      WalkCoefficients::two_sided_step(make_limits(0.3, 0.8, -0.75, 0.35)),
      WalkCoefficients::two_sided_step(
          make_limits(0.3, 0.8, -0.75, 0.35, 0.4, -0.9, 0.25, 1.1),
          {{-2, 0.55, -0.2, 0.3, -0.5}, {0, -0.15, 0.6, -1.0, 0.8}}),
      WalkCoefficients::geometric_decay(make_limits(0.3, 0.8, 0.8, 0.3), 0.9,
                                        0.05, -0.05, 0.4, 0.2),
      WalkCoefficients::geometric_decay(make_limits(0.5, -0.2, -0.6, 0.4),
                                        0.75, 0.1, 0.15, -0.3, 0.5)};
  long max_rank = 0;
  for (const WalkCoefficients& c : profiles) {
    const OperatorMatrix q = build_qe0(c, 256, Boundary::FullLineTruncated);
    max_rank = std::max(max_rank, split_at_origin(q).defect_rank);
  }

  // window-doubling stability of the comparison residual for summable decay
  double worst_rel = 0.0;
  for (std::size_t i = 2; i < profiles.size(); ++i) {
    const double r800 = reduction_residual(profiles[i], 800);
    const double r1600 = reduction_residual(profiles[i], 1600);
    worst_rel = std::max(worst_rel, std::abs(r1600 - r800) / r1600);
  }
  return {max_rank <= 2 && worst_rel < 0.01,
          fmt("defect_rank<=%.0f residual_drift=%.2e",
              static_cast<double>(max_rank), worst_rel)};
}

// --- 10: exact algebra ----------------------------------------------------------

Outcome exact_algebra() {
  const WalkCoefficients c = WalkCoefficients::two_sided_step(
      make_limits(0.3, 0.8, -0.75, 0.35, 0.4, -0.9, 0.25, 1.1),
      {{-2, 0.55, -0.2, 0.3, -0.5},
       {0, -0.15, 0.6, -1.0, 0.8},
       {3, 0.05, 0.4, 0.9, -0.3}});
  const long n = 64;
  const WalkOperators ops = build_walk(c, n, Boundary::Cyclic);
  const Matrix id = Matrix::Identity(2 * n, 2 * n);
  double chiral = 0.0;
  chiral = std::max(chiral, max_abs(ops.gamma.entries * ops.gamma.entries -
                                    id));
  chiral = std::max(chiral, max_abs(ops.walk.entries *
                                        ops.walk.entries.adjoint() - id));
  chiral = std::max(chiral,
                    max_abs(ops.gamma.entries * ops.walk.entries *
                                ops.gamma.entries -
                            ops.walk.entries.adjoint()));
  chiral = std::max(chiral, max_abs(ops.gamma.entries *
                                        ops.supercharge.entries +
                                    ops.supercharge.entries *
                                        ops.gamma.entries));

  const ChiralBlock block = chiral_block_extract(ops.gamma, ops.supercharge);
  const OperatorMatrix qr = build_qe0(c, n, Boundary::Cyclic);
  const double sv_block =
      (Eigen::BDCSVD<Matrix>(block.block).singularValues() -
       Eigen::BDCSVD<Matrix>(qr.entries).singularValues())
          .cwiseAbs()
          .maxCoeff();

  const WalkCoefficients flat = apply_gauge(c, walk_phase_gauge(c), 128);
  const double sv_gauge =
      (Eigen::BDCSVD<Matrix>(
           build_qe0(c, 128, Boundary::FullLineTruncated).entries)
           .singularValues() -
       Eigen::BDCSVD<Matrix>(
           build_qe0(flat, 128, Boundary::FullLineTruncated).entries)
           .singularValues())
          .cwiseAbs()
          .maxCoeff();

  std::mt19937 rng(161803);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> zre(-1.5, 1.5);
  auto hermitian8 = [&] {
    Matrix raw(8, 8);
    for (long i = 0; i < 8; ++i)
      for (long j = 0; j < 8; ++j)
        raw(i, j) = Complex(gauss(rng), gauss(rng));
    OperatorMatrix m;
    m.entries = 0.5 * (raw + raw.adjoint());
    m.window = {0, 8};
    return m;
  };
  double bound_margin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 100; ++k) {
    const ExpBoundCheck check = exp_difference_bound_check(
        hermitian8(), hermitian8(), Complex(zre(rng), zre(rng)));
    bound_margin = std::min(bound_margin, check.rhs - check.lhs);
  }

  double moment_err = 0.0;
  const double catalan[] = {1.0, 2.0, 5.0, 14.0};
  for (int k = 1; k <= 4; ++k) {
    const double moment = semicircle_integral(
        [k](double t) { return std::pow(t, 2 * k); });
    moment_err = std::max(moment_err, std::abs(moment - catalan[k - 1]));
  }

  const bool pass = chiral < 1e-12 && sv_block < 1e-10 && sv_gauge < 1e-12 &&
                    bound_margin >= -1e-12 && moment_err < 1e-12;
  return {pass, fmt("chiral=%.1e sv_block=%.1e sv_gauge=%.1e", chiral,
                    sv_block, sv_gauge) +
                    fmt(" bound_margin=%.1e moments=%.1e", bound_margin,
                        moment_err)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> gate{
      {"limit-classification-triple-agreement", classification_triple_agreement},
      {"half-integer-catalogue", half_integer_catalogue},
      {"semicircle-transform-oracle", semicircle_transform_oracle},
      {"determinant-resolvent-oracle", determinant_resolvent_oracle},
      {"shift-function-boundary-argument", shift_function_boundary_argument},
      {"halfline-edge-extrapolation", halfline_edge_extrapolation},
      {"fullline-witten-extrapolation", fullline_witten_extrapolation},
      {"heat-trace-identity", heat_trace_identity},
      {"structural-reductions", structural_reductions},
      {"exact-algebra", exact_algebra},
  };

  int failed = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < gate.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = gate[i].run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("[%s] %2zu/10 %-40s %s  (%.1fs)\n",
                outcome.pass ? "PASS" : "FAIL", i + 1, gate[i].name,
                outcome.metric.c_str(), secs);
    std::fflush(stdout);
    if (!outcome.pass) ++failed;
  }
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::printf("%d/10 criteria passed  (%.1fs total)\n",
              10 - failed, total);
  return failed == 0 ? 0 : 1;
}
