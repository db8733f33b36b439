#include "ssqw/verify.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ssqw/analytic.hpp"
#include "ssqw/coefficients.hpp"
#include "ssqw/core_ops.hpp"
#include "ssqw/gauge.hpp"
#include "ssqw/halfline.hpp"
#include "ssqw/index_engine.hpp"
#include "ssqw/walk_builders.hpp"

namespace ssqw {

namespace {

class SuiteBuilder {
 public:
  explicit SuiteBuilder(double tol_scale) : scale_(tol_scale) {}

  void add(std::string name, double value, double tolerance) {
    const double scaled = tolerance * scale_;
    checks_.push_back({std::move(name), value, scaled,
                       !std::isnan(value) && value <= scaled});
  }

  std::vector<VerifyCheck> take() { return std::move(checks_); }

 private:
  double scale_;
  std::vector<VerifyCheck> checks_;
};

long even_clamp(long n, long lo, long hi) {
  const long v = std::clamp(n, lo, hi);
  return v - (v % 2);
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// A deliberately messy but valid profile: anisotropic moduli, all four
// phases nonzero, and a few overridden sites near the origin.
WalkCoefficients sample_profile() {
  const AnisotropicLimits limits =
      make_limits(0.3, 0.8, -0.75, 0.35, 0.4, -0.9, 0.25, 1.1);
  const std::vector<SiteOverride> overrides = {
      {-2, 0.55, -0.2, 0.3, -0.5},
      {0, -0.15, 0.6, -1.0, 0.8},
      {3, 0.05, 0.4, 0.9, -0.3},
  };
  return WalkCoefficients::two_sided_step(limits, overrides);
}

OperatorMatrix random_hermitian(long n, std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix r(n, n);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) r(i, j) = Complex(gauss(rng), gauss(rng));
  }
  Matrix h = 0.5 * (r + r.adjoint());
  return {std::move(h), Boundary::FullLineTruncated, {0, n}, 1};
}

void append_algebra(SuiteBuilder& b, long n) {
  const long nw = even_clamp(n, 16, 128);
  const WalkCoefficients c = sample_profile();
  const WalkOperators ops = build_walk(c, nw, Boundary::Cyclic);
  const Matrix& g = ops.gamma.entries;
  const Matrix& gp = ops.gamma_prime.entries;
  const Matrix& u = ops.walk.entries;
  const Matrix& q = ops.supercharge.entries;
  const Matrix id = Matrix::Identity(g.rows(), g.cols());

  b.add("factor-involutions",
        std::max(max_abs(g * g - id), max_abs(gp * gp - id)), 1e-12);
  b.add("chiral-conjugation", max_abs(g * u * g - u.adjoint()), 1e-12);
  b.add("chiral-anticommutator", max_abs(g * q + q * g), 1e-12);

  // The compression of Q between the gamma eigenspaces must carry the same
  // singular values as the directly assembled reduced generator.
  const OperatorMatrix qe0 = build_qe0(c, nw, Boundary::Cyclic);
  const ChiralBlock block = chiral_block_extract(ops.gamma, ops.supercharge);
  const Eigen::BDCSVD<Matrix> svd_block(block.block);
  const Eigen::BDCSVD<Matrix> svd_qe0(qe0.entries);
  b.add(
      "reduced-block-svs",
      (svd_block.singularValues() - svd_qe0.singularValues()).cwiseAbs().maxCoeff(),
      1e-10);

  // Pentadiagonal closed form of the one-sided products vs the explicit
  // matrix product, away from the far-edge rows the truncation touches.
  double worst_closed = 0.0;
  const long nh = 40;
  for (const auto& limits : {std::pair{0.3, 0.8}, std::pair{0.5, -0.5}}) {
    for (Side side : {Side::Plus, Side::Minus}) {
      const FSymbol s = make_symbol(side, limits.first, limits.second);
      const Matrix f = build_F_halfline(s, nh).entries;
      for (ProductKind kind : {ProductKind::AstarA, ProductKind::AAstar}) {
        const Matrix wanted = kind == ProductKind::AstarA
                                  ? Matrix(f.adjoint() * f)
                                  : Matrix(f * f.adjoint());
        const Matrix closed = product_closed_form(s, kind, nh).entries;
        worst_closed = std::max(
            worst_closed,
            max_abs((closed - wanted).topLeftCorner(nh - 2, nh - 2)));
      }
    }
  }
  b.add("closed-product", worst_closed, 1e-12);

  // Shifted-square form agrees with the expanded form except in the far
  // corner entry that the truncation treats differently.
  double worst_square = 0.0;
  const FSymbol gapless = make_symbol(Side::Plus, 0.6, 0.6);
  for (ProductKind kind : {ProductKind::AstarA, ProductKind::AAstar}) {
    Matrix diff =
        product_closed_form(gapless, kind, nh, ProductForm::CompletedSquare)
            .entries -
        product_closed_form(gapless, kind, nh, ProductForm::Expanded).entries;
    diff(nh - 1, nh - 1) = 0.0;
    worst_square = std::max(worst_square, max_abs(diff));
  }
  b.add("completed-square", worst_square, 1e-12);

  b.add("parity-conjugation",
        parity_conjugate_check(make_halfline_params(0.6), 64), 1e-14);

  const QuadratureRule rule = angle_midpoint_rule();
  const double catalan[] = {1.0, 2.0, 5.0, 14.0};
  double worst_moment = 0.0;
  for (int k = 1; k <= 4; ++k) {
    const double moment = semicircle_integral(
        [k](double t) { return std::pow(t, 2 * k); }, rule);
    worst_moment = std::max(worst_moment, std::abs(moment - catalan[k - 1]));
  }
  b.add("semicircle-moments", worst_moment, 1e-12);

  const OperatorMatrix qf = build_qe0(c, nw, Boundary::FullLineTruncated);
  b.add("cut-defect-rank",
        static_cast<double>(split_at_origin(qf).defect_rank), 2.0);
}

void append_analytic(SuiteBuilder& b, long n) {
  std::mt19937 rng(20260819u);
  std::uniform_real_distribution<double> re(-4.0, 4.0);
  std::uniform_real_distribution<double> im(0.05, 3.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  double worst_quadratic = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Complex z(re(rng), (coin(rng) < 0.5 ? -1.0 : 1.0) * im(rng));
    const Complex h = stieltjes_h(z);
    worst_quadratic = std::max(worst_quadratic, std::abs(h * h + z * h + 1.0));
  }
  b.add("stieltjes-quadratic", worst_quadratic, 1e-12);

  const QuadratureRule rule = angle_midpoint_rule();
  double worst_quadrature = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Complex z(re(rng), 0.5 + 2.0 * coin(rng));
    const double quad_re = semicircle_integral(
        [z](double t) { return std::real(1.0 / (t - z)); }, rule);
    const double quad_im = semicircle_integral(
        [z](double t) { return std::imag(1.0 / (t - z)); }, rule);
    worst_quadrature = std::max(
        worst_quadrature, std::abs(stieltjes_h(z) - Complex(quad_re, quad_im)));
  }
  b.add("stieltjes-quadrature", worst_quadrature, 1e-10);

  const long n_res = std::max<long>(800, n);
  double worst_det = 0.0;
  for (double p : {0.0, 0.5, -0.3}) {
    const HalfLineParams params = make_halfline_params(p);
    const OperatorMatrix t0 = build_T(params, false, n_res);
    for (const Complex z : {Complex(1.0, 1.0), Complex(-2.0, 0.5),
                            Complex(3.0, 2.0), Complex(0.5, -1.0),
                            Complex(-1.0, 0.0), Complex(8.0, 0.7)}) {
      const Complex direct = perturbation_determinant(z, params);
      const Complex via_resolvent =
          1.0 + 2.0 / (1.0 - p) * resolvent_entry(t0, z);
      worst_det = std::max(worst_det, std::abs(direct - via_resolvent));
    }
  }
  b.add("determinant-vs-resolvent", worst_det, 1e-8);

  const double eps = 1e-6;
  double worst_arg = 0.0;
  for (double p : {0.5, -0.3, 0.8}) {
    const HalfLineParams params = make_halfline_params(p);
    const double m = params.m();
    const double edge = params.edge();
    const double inner = 4.0 * (m - 1.0) * (m - 1.0);
    for (int j = 0; j < 48; ++j) {
      const double x = edge * (j + 0.5) / 48.0;
      // The +i eps regularization smears the breakpoints over a sqrt(eps)
      // neighborhood; stay clear of them.
      if (std::abs(x - inner) < 0.02 * edge || x < 0.02 * edge ||
          edge - x < 0.02 * edge) {
        continue;
      }
      const SSFSample sample = ssf(x, params);
      if (sample.degenerate) continue;
      const double arg =
          std::arg(perturbation_determinant(Complex(x, eps), params)) /
          std::numbers::pi;
      worst_arg = std::max(worst_arg, std::abs(sample.xi - arg));
    }
  }
  b.add("ssf-boundary-argument", worst_arg, 1e-3);

  double worst_range = 0.0;
  for (double p : {0.0, 0.5, -0.3, 0.8}) {
    const HalfLineParams params = make_halfline_params(p);
    const double edge = params.edge();
    for (int j = 0; j < 120; ++j) {
      const double x = -1.0 + (1.2 * edge + 1.0) * j / 119.0;
      const SSFSample sample = ssf(x, params);
      if (sample.degenerate) continue;
      double violation = std::max(-sample.xi, sample.xi - 1.0);
      if (sample.region == RegionTag::BelowZero ||
          sample.region == RegionTag::AboveEdge) {
        violation = std::max(violation, std::abs(sample.xi));
      }
      worst_range = std::max(worst_range, violation);
    }
  }
  b.add("ssf-range", worst_range, 1e-12);
}

void append_heat(SuiteBuilder& b, long n) {
  // A Hermitian reduced generator has equal products, so every heat-trace
  // sample vanishes identically.
  const WalkCoefficients flat =
      WalkCoefficients::two_sided_step(make_limits(0.0, 0.0, 0.0, 0.0));
  const long nh = even_clamp(n, 32, 64);
  const OperatorMatrix q = build_qe0(flat, nh, Boundary::FullLineTruncated);
  const IndexReport flat_report = witten_numeric(q, {1.0, 2.0, 4.0});
  double worst_zero = 0.0;
  for (const auto& [t, value] : flat_report.samples) {
    (void)t;
    worst_zero = std::max(worst_zero, std::abs(value));
  }
  b.add("hermitian-zero", worst_zero, 1e-12);

  // The (n+1) x n truncation of the right shift keeps v*v = 1 exactly, so
  // its heat-trace index is exactly -1 at every t.
  const long ns = std::clamp<long>(n, 32, 128);
  const OperatorMatrix full_shift = halfline_shift(ns + 1);
  const OperatorMatrix rect{Matrix(full_shift.entries.leftCols(ns)),
                            Boundary::HalfLineTruncated,
                            {0, ns},
                            1};
  double worst_shift = 0.0;
  for (const double t : {1.0, 3.0, static_cast<double>(ns) / 8.0}) {
    worst_shift = std::max(worst_shift, std::abs(ind_t(rect, t) + 1.0));
  }
  b.add("shift-index-constant", worst_shift, 1e-12);

  std::mt19937 rng(7171u);
  double worst_bound = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const OperatorMatrix h1 = random_hermitian(8, rng);
    const OperatorMatrix h0 = random_hermitian(8, rng);
    for (const Complex z :
         {Complex(-1.0, 0.0), Complex(0.0, 1.0), Complex(0.5, 0.5)}) {
      const ExpBoundCheck check = exp_difference_bound_check(h1, h0, z);
      worst_bound =
          std::max(worst_bound, (check.lhs - check.rhs) / (1.0 + check.rhs));
    }
  }
  b.add("exponential-difference-bound", std::max(worst_bound, 0.0), 1e-12);

  // A gapped (Fredholm) profile: the interior heat trace converges to the
  // integer index exponentially fast, well inside the coarse tolerance.
  const long nf = even_clamp(std::max<long>(n, 320), 320, 640);
  const WalkCoefficients fred =
      WalkCoefficients::two_sided_step(make_limits(0.3, 0.8, 0.8, 0.3));
  const OperatorMatrix qf = build_qe0(fred, nf, Boundary::FullLineTruncated);
  const double tmax = static_cast<double>(nf) / 8.0;
  const IndexReport fred_report = witten_numeric(
      qf, {tmax / 4.0, tmax / 2.0, 3.0 * tmax / 4.0, tmax});
  b.add("fredholm-heat-index", std::abs(fred_report.extrapolated - 1.0), 0.05);

  // Full-trace heat index is additive over direct sums.
  const long na = 24, nb = 16;
  const Matrix a1 = halfline_shift(na + 1).entries.leftCols(na);
  const Matrix a2 = 0.7 * halfline_shift(nb + 1).entries.leftCols(nb);
  Matrix ds = Matrix::Zero(na + nb + 2, na + nb);
  ds.topLeftCorner(na + 1, na) = a1;
  ds.bottomRightCorner(nb + 1, nb) = a2;
  const OperatorMatrix block1{Matrix(a1), Boundary::HalfLineTruncated, {0, na}, 1};
  const OperatorMatrix block2{Matrix(a2), Boundary::HalfLineTruncated, {0, nb}, 1};
  const OperatorMatrix sum{std::move(ds), Boundary::HalfLineTruncated,
                           {0, na + nb}, 1};
  const double t_sum = 3.0;
  b.add("direct-sum-additivity",
        std::abs(ind_t(sum, t_sum) - ind_t(block1, t_sum) -
                 ind_t(block2, t_sum)),
        1e-12);
}

void append_krein(SuiteBuilder& b, long n) {
  const long nk = std::max<long>(n, 512);
  const double t = std::min(10.0, static_cast<double>(nk) / 8.0);

  const KreinCheck center = krein_check(make_halfline_params(0.0), t, nk);
  b.add("identity-isotropic", center.abs_err, 1e-3);
  b.add("closed-form-isotropic",
        std::abs(center.rhs - 0.5 * (1.0 - std::exp(-t))), 1e-6);
  b.add("identity-positive",
        krein_check(make_halfline_params(0.5), t, nk).abs_err, 1e-3);
  b.add("identity-negative",
        krein_check(make_halfline_params(-0.5), t, nk).abs_err, 1e-3);
}

void append_gauge(SuiteBuilder& b, long n) {
  const WalkCoefficients c = sample_profile();
  const GaugePair gauge = walk_phase_gauge(c);

  double worst_normal = 0.0;
  for (long x = -40; x <= 40; ++x) {
    const Complex qt =
        c.q(x) * std::polar(1.0, gauge.g(x + 1) - gauge.f(x));
    const Complex bt = c.b(x) * std::polar(1.0, gauge.f(x) - gauge.g(x));
    worst_normal = std::max({worst_normal, std::abs(qt - Complex(std::abs(qt))),
                             std::abs(bt - Complex(std::abs(bt)))});
  }
  b.add("normal-form-residual", worst_normal, 1e-12);

  const long ng = even_clamp(n, 32, 128);
  const WalkCoefficients phase_free = apply_gauge(c, gauge, ng);
  const OperatorMatrix q1 = build_qe0(c, ng, Boundary::FullLineTruncated);
  const OperatorMatrix q2 = build_qe0(phase_free, ng, Boundary::FullLineTruncated);
  const Eigen::BDCSVD<Matrix> svd1(q1.entries);
  const Eigen::BDCSVD<Matrix> svd2(q2.entries);
  b.add("generator-sv-invariance",
        (svd1.singularValues() - svd2.singularValues()).cwiseAbs().maxCoeff(),
        1e-12);

  // Constant phase pi/3 on a 60-site ring: the eliminating gauge is itself
  // periodic, so phased and phase-free walks are exactly unitarily
  // equivalent and the supercharge spectra coincide.
  const double phase = std::numbers::pi / 3.0;
  const WalkCoefficients ring = WalkCoefficients::two_sided_step(
      make_limits(0.45, 0.7, -0.3, 0.5, phase, phase, phase, phase));
  const long nc = 60;
  const OperatorMatrix qa = build_walk(ring, nc, Boundary::Cyclic).supercharge;
  const OperatorMatrix qb =
      build_walk(ring.phase_free(), nc, Boundary::Cyclic).supercharge;
  b.add("cyclic-phase-spectrum",
        (hermitian_eigenvalues(qa) - hermitian_eigenvalues(qb))
            .cwiseAbs()
            .maxCoeff(),
        1e-12);
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const VerifyCheck& c) { return c.pass; });
}

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"algebra", "analytic", "heat",
                                              "krein", "gauge", "all"};
  return names;
}

VerifyReport run_verify_suite(const std::string& suite, long n,
                              double tol_scale) {
  if (!(tol_scale > 0.0)) {
    throw std::invalid_argument("run_verify_suite: tol_scale must be > 0");
  }
  SuiteBuilder builder(tol_scale);
  if (suite == "algebra") {
    append_algebra(builder, n);
  } else if (suite == "analytic") {
    append_analytic(builder, n);
  } else if (suite == "heat") {
    append_heat(builder, n);
  } else if (suite == "krein") {
    append_krein(builder, n);
  } else if (suite == "gauge") {
    append_gauge(builder, n);
  } else if (suite == "all") {
    append_algebra(builder, n);
    append_analytic(builder, n);
    append_heat(builder, n);
    append_krein(builder, n);
    append_gauge(builder, n);
  } else {
    throw std::invalid_argument("run_verify_suite: unknown suite '" + suite +
                                "'");
  }
  return {suite, builder.take()};
}

}  // namespace ssqw
