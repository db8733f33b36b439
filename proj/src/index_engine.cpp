#include "ssqw/index_engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ssqw/core_ops.hpp"

namespace ssqw {

namespace {

struct ProductSpectra {
  RealVector astar_a;  // ascending spectrum of A*A
  RealVector a_astar;  // ascending spectrum of A A*
};

// One eigendecomposition per product; callers loop over t against these.
ProductSpectra product_spectra(const OperatorMatrix& a) {
  const Matrix& m = a.entries;
  const Matrix p1 = m.adjoint() * m;
  const Matrix p0 = m * m.adjoint();
  // The products are Hermitian up to rounding; symmetrize so the strict
  // check inside the eigensolver never trips on accumulated noise.
  const Matrix sym1 = 0.5 * (p1 + p1.adjoint());
  const Matrix sym0 = 0.5 * (p0 + p0.adjoint());
  OperatorMatrix w1{sym1, a.boundary, {0, sym1.rows()}, 1};
  OperatorMatrix w0{sym0, a.boundary, {0, sym0.rows()}, 1};
  return {hermitian_eigenvalues(w1), hermitian_eigenvalues(w0)};
}

// Heat-trace difference that also accepts spectra of different lengths
// (rectangular A): the top min-length eigenvalues pair up, the leftover
// small eigenvalues of the longer spectrum enter unpaired.
double rectangular_heat_sample(const RealVector& ev1, const RealVector& ev0,
                               double t) {
  const long n1 = ev1.size();
  const long n0 = ev0.size();
  if (n1 == n0) return heat_trace_diff_spectra(ev1, ev0, t);
  const long k = std::min(n1, n0);
  double sum = 0.0;
  for (long i = 1; i <= k; ++i) {
    sum += std::exp(-t * ev1(n1 - i)) - std::exp(-t * ev0(n0 - i));
  }
  for (long i = 0; i < n1 - k; ++i) sum += std::exp(-t * ev1(i));
  for (long i = 0; i < n0 - k; ++i) sum -= std::exp(-t * ev0(i));
  return sum;
}

void validate_t_grid(const std::vector<double>& t_grid, long dim,
                     const char* where) {
  if (t_grid.empty()) {
    throw std::invalid_argument(std::string(where) + ": empty t grid");
  }
  double prev = 0.0;
  for (double t : t_grid) {
    if (!(t > prev)) {
      throw std::invalid_argument(
          std::string(where) +
          ": t grid must be positive and strictly increasing");
    }
    prev = t;
  }
  const double cap = static_cast<double>(dim) / 8.0;
  if (t_grid.back() > cap) {
    std::ostringstream msg;
    msg << where << ": max t " << t_grid.back() << " exceeds dim/8 = " << cap
        << "; the truncation boundary would contaminate the heat trace";
    throw std::invalid_argument(msg.str());
  }
}

// 1 - alpha * ev, reversed so the result is ascending again (alpha > 0).
RealVector shifted_ascending(const RealVector& ev, double alpha) {
  RealVector out(ev.size());
  for (long i = 0; i < ev.size(); ++i) {
    out(ev.size() - 1 - i) = 1.0 - alpha * ev(i);
  }
  return out;
}

struct HalfLineSpectra {
  RealVector with_defect;     // ascending spectrum of 1 - alpha T
  RealVector without_defect;  // ascending spectrum of 1 - alpha T0
};

HalfLineSpectra halfline_shifted_spectra(const HalfLineParams& params,
                                         long n) {
  const OperatorMatrix t1 = build_T(params, true, n);
  const OperatorMatrix t0 = build_T(params, false, n);
  const double alpha = params.alpha();
  return {shifted_ascending(hermitian_eigenvalues(t1), alpha),
          shifted_ascending(hermitian_eigenvalues(t0), alpha)};
}

double adaptive_simpson(const std::function<double(double)>& f, double lo,
                        double hi, double f_lo, double f_mid, double f_hi,
                        double whole, double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double lmid = 0.5 * (lo + mid);
  const double rmid = 0.5 * (mid + hi);
  const double f_lmid = f(lmid);
  const double f_rmid = f(rmid);
  const double left = (mid - lo) / 6.0 * (f_lo + 4.0 * f_lmid + f_mid);
  const double right = (hi - mid) / 6.0 * (f_mid + 4.0 * f_rmid + f_hi);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, lo, mid, f_lo, f_lmid, f_mid, left, 0.5 * tol,
                          depth - 1) +
         adaptive_simpson(f, mid, hi, f_mid, f_rmid, f_hi, right, 0.5 * tol,
                          depth - 1);
}

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double tol) {
  if (!(hi > lo)) return 0.0;
  const double mid = 0.5 * (lo + hi);
  const double f_lo = f(lo);
  const double f_mid = f(mid);
  const double f_hi = f(hi);
  const double whole = (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
  return adaptive_simpson(f, lo, hi, f_lo, f_mid, f_hi, whole, tol, 40);
}

}  // namespace

int sgn(double x) { return (x > 0.0) - (x < 0.0); }

double witten_weight(double r, double s) {
  if (std::abs(r) > 1.0 || std::abs(s) > 1.0) {
    std::ostringstream msg;
    msg << "witten_weight: arguments must lie in [-1, 1], got (" << r << ", "
        << s << ")";
    throw std::invalid_argument(msg.str());
  }
  if (std::abs(r) == 1.0 && std::abs(s) == 1.0) return 0.0;
  return 0.5 * (sgn(r + s) - sgn(r - s));
}

double witten_analytic(const AnisotropicLimits& limits) {
  return witten_weight(limits.a_plus, limits.p_plus) -
         witten_weight(limits.a_minus, limits.p_minus);
}

namespace {

SideRegime side_regime(double a, double p) {
  const double mod_a = std::abs(a);
  const double mod_p = std::abs(p);
  if (mod_a == mod_p) {
    return mod_a == 1.0 ? SideRegime::Endpoint : SideRegime::Gapless;
  }
  return mod_p > mod_a ? SideRegime::ShiftDominant : SideRegime::CoinDominant;
}

bool gapped(SideRegime regime) {
  return regime == SideRegime::CoinDominant ||
         regime == SideRegime::ShiftDominant;
}

}  // namespace

ClassificationCell fredholm_classify(const AnisotropicLimits& limits) {
  ClassificationCell cell;
  cell.limits = limits;
  cell.plus_regime = side_regime(limits.a_plus, limits.p_plus);
  cell.minus_regime = side_regime(limits.a_minus, limits.p_minus);
  cell.fredholm = gapped(cell.plus_regime) && gapped(cell.minus_regime);
  cell.witten = witten_analytic(limits);
  if (cell.fredholm) {
    const int plus = cell.plus_regime == SideRegime::ShiftDominant
                         ? sgn(limits.p_plus)
                         : 0;
    const int minus = cell.minus_regime == SideRegime::ShiftDominant
                          ? -sgn(limits.p_minus)
                          : 0;
    cell.fredholm_index = plus + minus;
  }
  return cell;
}

long winding_number(const FSymbol& symbol, int grid) {
  if (grid < 16) {
    throw std::invalid_argument("winding_number: need at least 16 grid points");
  }
  const double step = 2.0 * std::numbers::pi / grid;
  auto require_invertible = [](Complex f) {
    if (std::abs(f) < 1e-9) {
      throw std::invalid_argument(
          "winding_number: symbol passes within 1e-9 of the origin, so the "
          "curve has no winding number");
    }
    return f;
  };
  const Complex first = require_invertible(f_symbol_eval(symbol, 1.0));
  Complex prev = first;
  double total = 0.0;
  for (int j = 1; j <= grid; ++j) {
    // Close the loop on the exact starting value so the total is an exact
    // sum of small turns.
    const Complex f =
        j == grid
            ? first
            : require_invertible(f_symbol_eval(
                  symbol, std::polar(1.0, -static_cast<double>(j) * step)));
    const double turn = std::arg(f / prev);
    if (std::abs(turn) > 1.5) {
      throw std::invalid_argument(
          "winding_number: grid too coarse to resolve the symbol curve");
    }
    total += turn;
    prev = f;
  }
  const double turns = total / (2.0 * std::numbers::pi);
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 1e-6) {
    std::ostringstream msg;
    msg << "winding_number: accumulated phase " << turns
        << " turns does not close to an integer";
    throw std::runtime_error(msg.str());
  }
  return static_cast<long>(rounded);
}

double ind_t(const OperatorMatrix& a, double t) {
  if (!(t > 0.0)) {
    throw std::invalid_argument("ind_t: need t > 0, got " + std::to_string(t));
  }
  const ProductSpectra spectra = product_spectra(a);
  return rectangular_heat_sample(spectra.astar_a, spectra.a_astar, t);
}

TailFit fit_inverse_sqrt_tail(
    const std::vector<std::pair<double, double>>& samples) {
  if (samples.empty()) {
    throw std::invalid_argument("fit_inverse_sqrt_tail: no samples");
  }
  std::vector<std::pair<double, double>> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  const size_t count = std::min<size_t>(4, sorted.size());
  const size_t begin = sorted.size() - count;

  double s1 = 0.0, s2 = 0.0, b0 = 0.0, b1 = 0.0;
  for (size_t i = begin; i < sorted.size(); ++i) {
    if (!(sorted[i].first > 0.0)) {
      throw std::invalid_argument("fit_inverse_sqrt_tail: need t > 0");
    }
    const double u = 1.0 / std::sqrt(sorted[i].first);
    const double y = sorted[i].second;
    s1 += u;
    s2 += u * u;
    b0 += y;
    b1 += u * y;
  }
  const double s0 = static_cast<double>(count);
  const double det = s0 * s2 - s1 * s1;

  TailFit fit;
  if (count < 2 || det <= 1e-14 * s0 * s2) {
    // One sample, or coincident t values: fall back to the constant model.
    fit.c0 = b0 / s0;
    fit.c1 = 0.0;
  } else {
    fit.c0 = (b0 * s2 - b1 * s1) / det;
    fit.c1 = (s0 * b1 - s1 * b0) / det;
  }
  double rss = 0.0;
  for (size_t i = begin; i < sorted.size(); ++i) {
    const double u = 1.0 / std::sqrt(sorted[i].first);
    const double r = sorted[i].second - fit.c0 - fit.c1 * u;
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / s0);
  return fit;
}

IndexReport witten_numeric(const OperatorMatrix& a,
                           const std::vector<double>& t_grid) {
  const long rows = a.entries.rows();
  const long cols = a.entries.cols();
  const long sites =
      a.window.length > 0 ? a.window.length : std::min(rows, cols);
  validate_t_grid(t_grid, sites, "witten_numeric");

  IndexReport report;
  report.truncation = sites;
  report.samples.reserve(t_grid.size());

  if (rows != cols) {
    // Rectangular truncation: the full trace is the real thing.
    const ProductSpectra spectra = product_spectra(a);
    report.trace_window = a.window;
    for (double t : t_grid) {
      report.samples.emplace_back(
          t, rectangular_heat_sample(spectra.astar_a, spectra.a_astar, t));
    }
  } else {
    // Square truncation: the full trace is identically zero (equal product
    // spectra), so sum the diagonal heat-kernel difference over the middle
    // half of each component block instead.  One decomposition with vectors
    // per product; the interior sites fold into per-mode weights reused
    // across the whole t grid.
    const Matrix& m = a.entries;
    const Matrix p1 = m.adjoint() * m;
    const Matrix p0 = m * m.adjoint();
    Matrix sym1 = 0.5 * (p1 + p1.adjoint());
    Matrix sym0 = 0.5 * (p0 + p0.adjoint());
    const EigenDecomposition e1 =
        hermitian_eig({std::move(sym1), a.boundary, {0, rows}, 1});
    const EigenDecomposition e0 =
        hermitian_eig({std::move(sym0), a.boundary, {0, rows}, 1});

    const long components = a.components > 0 ? a.components : 1;
    const long block = rows / components;
    const long margin = block / 4;
    const long inner = block - 2 * margin;
    report.trace_window = {a.window.first + margin, inner};

    RealVector w1 = RealVector::Zero(rows);
    RealVector w0 = RealVector::Zero(rows);
    for (long c = 0; c < components; ++c) {
      const long lo = c * block + margin;
      for (long k = 0; k < rows; ++k) {
        w1(k) += e1.eigenvectors.col(k).segment(lo, inner).squaredNorm();
        w0(k) += e0.eigenvectors.col(k).segment(lo, inner).squaredNorm();
      }
    }
    for (double t : t_grid) {
      double sum = 0.0;
      for (long k = 0; k < rows; ++k) {
        sum += w1(k) * std::exp(-t * e1.eigenvalues(k)) -
               w0(k) * std::exp(-t * e0.eigenvalues(k));
      }
      report.samples.emplace_back(t, sum);
    }
  }

  const TailFit fit = fit_inverse_sqrt_tail(report.samples);
  report.extrapolated = fit.c0;
  report.fit_residual = fit.residual;
  report.unreliable_fit = fit.residual > 0.1;
  return report;
}

HalfLineWittenReport halfline_witten_numeric(const HalfLineParams& params,
                                             const std::vector<double>& t_grid,
                                             long n) {
  if (n < 2) {
    throw std::invalid_argument("halfline_witten_numeric: need n >= 2, got " +
                                std::to_string(n));
  }
  validate_t_grid(t_grid, n, "halfline_witten_numeric");

  const HalfLineSpectra spectra = halfline_shifted_spectra(params, n);
  HalfLineWittenReport report;
  report.p_limit = params.P;
  report.truncation = n;
  report.target = ssf_edge(params);
  report.samples.reserve(t_grid.size());
  for (double t : t_grid) {
    report.samples.emplace_back(
        t, heat_trace_diff_spectra(spectra.with_defect, spectra.without_defect,
                                   t));
  }
  const TailFit fit = fit_inverse_sqrt_tail(report.samples);
  report.extrapolated = fit.c0;
  report.fit_residual = fit.residual;
  report.unreliable_fit = fit.residual > 0.1;
  return report;
}

KreinCheck krein_check(const HalfLineParams& params, double t, long n) {
  if (!(t > 0.0)) {
    throw std::invalid_argument("krein_check: need t > 0, got " +
                                std::to_string(t));
  }
  validate_t_grid({t}, n, "krein_check");

  KreinCheck check;
  check.truncation = n;
  const HalfLineSpectra spectra = halfline_shifted_spectra(params, n);
  check.lhs = heat_trace_diff_spectra(spectra.with_defect,
                                      spectra.without_defect, t);

  // The right-hand side integrates the spectral shift function against the
  // heat weight t alpha e^{t(alpha x - 1)} over [0, edge].  The integrand is
  // smooth inside each spectral region, so integrate region by region and
  // stay clear of the breakpoint guard bands.
  const double alpha = params.alpha();
  const double m = params.m();
  auto integrand = [&](double x) {
    return t * alpha * std::exp(t * (alpha * x - 1.0)) * ssf(x, params).xi;
  };
  std::vector<double> cuts{0.0, 4.0 * (m - 1.0) * (m - 1.0), params.edge()};
  std::sort(cuts.begin(), cuts.end());
  const double trim = 2e-9;  // twice the breakpoint guard half-width
  double rhs = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i] + trim;
    const double hi = cuts[i + 1] - trim;
    if (hi - lo < 1e-8) continue;
    rhs += integrate(integrand, lo, hi, 1e-9);
  }
  check.rhs = rhs;
  check.abs_err = std::abs(check.lhs - check.rhs);
  return check;
}

}  // namespace ssqw
