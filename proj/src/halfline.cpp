#include "ssqw/halfline.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ssqw {

namespace {

constexpr Complex kImag{0.0, 1.0};

void require_sites(const char* where, long n) {
  if (n < 2) {
    std::ostringstream msg;
    msg << where << ": need at least 2 sites, got " << n;
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

FSymbol make_symbol(Side side, double a_lim, double p_lim) {
  if (!(std::abs(a_lim) <= 1.0 && std::abs(p_lim) <= 1.0)) {
    std::ostringstream msg;
    msg << "make_symbol: limits must lie in [-1, 1], got a = " << a_lim
        << ", p = " << p_lim;
    throw std::invalid_argument(msg.str());
  }
  return {side, a_lim, p_lim, std::sqrt(1.0 - a_lim * a_lim),
          std::sqrt(1.0 - p_lim * p_lim)};
}

Complex f_symbol_eval(const FSymbol& s, Complex z) {
  return 0.5 * kImag *
         ((1.0 + s.p_lim) * s.b_lim * z - (1.0 - s.p_lim) * s.b_lim * std::conj(z) -
          2.0 * s.q_lim * s.a_lim);
}

OperatorMatrix build_F_halfline(const FSymbol& s, long n) {
  require_sites("build_F_halfline", n);
  Matrix f = Matrix::Zero(n, n);
  // With v delta_x = delta_{x+1} (sub-diagonal 1s), the plus side evaluates
  // the symbol at X = v*, the minus side at X = v.
  const Complex up_coeff = 0.5 * kImag * (1.0 + s.p_lim) * s.b_lim;
  const Complex down_coeff = -0.5 * kImag * (1.0 - s.p_lim) * s.b_lim;
  const Complex diag = -kImag * s.q_lim * s.a_lim;
  for (long x = 0; x < n; ++x) {
    f(x, x) = diag;
    if (x + 1 < n) {
      if (s.side == Side::Plus) {
        f(x, x + 1) = up_coeff;    // (1+p) b on X = v* (super-diagonal)
        f(x + 1, x) = down_coeff;  // -(1-p) b on X* = v
      } else {
        f(x + 1, x) = up_coeff;    // (1+p) b on X = v (sub-diagonal)
        f(x, x + 1) = down_coeff;  // -(1-p) b on X* = v*
      }
    }
  }
  return {std::move(f), Boundary::HalfLineTruncated, {0, n}, 1};
}

OperatorMatrix product_closed_form(const FSymbol& s, ProductKind which, long n,
                                   ProductForm form) {
  require_sites("product_closed_form", n);
  const double a = s.a_lim, p = s.p_lim, b = s.b_lim, q = s.q_lim;

  // The boundary defect coefficient: b^2 (1+p)^2 when the inner factor's
  // range misses delta_0 (plus side A*A, minus side AA*), b^2 (1-p)^2 in the
  // two complementary cases.
  const bool heavy_defect =
      (s.side == Side::Plus) == (which == ProductKind::AstarA);
  const double omega = b * b * (heavy_defect ? (1.0 + p) * (1.0 + p)
                                             : (1.0 - p) * (1.0 - p));

  if (form == ProductForm::Expanded) {
    Matrix m = Matrix::Zero(n, n);
    const double second = -0.25 * b * b * (1.0 - p * p);
    const double first = -a * b * p * q;
    const double constant =
        0.25 * (2.0 * b * b * (1.0 + p * p) + 4.0 * a * a * q * q);
    for (long x = 0; x < n; ++x) {
      m(x, x) = constant;
      if (x + 1 < n) {
        m(x, x + 1) = first;
        m(x + 1, x) = first;
      }
      if (x + 2 < n) {
        m(x, x + 2) = second;
        m(x + 2, x) = second;
      }
    }
    m(0, 0) -= 0.25 * omega;
    return {std::move(m), Boundary::HalfLineTruncated, {0, n}, 1};
  }

  // Completed square: requires the gapless relation |a| = |p| (then
  // b^2 = q^2 = 1 - p^2 and the pentadiagonal form collapses to
  // 1 - alpha [ K^2 + (2/(1 -+ p)) |delta_0><delta_0| ]).
  if (std::abs(a) != std::abs(p)) {
    std::ostringstream msg;
    msg << "product_closed_form: the completed-square form needs |a| = |p|, "
           "got |a| = "
        << std::abs(a) << ", |p| = " << std::abs(p);
    throw std::invalid_argument(msg.str());
  }
  if (!(std::abs(p) < 1.0)) {
    throw std::invalid_argument(
        "product_closed_form: the completed-square form needs |p| < 1");
  }
  // Effective (A, P) of the square: (a, p) in the heavy-defect cases,
  // (-a, -p) in the light ones -- the same dichotomy as omega above.
  const double sign = heavy_defect ? 1.0 : -1.0;
  HalfLineParams params{sign * p, sign * a};
  const double alpha = params.alpha();

  Matrix k = Matrix::Zero(n, n);
  const double shift =
      2.0 * params.A * params.P / (1.0 - params.P * params.P);
  for (long x = 0; x < n; ++x) {
    k(x, x) = shift;
    if (x + 1 < n) {
      k(x, x + 1) = 1.0;
      k(x + 1, x) = 1.0;
    }
  }
  Matrix m = Matrix::Identity(n, n) - alpha * (k * k).eval();
  m(0, 0) -= alpha * 2.0 / (1.0 - params.P);
  return {std::move(m), Boundary::HalfLineTruncated, {0, n}, 1};
}

HalfLineParams make_halfline_params(double P, std::optional<double> A) {
  if (!(std::abs(P) < 1.0)) {
    throw std::invalid_argument(
        "make_halfline_params: need |P| < 1, got P = " + std::to_string(P));
  }
  const double a = A.value_or(-P);
  if (std::abs(a) != std::abs(P)) {
    std::ostringstream msg;
    msg << "make_halfline_params: need |A| = |P|, got A = " << a
        << ", P = " << P;
    throw std::invalid_argument(msg.str());
  }
  return {P, a};
}

OperatorMatrix build_T(const HalfLineParams& params, bool with_rank_one,
                       long n) {
  require_sites("build_T", n);
  const double shift =
      2.0 * params.A * params.P / (1.0 - params.P * params.P);
  RealMatrix k = RealMatrix::Zero(n, n);
  for (long x = 0; x < n; ++x) {
    k(x, x) = shift;
    if (x + 1 < n) {
      k(x, x + 1) = 1.0;
      k(x + 1, x) = 1.0;
    }
  }
  RealMatrix t = k * k;
  if (with_rank_one) t(0, 0) += 2.0 / (1.0 - params.P);
  return {t.cast<Complex>(), Boundary::HalfLineTruncated, {0, n}, 1};
}

double parity_conjugate_check(const HalfLineParams& params, long n) {
  const OperatorMatrix t_a = build_T(params, true, n);
  const OperatorMatrix t_minus_a =
      build_T({params.P, -params.A}, true, n);
  double max_dev = 0.0;
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      const double parity = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      max_dev = std::max(max_dev,
                         std::abs(parity * t_a.entries(i, j) -
                                  t_minus_a.entries(i, j)));
    }
  }
  return max_dev;
}

}  // namespace ssqw
