#include "ssqw/gauge.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace ssqw {

GaugePair phase_elimination(std::function<double(long)> theta1,
                            std::function<double(long)> theta2, long m) {
  if (m == 0) {
    throw std::invalid_argument("phase_elimination: shift m must be nonzero");
  }

  auto phi = [theta1, theta2, m](long x) { return theta2(x + m) - theta1(x); };

  // Reduce a negative shift to the positive-shift recursion: with m' = -m,
  // f(x + m) - f(x) = phi(x) is equivalent to f(y + m') - f(y) = -phi(y + m').
  const long mp = m > 0 ? m : -m;
  std::function<double(long)> rhs;
  if (m > 0) {
    rhs = phi;
  } else {
    rhs = [phi, mp](long y) { return -phi(y + mp); };
  }

  auto f = [rhs, mp](long x) -> double {
    // Decompose x = mp*k + r with r in {0, ..., mp-1}; f vanishes on the
    // seed block (k = 0) and accumulates rhs along the residue class.
    const long r = ((x % mp) + mp) % mp;
    const long k = (x - r) / mp;
    double sum = 0.0;
    if (k >= 1) {
      for (long y = 0; y < k; ++y) sum += rhs(mp * y + r);
    } else if (k <= -1) {
      for (long y = 1; y <= -k; ++y) sum -= rhs(-mp * y + r);
    }
    return sum;
  };
  auto g = [f, theta2](long x) { return f(x) - theta2(x); };
  return {std::move(f), std::move(g), m};
}

GaugePair walk_phase_gauge(const WalkCoefficients& c) {
  auto theta1 = [c](long x) { return std::arg(c.q(x)); };
  auto theta2 = [c](long x) { return std::arg(std::conj(c.b(x))); };
  return phase_elimination(std::move(theta1), std::move(theta2), 1);
}

WalkCoefficients apply_gauge(const WalkCoefficients& c, const GaugePair& gauge,
                             long n) {
  constexpr double kTol = 1e-12;
  const long half = n / 2 + 1;
  for (long x = -half; x <= half; ++x) {
    // Conjugated hopping coefficient q(x) e^{i(g(x+1) - f(x))} and coin
    // coefficient b(x) e^{i(f(x) - g(x))} must land on [0, inf).
    const Complex q_new =
        c.q(x) * std::polar(1.0, gauge.g(x + 1) - gauge.f(x));
    const Complex b_new =
        c.b(x) * std::polar(1.0, gauge.f(x) - gauge.g(x));
    const double q_defect = std::abs(q_new - Complex(std::abs(q_new), 0.0));
    const double b_defect = std::abs(b_new - Complex(std::abs(b_new), 0.0));
    if (q_defect > kTol || b_defect > kTol) {
      std::ostringstream msg;
      msg << "apply_gauge: gauge pair fails to clear the phases at site " << x
          << " (hopping defect " << q_defect << ", coin defect " << b_defect
          << ")";
      throw std::invalid_argument(msg.str());
    }
  }
  return c.phase_free();
}

}  // namespace ssqw
