#include "ssqw/coefficients.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ssqw {

namespace {

Complex polar_from(double modulus, double phase) {
  return std::polar(modulus, phase);
}

void require_unit_range(const char* name, double value) {
  if (!(std::abs(value) <= 1.0)) {
    std::ostringstream msg;
    msg << "make_limits: |" << name << "| must be <= 1, got " << value;
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

AnisotropicLimits make_limits(double a_plus, double p_plus, double a_minus,
                              double p_minus, double b_plus_phase,
                              double q_plus_phase, double b_minus_phase,
                              double q_minus_phase) {
  require_unit_range("a_plus", a_plus);
  require_unit_range("p_plus", p_plus);
  require_unit_range("a_minus", a_minus);
  require_unit_range("p_minus", p_minus);
  AnisotropicLimits l;
  l.a_plus = a_plus;
  l.p_plus = p_plus;
  l.a_minus = a_minus;
  l.p_minus = p_minus;
  l.b_plus = polar_from(std::sqrt(1.0 - a_plus * a_plus), b_plus_phase);
  l.q_plus = polar_from(std::sqrt(1.0 - p_plus * p_plus), q_plus_phase);
  l.b_minus = polar_from(std::sqrt(1.0 - a_minus * a_minus), b_minus_phase);
  l.q_minus = polar_from(std::sqrt(1.0 - p_minus * p_minus), q_minus_phase);
  return l;
}

WalkCoefficients WalkCoefficients::two_sided_step(
    AnisotropicLimits limits, std::vector<SiteOverride> overrides) {
  WalkCoefficients c;
  c.kind_ = ProfileKind::TwoSidedStep;
  c.limits_ = limits;
  c.overrides_ = std::move(overrides);
  return c;
}

WalkCoefficients WalkCoefficients::geometric_decay(AnisotropicLimits limits,
                                                   double rate,
                                                   double a_amplitude,
                                                   double p_amplitude,
                                                   double b_phase_amplitude,
                                                   double q_phase_amplitude) {
  if (!(rate > 0.0 && rate < 1.0)) {
    throw std::invalid_argument("geometric_decay: rate must lie in (0, 1), got " +
                                std::to_string(rate));
  }
  const double a_cap = std::min(1.0 - std::abs(limits.a_plus),
                                1.0 - std::abs(limits.a_minus)) / 2.0;
  const double p_cap = std::min(1.0 - std::abs(limits.p_plus),
                                1.0 - std::abs(limits.p_minus)) / 2.0;
  if (std::abs(a_amplitude) > a_cap || std::abs(p_amplitude) > p_cap) {
    std::ostringstream msg;
    msg << "geometric_decay: amplitudes (" << a_amplitude << ", "
        << p_amplitude << ") exceed the caps (" << a_cap << ", " << p_cap
        << ") that keep the sequences inside (-1, 1)";
    throw std::invalid_argument(msg.str());
  }
  WalkCoefficients c;
  c.kind_ = ProfileKind::GeometricDecay;
  c.limits_ = limits;
  c.rate_ = rate;
  c.a_amplitude_ = a_amplitude;
  c.p_amplitude_ = p_amplitude;
  c.b_phase_amplitude_ = b_phase_amplitude;
  c.q_phase_amplitude_ = q_phase_amplitude;
  return c;
}

WalkCoefficients WalkCoefficients::tabulated(long first_site,
                                             std::vector<double> a,
                                             std::vector<Complex> b,
                                             std::vector<double> p,
                                             std::vector<Complex> q,
                                             AnisotropicLimits limits) {
  if (a.size() != b.size() || a.size() != p.size() || a.size() != q.size()) {
    throw std::invalid_argument("tabulated: the four tables must agree in size");
  }
  WalkCoefficients c;
  c.kind_ = ProfileKind::Tabulated;
  c.limits_ = limits;
  c.table_first_ = first_site;
  c.table_a_ = std::move(a);
  c.table_b_ = std::move(b);
  c.table_p_ = std::move(p);
  c.table_q_ = std::move(q);
  return c;
}

namespace {

// Distance into the half-line: 0 at the first site on either side of the cut.
long halfline_distance(long x) { return x >= 0 ? x : -x - 1; }

}  // namespace

double WalkCoefficients::a(long x) const {
  switch (kind_) {
    case ProfileKind::TwoSidedStep:
      for (const SiteOverride& o : overrides_)
        if (o.x == x) return o.a;
      return x >= 0 ? limits_.a_plus : limits_.a_minus;
    case ProfileKind::GeometricDecay: {
      const double base = x >= 0 ? limits_.a_plus : limits_.a_minus;
      return base + a_amplitude_ * std::pow(rate_, halfline_distance(x));
    }
    case ProfileKind::Tabulated: {
      const long i = x - table_first_;
      if (i >= 0 && i < static_cast<long>(table_a_.size())) return table_a_[i];
      return x >= 0 ? limits_.a_plus : limits_.a_minus;
    }
  }
  return 0.0;  // unreachable
}

double WalkCoefficients::p(long x) const {
  switch (kind_) {
    case ProfileKind::TwoSidedStep:
      for (const SiteOverride& o : overrides_)
        if (o.x == x) return o.p;
      return x >= 0 ? limits_.p_plus : limits_.p_minus;
    case ProfileKind::GeometricDecay: {
      const double base = x >= 0 ? limits_.p_plus : limits_.p_minus;
      return base + p_amplitude_ * std::pow(rate_, halfline_distance(x));
    }
    case ProfileKind::Tabulated: {
      const long i = x - table_first_;
      if (i >= 0 && i < static_cast<long>(table_p_.size())) return table_p_[i];
      return x >= 0 ? limits_.p_plus : limits_.p_minus;
    }
  }
  return 0.0;  // unreachable
}

Complex WalkCoefficients::b(long x) const {
  switch (kind_) {
    case ProfileKind::TwoSidedStep:
      for (const SiteOverride& o : overrides_) {
        if (o.x == x)
          return polar_from(std::sqrt(std::max(0.0, 1.0 - o.a * o.a)),
                            o.b_phase);
      }
      return x >= 0 ? limits_.b_plus : limits_.b_minus;
    case ProfileKind::GeometricDecay: {
      const double ax = a(x);
      const double base_phase =
          std::arg(x >= 0 ? limits_.b_plus : limits_.b_minus);
      const double phase =
          base_phase +
          b_phase_amplitude_ * std::pow(rate_, halfline_distance(x));
      return polar_from(std::sqrt(std::max(0.0, 1.0 - ax * ax)), phase);
    }
    case ProfileKind::Tabulated: {
      const long i = x - table_first_;
      if (i >= 0 && i < static_cast<long>(table_b_.size())) return table_b_[i];
      return x >= 0 ? limits_.b_plus : limits_.b_minus;
    }
  }
  return {};  // unreachable
}

Complex WalkCoefficients::q(long x) const {
  switch (kind_) {
    case ProfileKind::TwoSidedStep:
      for (const SiteOverride& o : overrides_) {
        if (o.x == x)
          return polar_from(std::sqrt(std::max(0.0, 1.0 - o.p * o.p)),
                            o.q_phase);
      }
      return x >= 0 ? limits_.q_plus : limits_.q_minus;
    case ProfileKind::GeometricDecay: {
      const double px = p(x);
      const double base_phase =
          std::arg(x >= 0 ? limits_.q_plus : limits_.q_minus);
      const double phase =
          base_phase +
          q_phase_amplitude_ * std::pow(rate_, halfline_distance(x));
      return polar_from(std::sqrt(std::max(0.0, 1.0 - px * px)), phase);
    }
    case ProfileKind::Tabulated: {
      const long i = x - table_first_;
      if (i >= 0 && i < static_cast<long>(table_q_.size())) return table_q_[i];
      return x >= 0 ? limits_.q_plus : limits_.q_minus;
    }
  }
  return {};  // unreachable
}

WalkCoefficients WalkCoefficients::phase_free() const {
  WalkCoefficients c = *this;
  c.limits_.b_plus = std::abs(limits_.b_plus);
  c.limits_.q_plus = std::abs(limits_.q_plus);
  c.limits_.b_minus = std::abs(limits_.b_minus);
  c.limits_.q_minus = std::abs(limits_.q_minus);
  for (SiteOverride& o : c.overrides_) {
    o.b_phase = 0.0;
    o.q_phase = 0.0;
  }
  c.b_phase_amplitude_ = 0.0;
  c.q_phase_amplitude_ = 0.0;
  for (Complex& v : c.table_b_) v = std::abs(v);
  for (Complex& v : c.table_q_) v = std::abs(v);
  return c;
}

void validate_coefficients(const WalkCoefficients& c, long half_width) {
  constexpr double kTol = 1e-12;
  auto check_pair = [&](const char* what, double real_part, Complex partner,
                        long site, bool is_limit) {
    const double residual =
        std::abs(real_part * real_part + std::norm(partner) - 1.0);
    if (residual > kTol) {
      std::ostringstream msg;
      msg << "validate_coefficients: circle constraint " << what
          << " violated ";
      if (is_limit) {
        msg << "in the limits";
      } else {
        msg << "at site " << site;
      }
      msg << " (residual " << residual << ")";
      throw std::invalid_argument(msg.str());
    }
  };

  const AnisotropicLimits& l = c.limits();
  check_pair("a^2 + |b|^2 = 1", l.a_plus, l.b_plus, 0, true);
  check_pair("p^2 + |q|^2 = 1", l.p_plus, l.q_plus, 0, true);
  check_pair("a^2 + |b|^2 = 1", l.a_minus, l.b_minus, 0, true);
  check_pair("p^2 + |q|^2 = 1", l.p_minus, l.q_minus, 0, true);

  for (long x = -half_width; x <= half_width; ++x) {
    check_pair("a^2 + |b|^2 = 1", c.a(x), c.b(x), x, false);
    check_pair("p^2 + |q|^2 = 1", c.p(x), c.q(x), x, false);
  }
}

}  // namespace ssqw
