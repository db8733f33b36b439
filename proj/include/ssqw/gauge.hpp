// Diagonal phase gauge for the split-step walk.
//
// The walk's two Hermitian-unitary factors carry complex off-diagonal
// coefficients q (shift side, hopping range m = 1) and b (coin side).  A
// diagonal unitary diag(e^{if}, e^{ig}) conjugates both factors into the
// phase-free normal form |q|, |b| provided f solves the difference equation
//     f(x + m) - f(x) = phi(x),        phi := theta2(. + m) - theta1,
// with g := f - theta2, where theta1/theta2 are the phase sequences of the
// two off-diagonal coefficients.  The solver seeds f = 0 on one residue
// block and extends by summed phi along each residue class, which works for
// every nonzero integer m and arbitrary bounded phase sequences.

#pragma once

#include <functional>

#include "ssqw/coefficients.hpp"

namespace ssqw {

/// Solution pair of the gauge difference equation.  f and g are defined on
/// all of Z; evaluation costs O(|x| / |shift|) additions.
struct GaugePair {
  std::function<double(long)> f;
  std::function<double(long)> g;
  long shift = 1;
};

/// Solves f(x + m) - f(x) = theta2(x + m) - theta1(x) with f = 0 on the seed
/// block {0, ..., |m|-1}, and sets g = f - theta2.  Requires m != 0.
GaugePair phase_elimination(std::function<double(long)> theta1,
                            std::function<double(long)> theta2, long m);

/// Gauge pair that clears this walk's coin phases: theta1 is the phase of q
/// and theta2 the phase of the coin's upper-right coefficient conj(b).
GaugePair walk_phase_gauge(const WalkCoefficients& c);

/// Applies the gauge: verifies on the window [-n/2 - 1, n/2 + 1] that
/// conjugation by (f, g) really lands both off-diagonal coefficient
/// sequences on the nonnegative reals (within 1e-12), then returns the
/// phase-free coefficients.  Throws std::invalid_argument if the pair does
/// not match the walk.
WalkCoefficients apply_gauge(const WalkCoefficients& c, const GaugePair& gauge,
                             long n);

}  // namespace ssqw
