#ifndef EMSYM_PERIODS_HPP
#define EMSYM_PERIODS_HPP

#include <optional>
#include <vector>

#include "emsym/numeric.hpp"
#include "emsym/qexpansion.hpp"

namespace emsym {

// Truncated series value with a tail bound from |c(l)| <= C l (weight-2
// growth; C is taken from the supplied coefficients unless overridden).
NumericValue eval_form(const QExpansion& f, const Complex& tau,
                       double growth_constant = 0.0);

// Vertical integration path from `start` towards i*infinity: composite
// Gauss-Legendre up to an analytically bounded tail cutoff.
struct PathSpec {
  Complex start = Complex::of(0.0, 1.0);
  int segments = 4;
  int gl_order = 24;
  double tail_tolerance = 1e-14;
};

// Nested integral of 2 pi i / n - normalized series along the path; the
// empty list returns 1. Error combines an embedded quadrature estimate,
// series tails and the path cutoff.
NumericValue iterated_integral(const std::vector<QExpansion>& forms,
                               const PathSpec& path);

// The nested sum over 0 < l_1 < ... < l_m <= lmax, evaluated at a + i y.
NumericValue multiple_l_fixed_y(const std::vector<QExpansion>& forms,
                                const Rational& a, double y, long lmax = 0);

struct MlvParams {
  long lmax = 0;        // 0: shortest supplied expansion
  int y_exp_min = 4;    // y runs over 2^-k, k = y_exp_min .. y_exp_max
  int y_exp_max = 10;
};

// Richardson extrapolation of the fixed-y values to y -> 0; the spread of
// the extrapolation table is reported as the error. Throws when the
// extrapolation fails to settle.
NumericValue multiple_L(const std::vector<QExpansion>& forms, const Rational& a,
                        const MlvParams& params = {});

// Integer-relation search over (target, candidates) by exact lattice
// reduction. Returns a vector m with m . (target, candidates) numerically
// zero within the combined error, all |m_i| <= bound, or nullopt. Refuses
// (throws std::runtime_error) when the available precision cannot support a
// conclusion at the requested bound. Never asserts nonexistence.
std::optional<std::vector<Integer>> relation_detect(
    const NumericValue& target, const std::vector<NumericValue>& candidates,
    long bound);

} // namespace emsym

#endif
