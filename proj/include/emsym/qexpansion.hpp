#ifndef EMSYM_QEXPANSION_HPP
#define EMSYM_QEXPANSION_HPP

#include <string>
#include <vector>

#include "emsym/rational.hpp"

namespace emsym {

// q-series of a weight-2 cusp form on the 1/n grid: sum of c(l) e^{2 pi i l tau / n},
// exact rational coefficients, truncated at lmax. No constant term.
struct QExpansion {
  long level = 1;
  std::vector<Rational> coeffs; // coeffs[l-1] = c(l)

  long lmax() const { return static_cast<long>(coeffs.size()); }
  Rational c(long l) const {
    return (l >= 1 && l <= lmax()) ? coeffs[l - 1] : Rational(0);
  }
  bool is_zero() const;
};

// Parses the plain text format: one coefficient per line, "l numerator/denominator"
// (or "l integer"); blank lines and lines starting with '#' are skipped.
QExpansion parse_qexpansion(const std::string& text, long level);
QExpansion load_qexpansion(const std::string& path, long level);

} // namespace emsym

#endif
