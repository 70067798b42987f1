#ifndef EMSYM_QPOLYNOMIAL_HPP
#define EMSYM_QPOLYNOMIAL_HPP

#include <string>
#include <utility>
#include <vector>

#include "emsym/qmatrix.hpp"
#include "emsym/rational.hpp"

namespace emsym {

// Univariate polynomial over Q, coefficients ascending by degree.
// Leading coefficient is nonzero unless the polynomial is zero (empty).
class QPolynomial {
public:
  QPolynomial() = default;
  explicit QPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    trim();
  }
  static QPolynomial zero() { return QPolynomial(); }
  static QPolynomial constant(const Rational& a);
  static QPolynomial x();
  // c0 + c1 x + ... from long literals, for tests and small constructions.
  static QPolynomial from_longs(const std::vector<long>& coeffs);

  bool is_zero() const { return c_.empty(); }
  // Degree of the zero polynomial is -1 by convention.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& operator[](std::size_t i) const { return c_[i]; }
  Rational leading() const;

  bool operator==(const QPolynomial& o) const = default;

  QPolynomial derivative() const;
  Rational eval(const Rational& x) const;
  QMatrix eval(const QMatrix& m) const;

  QPolynomial monic() const;
  std::string to_string() const; // human-readable, e.g. "x^2 - 1/2 x + 3"

private:
  void trim();
  std::vector<Rational> c_;
};

QPolynomial operator+(const QPolynomial& a, const QPolynomial& b);
QPolynomial operator-(const QPolynomial& a, const QPolynomial& b);
QPolynomial operator*(const QPolynomial& a, const QPolynomial& b);
QPolynomial operator*(const Rational& s, const QPolynomial& a);

// Exact euclidean division; b must be nonzero.
std::pair<QPolynomial, QPolynomial> divmod(const QPolynomial& a,
                                           const QPolynomial& b);

// Monic gcd, computed via a primitive pseudo-remainder sequence over Z to
// keep intermediate coefficients in check.
QPolynomial poly_gcd(const QPolynomial& a, const QPolynomial& b);

// p(s*x): substitute a rational multiple of the variable.
QPolynomial scale_variable(const QPolynomial& p, const Rational& s);

// Exact characteristic polynomial (monic, degree = dimension).
// Computed modulo word-size primes with CRT against a Hadamard-type bound.
// Throws std::invalid_argument on non-square input.
QPolynomial charpoly(const QMatrix& m);

} // namespace emsym

#endif
