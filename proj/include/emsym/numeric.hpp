#ifndef EMSYM_NUMERIC_HPP
#define EMSYM_NUMERIC_HPP

#include <mpfr.h>

#include <string>

#include "emsym/rational.hpp"

namespace emsym {

// Extended-precision real, RAII around mpfr_t. Binary operations carry the
// larger operand precision.
class Real {
public:
  static long default_bits();
  static void set_default_bits(long bits);

  Real();
  explicit Real(long prec);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  static Real of(double x);
  static Real of(long x);
  static Real of(const Rational& q);
  static Real pi();

  long precision() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string to_string(int digits = 30) const;

  Real operator-() const;
  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }

  friend bool operator<(const Real& a, const Real& b) {
    return mpfr_cmp(a.v_, b.v_) < 0;
  }
  friend bool operator>(const Real& a, const Real& b) { return b < a; }
  friend bool operator<=(const Real& a, const Real& b) { return !(b < a); }
  friend bool operator>=(const Real& a, const Real& b) { return !(a < b); }

  friend Real abs(const Real& a);
  friend Real sqrt(const Real& a);
  friend Real exp(const Real& a);
  friend Real log(const Real& a);
  friend void sin_cos(Real& s, Real& c, const Real& angle);

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

private:
  mpfr_t v_;
};

struct Complex {
  Real re, im;
  Complex() = default;
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  static Complex of(double r, double i) { return {Real::of(r), Real::of(i)}; }

  Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
  Complex operator-(const Complex& o) const { return {re - o.re, im - o.im}; }
  Complex operator*(const Complex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Complex operator/(const Complex& o) const;
  Real norm2() const { return re * re + im * im; }
  Real abs() const { return sqrt(norm2()); }
};

// exp(i theta) * scale
Complex unit_phase(const Real& theta);

// Value with a conservatively propagated error estimate.
struct NumericValue {
  Real re, im;
  double error = 0.0;

  double re_d() const { return re.to_double(); }
  double im_d() const { return im.to_double(); }
  double abs_d() const;
};

} // namespace emsym

#endif
