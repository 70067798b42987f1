#include "emsym/numeric.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

namespace emsym {

namespace {
std::atomic<long> g_default_bits{128};
}

long Real::default_bits() { return g_default_bits.load(); }
void Real::set_default_bits(long bits) {
  if (bits < 24 || bits > 1 << 20)
    throw std::invalid_argument("Real: precision out of range");
  g_default_bits.store(bits);
}

Real::Real() { mpfr_init2(v_, default_bits()); mpfr_set_zero(v_, 1); }
Real::Real(long prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
Real::Real(const Real& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}
Real::Real(Real&& o) noexcept {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}
Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}
Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}
Real::~Real() { mpfr_clear(v_); }

Real Real::of(double x) {
  Real r;
  mpfr_set_d(r.v_, x, MPFR_RNDN);
  return r;
}
Real Real::of(long x) {
  Real r;
  mpfr_set_si(r.v_, x, MPFR_RNDN);
  return r;
}
Real Real::of(const Rational& q) {
  Real r;
  mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
  return r;
}
Real Real::pi() {
  Real r;
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

std::string Real::to_string(int digits) const {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Rg", digits, v_);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

Real Real::operator-() const {
  Real r(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

Real& Real::operator+=(const Real& o) {
  if (mpfr_get_prec(v_) < mpfr_get_prec(o.v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  if (mpfr_get_prec(v_) < mpfr_get_prec(o.v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  if (mpfr_get_prec(v_) < mpfr_get_prec(o.v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  if (mpfr_get_prec(v_) < mpfr_get_prec(o.v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real abs(const Real& a) {
  Real r(a.precision());
  mpfr_abs(r.v_, a.v_, MPFR_RNDN);
  return r;
}
Real sqrt(const Real& a) {
  Real r(a.precision());
  mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
  return r;
}
Real exp(const Real& a) {
  Real r(a.precision());
  mpfr_exp(r.v_, a.v_, MPFR_RNDN);
  return r;
}
Real log(const Real& a) {
  Real r(a.precision());
  mpfr_log(r.v_, a.v_, MPFR_RNDN);
  return r;
}
void sin_cos(Real& s, Real& c, const Real& angle) {
  mpfr_sin_cos(s.raw(), c.raw(), angle.raw(), MPFR_RNDN);
}

Complex Complex::operator/(const Complex& o) const {
  Real d = o.norm2();
  return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
}

Complex unit_phase(const Real& theta) {
  Real s, c;
  sin_cos(s, c, theta);
  return {c, s};
}

double NumericValue::abs_d() const {
  const double r = re.to_double(), i = im.to_double();
  return std::hypot(r, i);
}

} // namespace emsym
