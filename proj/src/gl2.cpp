#include "emsym/gl2.hpp"

#include <sstream>
#include <stdexcept>

namespace emsym {

GL2Matrix GL2Matrix::inv_sl2() const {
  if (det() != 1) throw std::invalid_argument("inv_sl2: determinant is not 1");
  return GL2Matrix(d, -b, -c, a);
}

GL2Matrix GL2Matrix::pow(long e) const {
  GL2Matrix base = *this;
  if (e < 0) {
    base = inv_sl2();
    e = -e;
  }
  GL2Matrix r;
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

std::string GL2Matrix::to_string() const {
  std::ostringstream os;
  os << "[[" << a << ", " << b << "], [" << c << ", " << d << "]]";
  return os.str();
}

CuspPoint::CuspPoint(const Integer& p_, const Integer& q_) : p(p_), q(q_) {
  if (p == 0 && q == 0) throw std::invalid_argument("CuspPoint: (0,0)");
  Integer g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  if (q < 0) g = -g;
  p /= g;
  q /= g;
  if (q == 0 && p < 0) p = -p;
}

std::string CuspPoint::to_string() const {
  if (is_infinity()) return "inf";
  if (q == 1) return p.get_str();
  return p.get_str() + "/" + q.get_str();
}

CuspPoint act(const GL2Matrix& m, const CuspPoint& x) {
  return CuspPoint(m.a * x.p + m.b * x.q, m.c * x.p + m.d * x.q);
}

bool in_gamma_n(const GL2Matrix& m, long n) {
  if (m.det() != 1) return false;
  const Integer nn(n);
  return (m.a - 1) % nn == 0 && m.b % nn == 0 && m.c % nn == 0 &&
         (m.d - 1) % nn == 0;
}

GL2Matrix extend_to_sl2(const CuspPoint& x) {
  Integer g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.p.get_mpz_t(),
             x.q.get_mpz_t());
  // s p + t q = 1, so [[p, -t], [q, s]] has determinant 1.
  return GL2Matrix(x.p, -t, x.q, s);
}

} // namespace emsym
