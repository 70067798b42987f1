#ifndef EMSYM_GL2_HPP
#define EMSYM_GL2_HPP

#include <string>

#include "emsym/rational.hpp"

namespace emsym {

// Integer 2x2 matrix with positive determinant.
struct GL2Matrix {
  Integer a, b, c, d;

  GL2Matrix() : a(1), b(0), c(0), d(1) {}
  GL2Matrix(Integer a_, Integer b_, Integer c_, Integer d_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}
  static GL2Matrix identity() { return GL2Matrix(); }
  static GL2Matrix from_longs(long a, long b, long c, long d) {
    return GL2Matrix(Integer(a), Integer(b), Integer(c), Integer(d));
  }

  Integer det() const { return a * d - b * c; }
  bool operator==(const GL2Matrix& o) const = default;

  GL2Matrix operator*(const GL2Matrix& o) const {
    return GL2Matrix(a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c,
                     c * o.b + d * o.d);
  }
  GL2Matrix operator-() const { return GL2Matrix(-a, -b, -c, -d); }

  // Inverse within SL2(Z); requires det == 1.
  GL2Matrix inv_sl2() const;
  GL2Matrix pow(long e) const; // e may be negative when det == 1

  std::string to_string() const;
};

// Point of P^1(Q) as a coprime pair; q > 0, or q == 0 and p == 1 (infinity).
struct CuspPoint {
  Integer p, q;
  CuspPoint() : p(1), q(0) {}
  CuspPoint(const Integer& p_, const Integer& q_);
  static CuspPoint infinity() { return CuspPoint(); }
  static CuspPoint from_longs(long p, long q) {
    return CuspPoint(Integer(p), Integer(q));
  }
  bool operator==(const CuspPoint& o) const = default;
  bool is_infinity() const { return q == 0; }
  std::string to_string() const;
};

// Moebius image (a p + b q : c p + d q), canonicalized.
CuspPoint act(const GL2Matrix& m, const CuspPoint& x);

// det == 1 and m congruent to the identity mod n.
bool in_gamma_n(const GL2Matrix& m, long n);

// Extends the coprime column (p, q) to a matrix in SL2(Z) with that first
// column.
GL2Matrix extend_to_sl2(const CuspPoint& x);

} // namespace emsym

#endif
