#include "emsym/qpolynomial.hpp"

#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace emsym {

void QPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPolynomial QPolynomial::constant(const Rational& a) {
  return QPolynomial(std::vector<Rational>{a});
}

QPolynomial QPolynomial::x() {
  return QPolynomial(std::vector<Rational>{Rational(0), Rational(1)});
}

QPolynomial QPolynomial::from_longs(const std::vector<long>& coeffs) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (long v : coeffs) c.emplace_back(v);
  return QPolynomial(std::move(c));
}

Rational QPolynomial::leading() const {
  if (c_.empty()) return Rational(0);
  return c_.back();
}

QPolynomial QPolynomial::derivative() const {
  if (c_.size() <= 1) return QPolynomial();
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = Rational(long(i)) * c_[i];
  return QPolynomial(std::move(d));
}

Rational QPolynomial::eval(const Rational& x) const {
  Rational acc(0);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

QMatrix QPolynomial::eval(const QMatrix& m) const {
  if (!m.is_square()) throw std::invalid_argument("eval: non-square matrix");
  const std::size_t n = m.rows();
  QMatrix acc(n, n);
  for (std::size_t i = c_.size(); i-- > 0;) {
    acc = acc * m;
    for (std::size_t d = 0; d < n; ++d) acc.at(d, d) += c_[i];
  }
  return acc;
}

QPolynomial QPolynomial::monic() const {
  if (is_zero()) return *this;
  Rational inv = 1 / c_.back();
  std::vector<Rational> out(c_);
  for (auto& v : out) v *= inv;
  return QPolynomial(std::move(out));
}

std::string QPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    Rational a = c_[i];
    if (first) {
      if (a < 0) { os << "-"; a = -a; }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    const bool unit = (a == 1) && i > 0;
    if (!unit) os << rational_to_string(a);
    if (i > 0) {
      if (!unit) os << " ";
      os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

QPolynomial operator+(const QPolynomial& a, const QPolynomial& b) {
  std::vector<Rational> out(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < a.coeffs().size()) out[i] += a[i];
    if (i < b.coeffs().size()) out[i] += b[i];
  }
  return QPolynomial(std::move(out));
}

QPolynomial operator-(const QPolynomial& a, const QPolynomial& b) {
  std::vector<Rational> out(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < a.coeffs().size()) out[i] += a[i];
    if (i < b.coeffs().size()) out[i] -= b[i];
  }
  return QPolynomial(std::move(out));
}

QPolynomial operator*(const QPolynomial& a, const QPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return QPolynomial();
  std::vector<Rational> out(a.coeffs().size() + b.coeffs().size() - 1);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
      if (b[j] == 0) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return QPolynomial(std::move(out));
}

QPolynomial operator*(const Rational& s, const QPolynomial& a) {
  std::vector<Rational> out(a.coeffs());
  for (auto& v : out) v *= s;
  return QPolynomial(std::move(out));
}

std::pair<QPolynomial, QPolynomial> divmod(const QPolynomial& a,
                                           const QPolynomial& b) {
  if (b.is_zero()) throw std::invalid_argument("divmod: division by zero");
  std::vector<Rational> rem(a.coeffs());
  const long db = b.degree();
  long dr = a.degree();
  if (dr < db) return {QPolynomial(), a};
  std::vector<Rational> quot(dr - db + 1);
  const Rational lb_inv = 1 / b.leading();
  while (dr >= db) {
    if (rem[dr] != 0) {
      Rational q = rem[dr] * lb_inv;
      quot[dr - db] = q;
      for (long i = 0; i <= db; ++i) rem[dr - db + i] -= q * b[i];
    }
    --dr;
  }
  return {QPolynomial(std::move(quot)), QPolynomial(std::move(rem))};
}

QPolynomial scale_variable(const QPolynomial& p, const Rational& s) {
  std::vector<Rational> out(p.coeffs());
  Rational pw(1);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] *= pw;
    pw *= s;
  }
  return QPolynomial(std::move(out));
}

namespace {

using ZPoly = std::vector<Integer>; // ascending, may carry leading zeros

void ztrim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Integer zcontent(const ZPoly& p) {
  Integer g(0);
  for (const auto& c : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

// Primitive integer image of a rational polynomial, positive leading coeff.
ZPoly to_primitive_z(const QPolynomial& p) {
  Integer den(1);
  for (const auto& c : p.coeffs())
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  ZPoly out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.push_back(Integer(c * den));
  ztrim(out);
  if (out.empty()) return out;
  Integer g = zcontent(out);
  if (out.back() < 0) g = -g;
  for (auto& c : out) c /= g;
  return out;
}

QPolynomial from_z(const ZPoly& p) {
  std::vector<Rational> out;
  out.reserve(p.size());
  for (const auto& c : p) out.emplace_back(c);
  return QPolynomial(std::move(out));
}

// Pseudo-remainder: lc(b)^(da-db+1) * a mod b, exact over Z.
ZPoly pseudo_rem(ZPoly a, const ZPoly& b) {
  ztrim(a);
  const long db = static_cast<long>(b.size()) - 1;
  const Integer& lb = b.back();
  long da = static_cast<long>(a.size()) - 1;
  while (da >= db) {
    Integer lead = a[da];
    for (auto& c : a) c *= lb;
    for (long i = 0; i <= db; ++i) a[da - db + i] -= lead * b[i];
    ztrim(a);
    da = static_cast<long>(a.size()) - 1;
  }
  return a;
}

} // namespace

QPolynomial poly_gcd(const QPolynomial& a, const QPolynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  ZPoly u = to_primitive_z(a), v = to_primitive_z(b);
  if (u.size() < v.size()) std::swap(u, v);
  while (!v.empty()) {
    ZPoly r = pseudo_rem(u, v);
    if (!r.empty()) {
      Integer g = zcontent(r);
      if (r.back() < 0) g = -g;
      for (auto& c : r) c /= g;
    }
    u = std::move(v);
    v = std::move(r);
  }
  return from_z(u).monic();
}

// ---------------------------------------------------------------------------
// Characteristic polynomial: Hessenberg charpoly modulo 62-bit primes, CRT
// lifted past a Hadamard-style coefficient bound.

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(u128(a) * b % p); }

u64 powmod_u64(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod_u64(a % p, p - 2, p); }

u64 mpz_mod_u64(const Integer& z, u64 p) {
  Integer m = z % Integer(p);
  if (m < 0) m += Integer(p);
  return m.get_ui();
}

// charpoly of an integer matrix modulo p, monic, ascending coefficients.
std::vector<u64> charpoly_mod(std::vector<std::vector<u64>> h, u64 p) {
  const std::size_t n = h.size();
  // Reduce to upper Hessenberg by similarity transformations.
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = j + 1;
    while (piv < n && h[piv][j] == 0) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      std::swap(h[piv], h[j + 1]);
      for (std::size_t r = 0; r < n; ++r) std::swap(h[r][piv], h[r][j + 1]);
    }
    const u64 inv = invmod(h[j + 1][j], p);
    for (std::size_t i = j + 2; i < n; ++i) {
      if (h[i][j] == 0) continue;
      const u64 f = mulmod(h[i][j], inv, p);
      for (std::size_t c = 0; c < n; ++c)
        h[i][c] = (h[i][c] + p - mulmod(f, h[j + 1][c], p)) % p;
      for (std::size_t r = 0; r < n; ++r)
        h[r][j + 1] = (h[r][j + 1] + mulmod(f, h[r][i], p)) % p;
    }
  }
  // Recurrence on the Hessenberg form.
  std::vector<std::vector<u64>> pk(n + 1);
  pk[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    std::vector<u64> cur(m + 1, 0);
    const u64 d = h[m - 1][m - 1];
    for (std::size_t i = 0; i < m; ++i) {
      cur[i + 1] = (cur[i + 1] + pk[m - 1][i]) % p;
      cur[i] = (cur[i] + p - mulmod(d, pk[m - 1][i], p)) % p;
    }
    u64 sub = 1;
    for (std::size_t i = 1; i < m; ++i) {
      sub = mulmod(sub, h[m - i][m - i - 1], p);
      if (sub == 0) break;
      const u64 coeff = mulmod(h[m - 1 - i][m - 1], sub, p);
      if (coeff == 0) continue;
      for (std::size_t t = 0; t < pk[m - 1 - i].size(); ++t)
        cur[t] = (cur[t] + p - mulmod(coeff, pk[m - 1 - i][t], p)) % p;
    }
    pk[m] = std::move(cur);
  }
  return pk[n];
}

} // namespace

QPolynomial charpoly(const QMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("charpoly: non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return QPolynomial::constant(Rational(1));

  Integer den(1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(),
              m.at(i, j).get_den().get_mpz_t());

  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  Integer bound(2);
  for (std::size_t i = 0; i < n; ++i) {
    Integer rownorm2(0);
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = Integer(m.at(i, j) * den);
      rownorm2 += a[i][j] * a[i][j];
    }
    Integer rn = sqrt(rownorm2) + 1;
    if (rn > 1) bound *= rn;
  }
  bound <<= n; // binomial mass

  std::vector<Integer> acc(n + 1, 0);
  Integer modulus(1);
  Integer prime_seed = (Integer(1) << 62);
  while (modulus <= bound) {
    mpz_nextprime(prime_seed.get_mpz_t(), prime_seed.get_mpz_t());
    const u64 p = prime_seed.get_ui();
    if (mpz_divisible_ui_p(den.get_mpz_t(), p)) continue;
    std::vector<std::vector<u64>> red(n, std::vector<u64>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) red[i][j] = mpz_mod_u64(a[i][j], p);
    std::vector<u64> cp = charpoly_mod(std::move(red), p);
    // CRT combine coefficient-wise.
    const Integer pz(p);
    if (modulus == 1) {
      for (std::size_t k = 0; k <= n; ++k) acc[k] = Integer(cp[k]);
    } else {
      Integer inv;
      mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), pz.get_mpz_t());
      for (std::size_t k = 0; k <= n; ++k) {
        Integer delta = (Integer(cp[k]) - acc[k] % pz) % pz;
        if (delta < 0) delta += pz;
        acc[k] += modulus * ((delta * inv) % pz);
      }
    }
    modulus *= pz;
  }
  const Integer half = modulus / 2;
  std::vector<Rational> coeffs(n + 1);
  Integer scale(1); // den^(n-k)
  for (std::size_t k = 0; k <= n; ++k) {
    Integer c = acc[n - k] % modulus;
    if (c > half) c -= modulus;
    coeffs[n - k] = make_rational(c, scale);
    scale *= den;
  }
  return QPolynomial(std::move(coeffs));
}

} // namespace emsym
