#include "emsym/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace emsym {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using PolyP = std::vector<u64>;  // mod-p polynomial, ascending
using ZPoly = std::vector<Integer>;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(u128(a) * b % p); }

u64 powmod_u64(u64 a, u64 e, u64 p) {
  u64 r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod_u64(a, p - 2, p); }

void ptrim(PolyP& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

long pdeg(const PolyP& f) { return static_cast<long>(f.size()) - 1; }

PolyP pmul(const PolyP& a, const PolyP& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  PolyP out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = (out[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  ptrim(out);
  return out;
}

// Remainder of a modulo monic-or-not b.
PolyP pmod(PolyP a, const PolyP& b, u64 p) {
  ptrim(a);
  const long db = pdeg(b);
  const u64 inv = invmod(b.back(), p);
  while (pdeg(a) >= db) {
    const u64 f = mulmod(a.back(), inv, p);
    const std::size_t off = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[off + i] = (a[off + i] + p - mulmod(f, b[i], p)) % p;
    ptrim(a);
  }
  return a;
}

std::pair<PolyP, PolyP> pdivmod(PolyP a, const PolyP& b, u64 p) {
  ptrim(a);
  const long db = pdeg(b);
  if (pdeg(a) < db) return {{}, a};
  PolyP q(a.size() - b.size() + 1, 0);
  const u64 inv = invmod(b.back(), p);
  while (pdeg(a) >= db) {
    const u64 f = mulmod(a.back(), inv, p);
    q[a.size() - b.size()] = f;
    const std::size_t off = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[off + i] = (a[off + i] + p - mulmod(f, b[i], p)) % p;
    ptrim(a);
  }
  return {q, a};
}

PolyP pmonic(PolyP f, u64 p) {
  ptrim(f);
  if (f.empty()) return f;
  const u64 inv = invmod(f.back(), p);
  for (auto& c : f) c = mulmod(c, inv, p);
  return f;
}

PolyP pgcd(PolyP a, PolyP b, u64 p) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    PolyP r = pmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return pmonic(a, p);
}

PolyP pderiv(const PolyP& f, u64 p) {
  if (f.size() <= 1) return {};
  PolyP d(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = mulmod(f[i], i % p, p);
  ptrim(d);
  return d;
}

// x^e mod f
PolyP xpow_mod(u64 e, const PolyP& f, u64 p) {
  PolyP base = pmod({0, 1}, f, p);
  PolyP r = {1};
  while (e) {
    if (e & 1) r = pmod(pmul(r, base, p), f, p);
    base = pmod(pmul(base, base, p), f, p);
    e >>= 1;
  }
  return r;
}

// Extended euclid: returns (s, t) with s a + t b = 1; a, b coprime mod p.
std::pair<PolyP, PolyP> pxgcd(const PolyP& a, const PolyP& b, u64 p) {
  PolyP r0 = a, r1 = b;
  PolyP s0 = {1}, s1 = {};
  PolyP t0 = {}, t1 = {1};
  ptrim(r0);
  ptrim(r1);
  while (!r1.empty()) {
    auto [q, r] = pdivmod(r0, r1, p);
    auto step = [&](PolyP& x0, PolyP& x1) {
      PolyP nx = x0;
      PolyP qx = pmul(q, x1, p);
      nx.resize(std::max(nx.size(), qx.size()), 0);
      for (std::size_t i = 0; i < qx.size(); ++i) nx[i] = (nx[i] + p - qx[i]) % p;
      ptrim(nx);
      x0 = std::move(x1);
      x1 = std::move(nx);
    };
    step(s0, s1);
    step(t0, t1);
    r0 = std::move(r1);
    r1 = std::move(r);
  }
  if (r0.size() != 1) throw std::logic_error("pxgcd: inputs not coprime");
  const u64 inv = invmod(r0[0], p);
  for (auto& c : s0) c = mulmod(c, inv, p);
  for (auto& c : t0) c = mulmod(c, inv, p);
  return {s0, t0};
}

bool is_small_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 mod_ui(const Integer& z, u64 p) {
  Integer r;
  mpz_mod_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return r.get_ui();
}

// --- Berlekamp factorization of a square-free monic polynomial mod p -------

std::vector<PolyP> berlekamp(const PolyP& f, u64 p) {
  const long n = pdeg(f);
  if (n == 1) return {f};
  const PolyP xp = xpow_mod(p, f, p);
  // Rows of Q: coefficients of x^(p*i) mod f.
  std::vector<PolyP> rows(n);
  rows[0] = {1};
  for (long i = 1; i < n; ++i) rows[i] = pmod(pmul(rows[i - 1], xp, p), f, p);
  // Kernel of (Q - I)^T.
  std::vector<std::vector<u64>> m(n, std::vector<u64>(n, 0));
  for (long i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m[j][i] = rows[i][j];
    m[i][i] = (m[i][i] + p - 1) % p;
  }
  std::vector<long> pivot_of_col(n, -1);
  long r = 0;
  for (long c = 0; c < n && r < n; ++c) {
    long piv = r;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) continue;
    std::swap(m[piv], m[r]);
    const u64 inv = invmod(m[r][c], p);
    for (long j = 0; j < n; ++j) m[r][j] = mulmod(m[r][j], inv, p);
    for (long i = 0; i < n; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const u64 fac = m[i][c];
      for (long j = 0; j < n; ++j)
        m[i][j] = (m[i][j] + p - mulmod(fac, m[r][j], p)) % p;
    }
    pivot_of_col[c] = r;
    ++r;
  }
  std::vector<PolyP> basis;
  for (long c = 0; c < n; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    PolyP v(n, 0);
    v[c] = 1;
    for (long j = 0; j < n; ++j)
      if (pivot_of_col[j] >= 0) v[j] = (p - m[pivot_of_col[j]][c]) % p;
    ptrim(v);
    basis.push_back(std::move(v));
  }
  const std::size_t k = basis.size();
  std::vector<PolyP> factors = {f};
  if (k == 1) return factors;
  for (const auto& v : basis) {
    if (pdeg(v) < 1) continue; // constant vector splits nothing
    for (u64 c = 0; c < p && factors.size() < k; ++c) {
      PolyP vc = v;
      vc[0] = (vc[0] + p - c) % p;
      ptrim(vc);
      for (std::size_t fi = 0; fi < factors.size() && factors.size() < k; ++fi) {
        if (pdeg(factors[fi]) <= 1) continue;
        PolyP g = pgcd(factors[fi], vc, p);
        if (pdeg(g) > 0 && pdeg(g) < pdeg(factors[fi])) {
          PolyP rest = pdivmod(factors[fi], g, p).first;
          factors[fi] = pmonic(rest, p);
          factors.push_back(std::move(g));
        }
      }
    }
    if (factors.size() == k) break;
  }
  if (factors.size() != k) throw std::logic_error("berlekamp: incomplete split");
  return factors;
}

// --- Integer polynomials and arithmetic mod m ------------------------------

void ztrim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

long zdeg(const ZPoly& f) { return static_cast<long>(f.size()) - 1; }

Integer zcontent(const ZPoly& f) {
  Integer g(0);
  for (const auto& c : f) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

ZPoly zprimitive(ZPoly f) {
  ztrim(f);
  if (f.empty()) return f;
  Integer g = zcontent(f);
  if (f.back() < 0) g = -g;
  for (auto& c : f) c /= g;
  return f;
}

Integer zmod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

ZPoly zreduce(const ZPoly& f, const Integer& m) {
  ZPoly out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = zmod(f[i], m);
  ztrim(out);
  return out;
}

ZPoly zmul_mod(const ZPoly& a, const ZPoly& b, const Integer& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return zreduce(out, m);
}

ZPoly zadd_mod(const ZPoly& a, const ZPoly& b, const Integer& m) {
  ZPoly out(std::max(a.size(), b.size()), Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return zreduce(out, m);
}

ZPoly zsub_mod(const ZPoly& a, const ZPoly& b, const Integer& m) {
  ZPoly out(std::max(a.size(), b.size()), Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return zreduce(out, m);
}

// Division by a monic polynomial, coefficients mod m.
std::pair<ZPoly, ZPoly> zdivmod_monic(ZPoly a, const ZPoly& b, const Integer& m) {
  ztrim(a);
  const long db = zdeg(b);
  if (zdeg(a) < db) return {{}, a};
  ZPoly q(a.size() - b.size() + 1, Integer(0));
  while (zdeg(a) >= db) {
    Integer f = a.back();
    q[a.size() - b.size()] = f;
    const std::size_t off = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[off + i] = zmod(a[off + i] - f * b[i], m);
    ztrim(a);
  }
  return {q, a};
}

ZPoly from_p(const PolyP& f) {
  ZPoly out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = Integer(f[i]);
  return out;
}

struct HenselQuad {
  ZPoly g, h, s, t;
};

// One quadratic Hensel step: factorization and Bezout data mod m lift to
// mod m^2. All of f, g, h monic.
HenselQuad hensel_step(const ZPoly& f, const HenselQuad& in, const Integer& m) {
  const Integer m2 = m * m;
  ZPoly e = zsub_mod(zreduce(f, m2), zmul_mod(in.g, in.h, m2), m2);
  auto [q, r] = zdivmod_monic(zmul_mod(in.s, e, m2), in.h, m2);
  ZPoly g2 = zadd_mod(zadd_mod(in.g, zmul_mod(in.t, e, m2), m2),
                      zmul_mod(q, in.g, m2), m2);
  ZPoly h2 = zadd_mod(in.h, r, m2);
  ZPoly b = zsub_mod(zadd_mod(zmul_mod(in.s, g2, m2), zmul_mod(in.t, h2, m2), m2),
                     ZPoly{Integer(1)}, m2);
  auto [c, d] = zdivmod_monic(zmul_mod(in.s, b, m2), h2, m2);
  ZPoly s2 = zsub_mod(in.s, d, m2);
  ZPoly t2 = zsub_mod(zsub_mod(in.t, zmul_mod(in.t, b, m2), m2),
                      zmul_mod(c, g2, m2), m2);
  return {g2, h2, s2, t2};
}

// Lifts the mod-p factor list of the monic fm to factors mod target = p^A.
void lift_tree(const ZPoly& fm, const std::vector<PolyP>& facs, std::size_t lo,
               std::size_t hi, u64 p, const Integer& target,
               std::vector<ZPoly>& out) {
  if (hi - lo == 1) {
    out.push_back(zreduce(fm, target));
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  PolyP g0 = {1}, h0 = {1};
  for (std::size_t i = lo; i < mid; ++i) g0 = pmul(g0, facs[i], p);
  for (std::size_t i = mid; i < hi; ++i) h0 = pmul(h0, facs[i], p);
  auto [s0, t0] = pxgcd(g0, h0, p);
  HenselQuad q{from_p(g0), from_p(h0), from_p(s0), from_p(t0)};
  Integer m(p);
  while (m < target) {
    q = hensel_step(fm, q, m);
    m = m * m;
  }
  lift_tree(zreduce(q.g, target), facs, lo, mid, p, target, out);
  lift_tree(zreduce(q.h, target), facs, mid, hi, p, target, out);
}

ZPoly symmetric_lift(const ZPoly& f, const Integer& m) {
  const Integer half = m / 2;
  ZPoly out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    out[i] = (f[i] > half) ? Integer(f[i] - m) : f[i];
  ztrim(out);
  return out;
}

QPolynomial from_zq(const ZPoly& f) {
  std::vector<Rational> out;
  out.reserve(f.size());
  for (const auto& c : f) out.emplace_back(c);
  return QPolynomial(std::move(out));
}

ZPoly to_primitive_z(const QPolynomial& p) {
  Integer den(1);
  for (const auto& c : p.coeffs())
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  ZPoly out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.push_back(Integer(c * den));
  return zprimitive(out);
}

// Exact trial division over Z; on success replaces f by the cofactor.
bool try_divide(ZPoly& f, const ZPoly& cand) {
  QPolynomial q = from_zq(f), c = from_zq(cand);
  auto [quot, rem] = divmod(q, c);
  if (!rem.is_zero()) return false;
  f = to_primitive_z(quot);
  return true;
}

// Zassenhaus on a primitive square-free integer polynomial, deg >= 1.
std::vector<ZPoly> zassenhaus(ZPoly f) {
  std::vector<ZPoly> result;
  if (zdeg(f) == 1) {
    result.push_back(f);
    return result;
  }
  // Prime selection: odd, good reduction, square-free image.
  u64 p = 0;
  for (u64 cand = 3;; cand += 2) {
    if (!is_small_prime(cand)) continue;
    if (mpz_divisible_ui_p(f.back().get_mpz_t(), cand)) continue;
    PolyP fp(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) fp[i] = mod_ui(f[i], cand);
    ptrim(fp);
    if (pdeg(fp) != zdeg(f)) continue;
    if (pdeg(pgcd(fp, pderiv(fp, cand), cand)) > 0) continue;
    p = cand;
    break;
  }
  PolyP fp(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) fp[i] = mod_ui(f[i], p);
  fp = pmonic(fp, p);
  std::vector<PolyP> bf = berlekamp(fp, p);
  std::sort(bf.begin(), bf.end(), [](const PolyP& a, const PolyP& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  });
  if (bf.size() == 1) {
    result.push_back(f);
    return result;
  }
  // Landau-Mignotte style bound on factor coefficients, times lc for the
  // non-monic correction.
  Integer norm2(0);
  for (const auto& c : f) norm2 += c * c;
  Integer bound = (sqrt(norm2) + 1) * abs(f.back());
  bound <<= (zdeg(f) + 1);
  Integer target(p);
  while (target <= 2 * bound) target *= p;

  Integer lc_inv;
  mpz_invert(lc_inv.get_mpz_t(), f.back().get_mpz_t(), target.get_mpz_t());
  ZPoly fm(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) fm[i] = zmod(f[i] * lc_inv, target);
  std::vector<ZPoly> lifted;
  lift_tree(fm, bf, 0, bf.size(), p, target, lifted);

  std::vector<bool> used(lifted.size(), false);
  ZPoly rem = f;
  std::size_t remaining = lifted.size();
  for (std::size_t size = 1; 2 * size <= remaining;) {
    // Lexicographic subsets of the unused indices, of the given size.
    std::vector<std::size_t> avail;
    for (std::size_t i = 0; i < lifted.size(); ++i)
      if (!used[i]) avail.push_back(i);
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    bool found = false;
    while (true) {
      ZPoly cand = {zmod(rem.back(), target)};
      for (std::size_t i : idx) cand = zmul_mod(cand, lifted[avail[i]], target);
      cand = zprimitive(symmetric_lift(cand, target));
      if (zdeg(cand) >= 1 && try_divide(rem, cand)) {
        result.push_back(cand);
        for (std::size_t i : idx) used[avail[i]] = true;
        remaining -= size;
        found = true;
        break;
      }
      // next combination
      long pos = static_cast<long>(size) - 1;
      while (pos >= 0 && idx[pos] == avail.size() - size + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (std::size_t i = pos + 1; i < size; ++i) idx[i] = idx[i - 1] + 1;
    }
    if (!found) ++size;
  }
  if (zdeg(rem) >= 1) result.push_back(rem);
  return result;
}

// Yun's square-free decomposition of a monic rational polynomial.
std::vector<std::pair<QPolynomial, int>> squarefree_parts(const QPolynomial& f) {
  std::vector<std::pair<QPolynomial, int>> parts;
  QPolynomial g = poly_gcd(f, f.derivative());
  if (g.degree() == 0) {
    parts.emplace_back(f, 1);
    return parts;
  }
  QPolynomial w = divmod(f, g).first;
  QPolynomial y = divmod(f.derivative(), g).first;
  QPolynomial z = y - w.derivative();
  int i = 1;
  while (w.degree() > 0) {
    QPolynomial gi = poly_gcd(w, z);
    if (gi.degree() > 0) parts.emplace_back(gi.monic(), i);
    w = divmod(w, gi).first;
    y = divmod(z, gi).first;
    z = y - w.derivative();
    ++i;
  }
  return parts;
}

} // namespace

std::vector<IrreducibleFactor> factor_q(const QPolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("factor_q: zero polynomial");
  std::vector<IrreducibleFactor> out;
  if (p.degree() == 0) return out;

  std::vector<Rational> work = p.coeffs();
  // Pull out the power of x first.
  int xval = 0;
  while (work[xval] == 0) ++xval;
  if (xval > 0) {
    out.push_back({QPolynomial::x(), xval});
    work.erase(work.begin(), work.begin() + xval);
  }
  QPolynomial f = QPolynomial(std::move(work)).monic();
  if (f.degree() >= 1) {
    for (const auto& [part, mult] : squarefree_parts(f)) {
      ZPoly z = to_primitive_z(part);
      for (const auto& irr : zassenhaus(z))
        out.push_back({from_zq(irr).monic(), mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const IrreducibleFactor& a,
                                       const IrreducibleFactor& b) {
    if (a.factor.degree() != b.factor.degree())
      return a.factor.degree() < b.factor.degree();
    const auto& ca = a.factor.coeffs();
    const auto& cb = b.factor.coeffs();
    for (std::size_t i = 0; i < ca.size(); ++i)
      if (ca[i] != cb[i]) return ca[i] < cb[i];
    return false;
  });
  return out;
}

QPolynomial minimal_polynomial(const QMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("minimal_polynomial: non-square");
  const std::size_t n = m.rows();
  if (n == 0) return QPolynomial::constant(Rational(1));

  // Local minimal polynomial of the basis vector e_i. Each tracked vector w
  // carries the polynomial q with w = q(m) e_i; the first zero reduction
  // hands back the annihilator of least degree.
  auto local = [&](std::size_t start) {
    std::vector<std::vector<Rational>> echelon;
    std::vector<std::vector<Rational>> polys;
    std::vector<long> lead_col;
    std::vector<Rational> v(n);
    v[start] = 1;
    std::vector<Rational> pv = {Rational(1)};
    while (true) {
      std::vector<Rational> red = v;
      std::vector<Rational> pol = pv;
      for (std::size_t r = 0; r < echelon.size(); ++r) {
        const Rational f = red[lead_col[r]];
        if (f == 0) continue;
        for (std::size_t j = 0; j < n; ++j) red[j] -= f * echelon[r][j];
        if (pol.size() < polys[r].size()) pol.resize(polys[r].size());
        for (std::size_t j = 0; j < polys[r].size(); ++j)
          pol[j] -= f * polys[r][j];
      }
      long lead = -1;
      for (std::size_t j = 0; j < n; ++j)
        if (red[j] != 0) { lead = static_cast<long>(j); break; }
      if (lead < 0) return QPolynomial(std::move(pol)).monic();
      const Rational inv = 1 / red[lead];
      for (auto& x : red) x *= inv;
      for (auto& x : pol) x *= inv;
      echelon.push_back(std::move(red));
      polys.push_back(std::move(pol));
      lead_col.push_back(lead);
      // advance from the stored reduced vector: v = m w, poly = x q
      const auto& w = echelon.back();
      std::vector<Rational> next(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (m.at(i, j) != 0 && w[j] != 0) next[i] += m.at(i, j) * w[j];
      v = std::move(next);
      pv.assign(polys.back().size() + 1, Rational(0));
      for (std::size_t j = 0; j < polys.back().size(); ++j)
        pv[j + 1] = polys.back()[j];
    }
  };

  QPolynomial mp = QPolynomial::constant(Rational(1));
  QMatrix z = mp.eval(m);
  for (std::size_t i = 0; i < n; ++i) {
    bool killed = true;
    for (std::size_t r = 0; r < n; ++r)
      if (z.at(r, i) != 0) { killed = false; break; }
    if (killed) continue;
    QPolynomial li = local(i);
    QPolynomial g = poly_gcd(mp, li);
    mp = (divmod(mp, g).first * li).monic();
    if (mp.degree() == static_cast<long>(n)) break;
    z = mp.eval(m);
  }
  return mp;
}

} // namespace emsym
