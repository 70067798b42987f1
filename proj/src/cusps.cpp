#include "emsym/cusps.hpp"

#include <map>
#include <stdexcept>

namespace emsym {

namespace {

long mod_pos(const Integer& z, long n) {
  Integer r = z % Integer(n);
  if (r < 0) r += n;
  return r.get_si();
}

// Orbit label: the coordinate pair mod n up to simultaneous sign, encoded
// as the lexicographically smaller of the two.
std::pair<long, long> cusp_label(const CuspPoint& x, long n) {
  long a = mod_pos(x.p, n), b = mod_pos(x.q, n);
  long na = (n - a) % n, nb = (n - b) % n;
  if (std::pair{na, nb} < std::pair{a, b}) return {na, nb};
  return {a, b};
}

long gcd_long(long a, long b) {
  while (b) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

} // namespace

std::vector<CuspClass> cusp_classes(long n) {
  if (n < 3) throw std::invalid_argument("cusp_classes: level must be >= 3");
  // All labels first: pairs mod n with gcd(p, q, n) = 1, up to sign.
  std::map<std::pair<long, long>, long> pending; // label -> assigned id or -1
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b) {
      if (gcd_long(gcd_long(a, b), n) != 1) continue;
      long na = (n - a) % n, nb = (n - b) % n;
      if (std::pair{na, nb} < std::pair{a, b}) continue;
      pending[{a, b}] = -1;
    }
  std::vector<CuspClass> classes;
  std::size_t assigned = 0;
  // Scan candidate points in the canonical order (q, p mod n, p); each
  // label owns a representative with q <= n, so the scan terminates.
  for (long q = 0; q <= n && assigned < pending.size(); ++q) {
    if (q == 0) {
      auto it = pending.find(cusp_label(CuspPoint::infinity(), n));
      if (it != pending.end() && it->second < 0) {
        it->second = static_cast<long>(classes.size());
        classes.push_back({n, it->second, CuspPoint::infinity()});
        ++assigned;
      }
      continue;
    }
    for (long pm = 0; pm < n && assigned < pending.size(); ++pm) {
      for (long p = pm; p <= pm + n * q; p += n) {
        if (gcd_long(p, q) != 1) continue;
        CuspPoint pt = CuspPoint::from_longs(p, q);
        auto it = pending.find(cusp_label(pt, n));
        if (it != pending.end() && it->second < 0) {
          it->second = static_cast<long>(classes.size());
          classes.push_back({n, it->second, pt});
          ++assigned;
        }
        break; // later p in this progression carry the same label
      }
    }
  }
  if (assigned != pending.size())
    throw std::logic_error("cusp_classes: representative scan incomplete");
  return classes;
}

std::pair<CuspClass, GL2Matrix> cusp_reduce(const CuspPoint& x, long n,
                                            const std::vector<CuspClass>& classes) {
  const auto label = cusp_label(x, n);
  const CuspClass* found = nullptr;
  for (const auto& c : classes)
    if (cusp_label(c.representative, n) == label) {
      found = &c;
      break;
    }
  if (!found) throw std::logic_error("cusp_reduce: label not in class table");

  const CuspPoint& rep = found->representative;
  const GL2Matrix A = extend_to_sl2(rep);
  const GL2Matrix B = extend_to_sl2(x);
  // Determine the sign eps with (p, q) == eps (p0, q0) mod n.
  const Integer nn(n);
  long eps = 0;
  if ((x.p - rep.p) % nn == 0 && (x.q - rep.q) % nn == 0) eps = 1;
  else if ((x.p + rep.p) % nn == 0 && (x.q + rep.q) % nn == 0) eps = -1;
  else throw std::logic_error("cusp_reduce: sign resolution failed");
  // B^{-1} A = [[eps, u], [0, eps]] mod n; the witness is eps B T^m A^{-1}
  // with m = eps u, taken in the symmetric range.
  const GL2Matrix U = B.inv_sl2() * A;
  Integer u = U.b % nn;
  Integer m = (Integer(eps) * u) % nn;
  if (2 * m > nn) m -= nn;
  if (2 * m < -nn) m += nn;
  GL2Matrix T_m(Integer(1), m, Integer(0), Integer(1));
  GL2Matrix w = B * T_m * A.inv_sl2();
  if (eps < 0) w = -w;
  if (!in_gamma_n(w, n) || !(act(w, rep) == x))
    throw std::logic_error("cusp_reduce: witness construction failed");
  return {*found, w};
}

std::pair<CuspClass, GL2Matrix> cusp_reduce(const CuspPoint& x, long n) {
  return cusp_reduce(x, n, cusp_classes(n));
}

} // namespace emsym
