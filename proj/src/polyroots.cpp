#include "emsym/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "emsym/factor.hpp"

namespace emsym {

namespace {

Complex ceval(const std::vector<Complex>& coeffs, const Complex& z) {
  Complex acc = coeffs.back();
  for (std::size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * z + coeffs[i];
  return acc;
}

} // namespace

std::vector<Complex> poly_roots_squarefree(const QPolynomial& f, long prec) {
  const long d = f.degree();
  if (d <= 0) return {};
  const QPolynomial fm = f.monic();
  const QPolynomial fd = fm.derivative();
  std::vector<Complex> coeffs, dcoeffs;
  for (const auto& c : fm.coeffs()) {
    Real re(prec);
    re += Real::of(c);
    coeffs.push_back({re, Real(prec)});
  }
  for (const auto& c : fd.coeffs()) {
    Real re(prec);
    re += Real::of(c);
    dcoeffs.push_back({re, Real(prec)});
  }
  // Fujiwara bound: 2 max_i |c_{d-i}|^{1/i}
  double radius = 0;
  for (long i = 1; i <= d; ++i) {
    double a = std::fabs(fm[d - i].get_d());
    if (i == d) a /= 2;
    if (a > 0) radius = std::max(radius, std::pow(a, 1.0 / double(i)));
  }
  radius = 2.0 * radius + 0.5;
  std::vector<Complex> z(d);
  const Real two_pi = Real::of(2L) * Real::pi();
  auto place = [&](double offset, double scale) {
    for (long i = 0; i < d; ++i) {
      Real theta = two_pi * Real::of(double(i) + offset) / Real::of(double(d));
      Complex ph = unit_phase(theta);
      Real r = Real::of(radius * scale);
      z[i] = {r * ph.re, r * ph.im};
    }
  };
  place(0.41, 1.0);
  // Aberth-Ehrlich iteration with a stall restart
  const Real tol = exp(Real::of(double(-prec) * 0.55 * 0.6931471805599453));
  for (int iter = 0; iter < 5000; ++iter) {
    Real worst = Real::of(0L);
    for (long i = 0; i < d; ++i) {
      Complex pv = ceval(coeffs, z[i]);
      Complex dv = ceval(dcoeffs, z[i]);
      if (dv.norm2().to_double() == 0.0) {
        z[i].re += Real::of(1e-3 * radius);
        worst = Real::of(radius);
        continue;
      }
      Complex newton = pv / dv;
      Complex sum{Real(prec), Real(prec)};
      for (long j = 0; j < d; ++j) {
        if (j == i) continue;
        Complex diff = z[i] - z[j];
        Real n2 = diff.norm2();
        if (n2.to_double() == 0.0) {
          diff.re += Real::of(1e-6 * radius);
          n2 = diff.norm2();
        }
        sum.re += diff.re / n2;
        sum.im += -(diff.im / n2);
      }
      Complex one{Real(prec), Real(prec)};
      one.re += Real::of(1L);
      Complex denom = one - newton * sum;
      if (denom.norm2().to_double() == 0.0) denom = one;
      Complex delta = newton / denom;
      z[i] = z[i] - delta;
      Real mag = delta.abs();
      if (worst < mag) worst = mag;
    }
    if (worst < tol) return z;
    if (iter == 1500) place(0.173, 1.37); // restart off the symmetric orbit
  }
  throw std::runtime_error("poly_roots: root iteration failed to converge");
}

std::vector<RootModulus> root_moduli(const QPolynomial& f, long prec) {
  if (f.is_zero()) throw std::invalid_argument("root_moduli: zero polynomial");
  std::vector<RootModulus> out;
  for (const auto& [factor, mult] : factor_q(f)) {
    if (factor == QPolynomial::x()) {
      out.push_back({0.0, 0.0, mult});
      continue;
    }
    const QPolynomial deriv = factor.derivative();
    std::vector<Complex> dcoeffs;
    for (const auto& c : deriv.coeffs()) dcoeffs.push_back({Real::of(c), Real::of(0L)});
    std::vector<Complex> fcoeffs;
    for (const auto& c : factor.coeffs()) fcoeffs.push_back({Real::of(c), Real::of(0L)});
    for (const auto& z : poly_roots_squarefree(factor, prec)) {
      const double fv = ceval(fcoeffs, z).abs().to_double();
      const double dv = ceval(dcoeffs, z).abs().to_double();
      const double err =
          dv > 0 ? factor.degree() * fv / dv : std::ldexp(1.0, int(-prec / 2));
      out.push_back({z.abs().to_double(), std::max(err, 1e-300), mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const RootModulus& a, const RootModulus& b) {
    return a.modulus < b.modulus;
  });
  return out;
}

} // namespace emsym
