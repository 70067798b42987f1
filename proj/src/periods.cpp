#include "emsym/periods.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace emsym {

namespace {

double growth_bound(const QExpansion& f, double override_c) {
  if (override_c > 0) return override_c;
  double c = 0;
  for (long l = 1; l <= f.lmax(); ++l)
    c = std::max(c, std::fabs(f.c(l).get_d()) / double(l));
  return c > 0 ? c : 1.0;
}

// sum_{l >= m} l r^l = r^m (m - (m-1) r) / (1-r)^2
double linear_tail(double r, long m) {
  if (r >= 1.0) return HUGE_VAL;
  return std::pow(r, double(m)) * (double(m) - double(m - 1) * r) /
         ((1 - r) * (1 - r));
}

// e^{2 pi i l tau / n} as phase * decay
Complex q_power(const Complex& tau, long l, long n) {
  const Real two_pi = Real::of(2L) * Real::pi();
  const Real scale = two_pi * Real::of(l) / Real::of(n);
  Complex phase = unit_phase(scale * tau.re);
  Real decay = exp(-(scale * tau.im));
  return {phase.re * decay, phase.im * decay};
}

// Gauss-Legendre nodes/weights on [-1, 1], cached per order.
struct GlRule {
  std::vector<Real> nodes, weights;
};

const GlRule& gl_rule(int order) {
  static std::map<int, GlRule> cache;
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  GlRule rule;
  const long prec = Real::default_bits() + 32;
  for (int i = 0; i < order; ++i) {
    // Newton from the Chebyshev initial guess
    Real x = Real::of(std::cos(M_PI * (i + 0.75) / (order + 0.5)));
    Real dp(prec);
    for (int iter = 0; iter < 200; ++iter) {
      // Legendre P_order(x) and derivative by recurrence
      Real p0 = Real::of(1L), p1 = x;
      for (int k = 2; k <= order; ++k) {
        Real pk = (Real::of(2 * k - 1L) * x * p1 - Real::of(k - 1L) * p0) /
                  Real::of(long(k));
        p0 = p1;
        p1 = pk;
      }
      dp = Real::of(long(order)) * (x * p1 - p0) / (x * x - Real::of(1L));
      Real step = p1 / dp;
      x -= step;
      if (abs(step) < exp(Real::of(-0.693147180559945 * double(prec)))) break;
    }
    rule.nodes.push_back(x);
    Real w = Real::of(2L) / ((Real::of(1L) - x * x) * dp * dp);
    rule.weights.push_back(w);
  }
  return cache.emplace(order, std::move(rule)).first->second;
}

struct SeriesCtx {
  const std::vector<QExpansion>* forms;
  long n; // common level
  double start_im;
  double cutoff; // integrate up to Im tau = cutoff
  int segments;
  int gl_order;
};

// The supplied coefficient list is treated as the exact integrand; skipped
// indices advance by powers of w computed per gap.
Complex eval_series(const SeriesCtx& ctx, const QExpansion& f,
                    const Complex& tau) {
  Complex w = q_power(tau, 1, ctx.n);
  Complex acc{Real(Real::default_bits()), Real(Real::default_bits())};
  Complex wl = Complex::of(1.0, 0.0);
  long cur = 0;
  auto cpow = [](Complex base, long e) {
    Complex r = Complex::of(1.0, 0.0);
    while (e) {
      if (e & 1) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  };
  for (long l = 1; l <= f.lmax(); ++l) {
    const Rational& c = f.coeffs[l - 1];
    if (c == 0) continue;
    wl = wl * cpow(w, l - cur);
    cur = l;
    Real cv = Real::of(c);
    acc.re += cv * wl.re;
    acc.im += cv * wl.im;
  }
  return acc;
}

// I(idx; tau) = int_tau^{cutoff} (2 pi i / n) f_idx(t) I(idx+1; t) dt
// Segments widen geometrically towards the cutoff: the integrand decays like
// a q-power, so the mass sits at the bottom of the path.
Complex iter_value(const SeriesCtx& ctx, std::size_t idx, const Complex& tau) {
  if (idx == ctx.forms->size()) return Complex::of(1.0, 0.0);
  const GlRule& rule = gl_rule(ctx.gl_order);
  const Real lo = tau.im;
  const Real hi = Real::of(ctx.cutoff);
  Complex total = Complex::of(0.0, 0.0);
  const double denom = std::ldexp(1.0, ctx.segments) - 1;
  auto boundary = [&](int j) {
    const double frac = (std::ldexp(1.0, j) - 1) / denom;
    return lo + (hi - lo) * Real::of(frac);
  };
  for (int s = 0; s < ctx.segments; ++s) {
    Real a = boundary(s);
    Real b = boundary(s + 1);
    Real half = (b - a) / Real::of(2L);
    Real mid = (a + b) / Real::of(2L);
    Complex seg = Complex::of(0.0, 0.0);
    for (int i = 0; i < ctx.gl_order; ++i) {
      Real y = mid + half * rule.nodes[i];
      Complex t{tau.re, y};
      Complex val = eval_series(ctx, (*ctx.forms)[idx], t);
      Complex inner = iter_value(ctx, idx + 1, t);
      Complex prod = val * inner;
      seg.re += rule.weights[i] * prod.re;
      seg.im += rule.weights[i] * prod.im;
    }
    total.re += half * seg.re;
    total.im += half * seg.im;
  }
  // d tau = i dy along the vertical path; normalization 2 pi i / n gives the
  // factor (2 pi i / n) * i = -2 pi / n
  Real factor = -(Real::of(2L) * Real::pi() / Real::of(ctx.n));
  return {factor * total.re, factor * total.im};
}

} // namespace

NumericValue eval_form(const QExpansion& f, const Complex& tau,
                       double growth_constant) {
  if (!(tau.im > Real::of(0L)))
    throw std::invalid_argument("eval_form: point is not in the upper half plane");
  SeriesCtx ctx{nullptr, f.level, 0, 0, 0, 0};
  Complex v = eval_series(ctx, f, tau);
  const double r = std::exp(-2 * M_PI * tau.im.to_double() / double(f.level));
  const double tail =
      growth_bound(f, growth_constant) * linear_tail(r, f.lmax() + 1);
  return {v.re, v.im, tail};
}

NumericValue iterated_integral(const std::vector<QExpansion>& forms,
                               const PathSpec& path) {
  if (forms.empty()) return {Real::of(1L), Real::of(0L), 0.0};
  const long n = forms[0].level;
  for (const auto& f : forms)
    if (f.level != n)
      throw std::invalid_argument("iterated_integral: mixed levels");
  if (!(path.start.im > Real::of(0L)))
    throw std::invalid_argument("iterated_integral: path must start in H");

  const double y0 = path.start.im.to_double();
  // cutoff so that the single-form tail times crude suffix bounds is small
  double cutoff = y0 + double(n);
  double tail_bound = HUGE_VAL;
  for (int iter = 0; iter < 60; ++iter) {
    const double q = std::exp(-2 * M_PI * cutoff / double(n));
    double head = (double(n) / (2 * M_PI)) * growth_bound(forms[0], 0) * q /
                  std::max(1e-300, (1 - q) * (1 - q));
    double suffix = 1.0;
    const double q0 = std::exp(-2 * M_PI * y0 / double(n));
    for (std::size_t i = 1; i < forms.size(); ++i)
      suffix *= (double(n) / (2 * M_PI)) * growth_bound(forms[i], 0) * q0 /
                std::max(1e-300, (1 - q0) * (1 - q0)) + 1.0;
    tail_bound = head * suffix;
    if (tail_bound < path.tail_tolerance) break;
    cutoff += double(n);
  }

  SeriesCtx ctx{&forms, n, y0, cutoff, path.segments, path.gl_order};
  Complex full = iter_value(ctx, 0, path.start);
  // embedded error estimate: repeat with half the nodes
  SeriesCtx ctx_half{&forms, n, y0, cutoff, path.segments,
                     std::max(4, path.gl_order / 2)};
  Complex half = iter_value(ctx_half, 0, path.start);
  const double quad_err = std::hypot((full.re - half.re).to_double(),
                                     (full.im - half.im).to_double());
  const double rounding =
      std::ldexp(std::max(1.0, full.re.to_double()), int(-Real::default_bits() / 2));
  const double err = 2 * quad_err + tail_bound + rounding;
  return {full.re, full.im, err};
}

NumericValue multiple_l_fixed_y(const std::vector<QExpansion>& forms,
                                const Rational& a, double y, long lmax) {
  if (forms.empty())
    throw std::invalid_argument("multiple_L: no forms supplied");
  const long n = forms[0].level;
  const std::size_t m = forms.size();
  for (const auto& f : forms) {
    if (f.level != n) throw std::invalid_argument("multiple_L: mixed levels");
    if (lmax == 0 || f.lmax() < lmax) lmax = f.lmax();
  }
  // B_1(l) = c_m(l)/l; B_{j+1}(l) = (1/l) sum_{l' < l} B_j(l') c_{m-j}(l - l')
  std::vector<Real> cur(lmax + 1, Real(Real::default_bits()));
  for (long l = 1; l <= lmax; ++l)
    cur[l] = Real::of(forms[m - 1].c(l)) / Real::of(l);
  for (std::size_t j = 1; j < m; ++j) {
    const QExpansion& f = forms[m - 1 - j];
    std::vector<Real> next(lmax + 1, Real(Real::default_bits()));
    for (long l = 2; l <= lmax; ++l) {
      Real acc(Real::default_bits());
      for (long lp = long(j); lp < l; ++lp) {
        const Rational c = f.c(l - lp);
        if (c != 0) acc += cur[lp] * Real::of(c);
      }
      next[l] = acc / Real::of(l);
    }
    cur = std::move(next);
  }
  const Real two_pi = Real::of(2L) * Real::pi();
  const Real ar = Real::of(a);
  auto partial = [&](long upto) {
    Complex total = Complex::of(0.0, 0.0);
    for (long l = long(m); l <= upto; ++l) {
      Real theta = two_pi * Real::of(l) * ar / Real::of(n);
      Complex phase = unit_phase(theta);
      Real damp = exp(-(two_pi * Real::of(l) * Real::of(y) / Real::of(n)));
      total.re += cur[l] * phase.re * damp;
      total.im += cur[l] * phase.im * damp;
    }
    return total;
  };
  Complex total = partial(lmax);
  // Truncation sensitivity: oscillation makes a coefficient-norm tail bound
  // useless near y = 0, so measure the change over the last stretch of the
  // series and scale it up.
  double tail = 0;
  if (lmax >= 10) {
    Complex shorter = partial((4 * lmax) / 5);
    tail = 4 * std::hypot((total.re - shorter.re).to_double(),
                          (total.im - shorter.im).to_double());
  }
  tail += std::ldexp(std::max(1.0, total.re.to_double()),
                     int(-Real::default_bits() / 2));
  return {total.re, total.im, tail};
}

NumericValue multiple_L(const std::vector<QExpansion>& forms, const Rational& a,
                        const MlvParams& params) {
  const int kmin = params.y_exp_min, kmax = params.y_exp_max;
  if (kmin >= kmax) throw std::invalid_argument("multiple_L: bad y range");
  std::vector<Complex> table;
  double data_err = 0;
  for (int k = kmin; k <= kmax; ++k) {
    NumericValue v =
        multiple_l_fixed_y(forms, a, std::ldexp(1.0, -k), params.lmax);
    table.push_back({v.re, v.im});
    data_err = std::max(data_err, v.error);
  }
  // Neville extrapolation for y -> 0 on the geometric sequence y_k = 2^-k
  const std::size_t rows = table.size();
  std::vector<std::vector<Complex>> t(rows);
  for (std::size_t i = 0; i < rows; ++i) t[i].push_back(table[i]);
  for (std::size_t j = 1; j < rows; ++j) {
    for (std::size_t i = j; i < rows; ++i) {
      const Real f = Real::of(std::ldexp(1.0, int(j)));
      const Complex& hi = t[i][j - 1];
      const Complex& lo = t[i - 1][j - 1];
      Complex v{(f * hi.re - lo.re) / (f - Real::of(1L)),
                (f * hi.im - lo.im) / (f - Real::of(1L))};
      t[i].push_back(v);
    }
  }
  auto dist = [](const Complex& x, const Complex& y) {
    return std::hypot((x.re - y.re).to_double(), (x.im - y.im).to_double());
  };
  const Complex& best = t[rows - 1][rows - 1];
  const double spread = dist(best, t[rows - 2][rows - 2]) +
                        dist(best, t[rows - 1][rows - 2]);
  // diagnostic: the last corrections should shrink
  const double prev = dist(t[rows - 2][rows - 2], t[rows - 3][rows - 3]);
  if (spread > 4 * prev + 1e-6 && prev > 0)
    throw std::runtime_error("multiple_L: extrapolation failed to settle");
  return {best.re, best.im, spread + data_err};
}

// --- integer relation detection ---------------------------------------------

namespace {

// Exact LLL on integer row vectors, delta = 99/100.
void lll_reduce(std::vector<std::vector<Integer>>& b) {
  const std::size_t n = b.size();
  const std::size_t dim = b[0].size();
  std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n));
  std::vector<Rational> norm(n);
  std::vector<std::vector<Rational>> gso(n, std::vector<Rational>(dim));
  auto recompute = [&]() {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t d = 0; d < dim; ++d) gso[i][d] = Rational(b[i][d]);
      for (std::size_t j = 0; j < i; ++j) {
        Rational num(0);
        for (std::size_t d = 0; d < dim; ++d) num += Rational(b[i][d]) * gso[j][d];
        mu[i][j] = (norm[j] == 0) ? Rational(0) : num / norm[j];
        for (std::size_t d = 0; d < dim; ++d) gso[i][d] -= mu[i][j] * gso[j][d];
      }
      norm[i] = 0;
      for (std::size_t d = 0; d < dim; ++d) norm[i] += gso[i][d] * gso[i][d];
    }
  };
  recompute();
  const Rational delta(99, 100);
  std::size_t k = 1;
  int guard = 0;
  while (k < n && ++guard < 100000) {
    for (std::size_t j = k; j-- > 0;) {
      // nearest integer to the current projection coefficient
      Rational num(0);
      for (std::size_t d = 0; d < dim; ++d) num += Rational(b[k][d]) * gso[j][d];
      Rational r = (norm[j] == 0) ? Rational(0) : num / norm[j];
      Rational shifted = r + Rational(1, 2);
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), shifted.get_num().get_mpz_t(),
                 shifted.get_den().get_mpz_t());
      if (q != 0)
        for (std::size_t d = 0; d < dim; ++d) b[k][d] -= q * b[j][d];
    }
    recompute();
    if (norm[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * norm[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      recompute();
      k = (k > 1) ? k - 1 : 1;
    }
  }
}

} // namespace

std::optional<std::vector<Integer>> relation_detect(
    const NumericValue& target, const std::vector<NumericValue>& candidates,
    long bound) {
  if (candidates.empty())
    throw std::invalid_argument("relation_detect: no candidates");
  if (bound < 1) throw std::invalid_argument("relation_detect: bad bound");
  std::vector<NumericValue> vals = {target};
  vals.insert(vals.end(), candidates.begin(), candidates.end());
  const std::size_t k = vals.size();

  double scale = 0, max_err = 0;
  for (const auto& v : vals) {
    scale = std::max(scale, v.abs_d());
    max_err = std::max(max_err, v.error);
  }
  if (scale == 0) scale = 1;
  const double prec_floor = std::ldexp(scale, int(-Real::default_bits() + 8));
  max_err = std::max(max_err, prec_floor);
  const double digits_avail = std::log10(scale / max_err);
  const double digits_needed = double(k) * std::log10(double(bound)) + 8;
  if (digits_avail < digits_needed)
    throw std::runtime_error(
        "relation_detect: insufficient precision for the requested bound");

  const double kappa_digits = std::min(digits_avail - 2.0, 60.0);
  Integer kappa = 1;
  for (int i = 0; i < int(kappa_digits); ++i) kappa *= 10;

  auto scaled = [&](const Real& x) {
    Real s = x * Real::of(Rational(kappa));
    // nearest integer
    Integer out;
    mpfr_t tmp;
    mpfr_init2(tmp, Real::default_bits() + 64);
    mpfr_set(tmp, s.raw(), MPFR_RNDN);
    mpfr_round(tmp, tmp);
    mpfr_get_z(out.get_mpz_t(), tmp, MPFR_RNDN);
    mpfr_clear(tmp);
    return out;
  };

  std::vector<std::vector<Integer>> basis(k, std::vector<Integer>(k + 2));
  for (std::size_t i = 0; i < k; ++i) {
    basis[i][i] = 1;
    basis[i][k] = scaled(vals[i].re);
    basis[i][k + 1] = scaled(vals[i].im);
  }
  lll_reduce(basis);

  const double kappa_d = std::pow(10.0, double(int(kappa_digits)));
  for (const auto& row : basis) {
    std::vector<Integer> m(row.begin(), row.begin() + k);
    bool nonzero = false, small = true;
    for (const auto& x : m) {
      if (x != 0) nonzero = true;
      if (abs(x) > bound) small = false;
    }
    if (!nonzero || !small) continue;
    // residual and combined error
    Real re(Real::default_bits() + 64), im(Real::default_bits() + 64);
    double slack = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (m[i] == 0) continue;
      Real c = Real::of(Rational(m[i]));
      re += c * vals[i].re;
      im += c * vals[i].im;
      const double mi = std::fabs(m[i].get_d());
      slack += mi * (vals[i].error + prec_floor) + mi / kappa_d;
    }
    const double residual = std::hypot(re.to_double(), im.to_double());
    if (residual <= slack + 1e-300) {
      // canonical sign: first nonzero coefficient positive
      for (const auto& x : m) {
        if (x == 0) continue;
        if (x < 0)
          for (auto& y : m) y = -y;
        break;
      }
      return m;
    }
  }
  return std::nullopt;
}

} // namespace emsym
