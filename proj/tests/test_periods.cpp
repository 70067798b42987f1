#include <doctest.h>

#include <cmath>

#include "emsym/periods.hpp"

using namespace emsym;

namespace {

QExpansion synth(long level, std::vector<std::pair<long, Rational>> terms) {
  QExpansion f;
  f.level = level;
  for (auto& [l, c] : terms) {
    if (l > f.lmax()) f.coeffs.resize(l);
    f.coeffs[l - 1] = c;
  }
  return f;
}

QExpansion f_one() { return synth(6, {{1, Rational(1)}}); }
QExpansion f_two() {
  return synth(6, {{1, Rational(1)}, {2, make_rational(-1, 2)}, {3, make_rational(1, 3)}});
}
QExpansion f_three() { return synth(6, {{2, Rational(1)}, {5, Rational(2)}}); }

QExpansion eta4() {
  static QExpansion f = load_qexpansion(std::string(TEST_DATA_DIR) + "/eta4_level6.qexp", 6);
  return f;
}

// termwise antiderivative oracle: single integral = -sum c(l)/l q0^l
Complex termwise_single(const QExpansion& f, const Complex& tau0) {
  Complex acc = Complex::of(0.0, 0.0);
  const Real two_pi = Real::of(2L) * Real::pi();
  for (long l = 1; l <= f.lmax(); ++l) {
    if (f.c(l) == 0) continue;
    Real scale = two_pi * Real::of(l) / Real::of(f.level);
    Complex phase = unit_phase(scale * tau0.re);
    Real decay = exp(-(scale * tau0.im));
    Real coeff = Real::of(f.c(l)) / Real::of(l);
    acc.re -= coeff * phase.re * decay;
    acc.im -= coeff * phase.im * decay;
  }
  return acc;
}

double dist(const NumericValue& v, const Complex& w) {
  return std::hypot((v.re - w.re).to_double(), (v.im - w.im).to_double());
}

} // namespace

TEST_CASE("eval_form basics") {
  QExpansion zero;
  zero.level = 6;
  NumericValue z = eval_form(zero, Complex::of(0.0, 1.0));
  CHECK(z.abs_d() == 0.0);

  NumericValue v = eval_form(f_one(), Complex::of(0.0, 1.0));
  CHECK(v.re_d() == doctest::Approx(std::exp(-2 * M_PI / 6)).epsilon(1e-12));
  CHECK(std::fabs(v.im_d()) < 1e-30);

  CHECK_THROWS_AS(eval_form(f_one(), Complex::of(0.0, -1.0)),
                  std::invalid_argument);

  // linearity within error bounds
  QExpansion sum = synth(6, {});
  sum.coeffs.resize(5);
  for (long l = 1; l <= 5; ++l) sum.coeffs[l - 1] = f_two().c(l) + f_three().c(l);
  Complex tau = Complex::of(0.3, 0.8);
  NumericValue a = eval_form(f_two(), tau), b = eval_form(f_three(), tau);
  NumericValue s = eval_form(sum, tau);
  CHECK(std::hypot((a.re + b.re - s.re).to_double(),
                   (a.im + b.im - s.im).to_double()) <=
        a.error + b.error + s.error + 1e-25);
}

TEST_CASE("empty iterated integral is 1") {
  PathSpec path;
  NumericValue v = iterated_integral({}, path);
  CHECK(v.re_d() == 1.0);
  CHECK(v.im_d() == 0.0);
}

TEST_CASE("single integrals match the termwise antiderivative oracle") {
  for (const QExpansion& f : {f_one(), f_two(), f_three(), eta4()}) {
    PathSpec path;
    path.start = Complex::of(0.0, 1.0);
    NumericValue got = iterated_integral({f}, path);
    CHECK(dist(got, termwise_single(f, path.start)) < 1e-8);
    CHECK(dist(got, termwise_single(f, path.start)) <= got.error + 1e-12);
  }
}

TEST_CASE("shuffle identity within combined error, at or below 1e-6") {
  std::vector<QExpansion> pool = {f_one(), f_two(), f_three()};
  for (auto tau0 : {Complex::of(0.0, 1.0), Complex::of(0.5, 1.0)}) {
    PathSpec path;
    path.start = tau0;
    for (std::size_t i = 0; i < pool.size(); ++i)
      for (std::size_t j = i; j < pool.size(); ++j) {
        NumericValue ab = iterated_integral({pool[i], pool[j]}, path);
        NumericValue ba = iterated_integral({pool[j], pool[i]}, path);
        NumericValue a = iterated_integral({pool[i]}, path);
        NumericValue b = iterated_integral({pool[j]}, path);
        Complex lhs{ab.re + ba.re, ab.im + ba.im};
        Complex prod = Complex{a.re, a.im} * Complex{b.re, b.im};
        const double resid = std::hypot((lhs.re - prod.re).to_double(),
                                        (lhs.im - prod.im).to_double());
        const double combined =
            ab.error + ba.error + a.error * (1 + b.abs_d()) + b.error * (1 + a.abs_d());
        CHECK(resid <= combined + 1e-20);
        CHECK(combined <= 1e-6);
      }
  }
}

TEST_CASE("shuffle identity for the genuine level-6 form") {
  PathSpec path;
  path.start = Complex::of(0.0, 1.0);
  for (const QExpansion& other : {f_two(), eta4()}) {
    NumericValue ab = iterated_integral({eta4(), other}, path);
    NumericValue ba = iterated_integral({other, eta4()}, path);
    NumericValue a = iterated_integral({eta4()}, path);
    NumericValue b = iterated_integral({other}, path);
    Complex lhs{ab.re + ba.re, ab.im + ba.im};
    Complex prod = Complex{a.re, a.im} * Complex{b.re, b.im};
    const double resid = std::hypot((lhs.re - prod.re).to_double(),
                                    (lhs.im - prod.im).to_double());
    const double combined =
        ab.error + ba.error + a.error * (1 + b.abs_d()) + b.error * (1 + a.abs_d());
    CHECK(resid <= combined + 1e-20);
    CHECK(combined <= 1e-6);
  }
}

TEST_CASE("path refinement stays within the reported error") {
  PathSpec coarse;
  coarse.start = Complex::of(0.0, 1.0);
  PathSpec fine = coarse;
  fine.gl_order = coarse.gl_order * 2;
  fine.segments = coarse.segments * 2;
  for (const QExpansion& f : {f_two(), eta4()}) {
    NumericValue c = iterated_integral({f, f_one()}, coarse);
    NumericValue v = iterated_integral({f, f_one()}, fine);
    CHECK(std::hypot((c.re - v.re).to_double(), (c.im - v.im).to_double()) <=
          c.error + v.error + 1e-25);
  }
}

TEST_CASE("multiple_L with m=1 matches the direct L-sum at matched truncation") {
  const double y = 1.0 / 64;
  for (const QExpansion& f : {f_two(), eta4()}) {
    NumericValue got = multiple_l_fixed_y({f}, Rational(0), y);
    // direct sum: c(l)/l e^{2 pi i l (a + i y)/6} with a = 0
    Real acc(Real::default_bits());
    const Real two_pi = Real::of(2L) * Real::pi();
    for (long l = 1; l <= f.lmax(); ++l) {
      if (f.c(l) == 0) continue;
      Real damp = exp(-(two_pi * Real::of(l) * Real::of(y) / Real::of(6L)));
      acc += Real::of(f.c(l)) / Real::of(l) * damp;
    }
    CHECK(std::fabs((got.re - acc).to_double()) < 1e-10);
    CHECK(std::fabs(got.im_d()) < 1e-10);
  }
}

TEST_CASE("a zero factor annihilates the nested sum") {
  QExpansion zero;
  zero.level = 6;
  zero.coeffs.resize(30);
  NumericValue v = multiple_l_fixed_y({f_two(), zero}, Rational(0), 0.05);
  CHECK(v.abs_d() == 0.0);
}

TEST_CASE("m=2 matches the brute-force double sum at fixed truncation and y") {
  const double y = 1.0 / 32;
  const Rational a(1, 1);
  QExpansion f1 = eta4(), f2 = eta4();
  const long L = 80;
  NumericValue got = multiple_l_fixed_y({f1, f2}, a, y, L);
  // oracle: sum over 0 < l1 < l2 <= L of c1(l2-l1) c2(l1) / (l2 l1) e^{2 pi i l2 (a+iy)/6}
  Complex acc = Complex::of(0.0, 0.0);
  const Real two_pi = Real::of(2L) * Real::pi();
  for (long l2 = 2; l2 <= L; ++l2) {
    Real inner(Real::default_bits());
    for (long l1 = 1; l1 < l2; ++l1) {
      const Rational c = f1.c(l2 - l1) * f2.c(l1);
      if (c != 0) inner += Real::of(c) / Real::of(l1);
    }
    Real theta = two_pi * Real::of(l2) * Real::of(a) / Real::of(6L);
    Complex phase = unit_phase(theta);
    Real damp = exp(-(two_pi * Real::of(l2) * Real::of(y) / Real::of(6L)));
    Real w = inner / Real::of(l2) * damp;
    acc.re += w * phase.re;
    acc.im += w * phase.im;
  }
  CHECK(dist(got, acc) < 1e-10);
}

TEST_CASE("increasing the truncation moves the fixed-y value less than the bound") {
  const QExpansion f = eta4();
  const double y = 1.0 / 128;
  NumericValue shorter = multiple_l_fixed_y({f}, Rational(0), y, 250);
  NumericValue longer = multiple_l_fixed_y({f}, Rational(0), y, f.lmax());
  const double change = std::hypot((shorter.re - longer.re).to_double(),
                                   (shorter.im - longer.im).to_double());
  CHECK(change <= shorter.error);
}

TEST_CASE("multiple_L extrapolates with a finite spread") {
  MlvParams params;
  NumericValue v = multiple_L({eta4()}, Rational(0), params);
  CHECK(std::isfinite(v.error));
  // against the plain (undamped) partial L-sum, which converges decently here
  Real acc(Real::default_bits());
  const QExpansion f = eta4();
  for (long l = 1; l <= f.lmax(); ++l)
    if (f.c(l) != 0) acc += Real::of(f.c(l)) / Real::of(l);
  CHECK(std::fabs((v.re - acc).to_double()) < 0.05);
}

TEST_CASE("relation_detect: exact multiple") {
  Real::set_default_bits(256);
  NumericValue cand{Real::pi(), Real::of(0L), 1e-40};
  NumericValue target{Real::of(2L) * Real::pi(), Real::of(0L), 1e-40};
  auto rel = relation_detect(target, {cand}, 10);
  Real::set_default_bits(128);
  REQUIRE(rel.has_value());
  REQUIRE(rel->size() == 2);
  CHECK((*rel)[0] == 1);
  CHECK((*rel)[1] == -2);
}

TEST_CASE("relation_detect: no small relation between pi and 1") {
  Real::set_default_bits(256);
  NumericValue target{Real::pi(), Real::of(0L), 1e-12};
  NumericValue one{Real::of(1L), Real::of(0L), 1e-12};
  auto rel = relation_detect(target, {one}, 100);
  Real::set_default_bits(128);
  CHECK_FALSE(rel.has_value());
}

TEST_CASE("relation_detect: planted relation recovered exactly") {
  Real::set_default_bits(256);
  Real v1 = sqrt(Real::of(2L)), v2 = Real::pi() / Real::of(4L);
  // target = 3 v1 - 7 v2
  NumericValue t{Real::of(3L) * v1 - Real::of(7L) * v2, Real::of(0L), 1e-40};
  NumericValue c1{v1, Real::of(0L), 1e-40};
  NumericValue c2{v2, Real::of(0L), 1e-40};
  auto rel = relation_detect(t, {c1, c2}, 20);
  Real::set_default_bits(128);
  REQUIRE(rel.has_value());
  REQUIRE(rel->size() == 3);
  CHECK((*rel)[0] == 1);
  CHECK((*rel)[1] == -3);
  CHECK((*rel)[2] == 7);
}

TEST_CASE("relation_detect refuses when precision cannot support the bound") {
  NumericValue t{Real::pi(), Real::of(0L), 1e-3};
  NumericValue c{Real::of(1L), Real::of(0L), 1e-3};
  CHECK_THROWS_AS(relation_detect(t, {c}, 1000000), std::runtime_error);
}

TEST_CASE("q-expansion parser round trip and validation") {
  QExpansion f = parse_qexpansion("# comment\n1 1\n3 -4/6\n", 6);
  CHECK(f.c(1) == 1);
  CHECK(f.c(2) == 0);
  CHECK(f.c(3) == make_rational(-2, 3));
  CHECK_THROWS_AS(parse_qexpansion("x y\n", 6), std::invalid_argument);
  CHECK_THROWS_AS(parse_qexpansion("1 1/0\n", 6), std::invalid_argument);
}
