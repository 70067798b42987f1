#include <doctest.h>

#include "emsym/qpolynomial.hpp"
#include "test_util.hpp"

using namespace emsym;

TEST_CASE("polynomial arithmetic basics") {
  QPolynomial x = QPolynomial::x();
  QPolynomial p = x * x - QPolynomial::constant(Rational(1));
  CHECK(p.degree() == 2);
  CHECK(p.eval(Rational(3)) == 8);
  auto [q, r] = divmod(p, x - QPolynomial::constant(Rational(1)));
  CHECK(r.is_zero());
  CHECK(q == x + QPolynomial::constant(Rational(1)));
}

TEST_CASE("poly_gcd agrees on constructed inputs") {
  QPolynomial x = QPolynomial::x();
  QPolynomial a = (x - QPolynomial::constant(Rational(1))) * (x * x + QPolynomial::constant(Rational(1)));
  QPolynomial b = (x - QPolynomial::constant(Rational(1))) * (x + QPolynomial::constant(Rational(2)));
  QPolynomial g = poly_gcd(a, b);
  CHECK(g == (x - QPolynomial::constant(Rational(1))));
}

TEST_CASE("charpoly of diag(2,3)") {
  QMatrix m(2, 2);
  m.at(0, 0) = 2;
  m.at(1, 1) = 3;
  QPolynomial cp = charpoly(m);
  CHECK(cp == QPolynomial::from_longs({6, -5, 1}));
}

TEST_CASE("charpoly of the 2x2 nilpotent block is x^2") {
  QMatrix m(2, 2);
  m.at(0, 1) = 1;
  CHECK(charpoly(m) == QPolynomial::from_longs({0, 0, 1}));
}

TEST_CASE("charpoly of the quarter rotation is x^2+1") {
  QMatrix m(2, 2);
  m.at(0, 1) = -1;
  m.at(1, 0) = 1;
  CHECK(charpoly(m) == QPolynomial::from_longs({1, 0, 1}));
}

TEST_CASE("charpoly rejects non-square input") {
  QMatrix m(2, 3);
  CHECK_THROWS_AS(charpoly(m), std::invalid_argument);
}

TEST_CASE("charpoly matches Faddeev-LeVerrier oracle on random matrices") {
  std::mt19937 rng(77);
  for (std::size_t n = 1; n <= 8; ++n) {
    QMatrix m = testutil::random_int_matrix(rng, n, -9, 9);
    CHECK(charpoly(m) == testutil::charpoly_oracle(m));
  }
}

TEST_CASE("charpoly handles rational entries") {
  std::mt19937 rng(78);
  QMatrix m = testutil::random_int_matrix(rng, 5, -6, 6);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) m.at(i, j) /= Rational(long(1 + (i + j) % 3));
  CHECK(charpoly(m) == testutil::charpoly_oracle(m));
}

TEST_CASE("Cayley-Hamilton on random matrices up to 8x8") {
  std::mt19937 rng(31337);
  for (int trial = 0; trial < 6; ++trial) {
    std::size_t n = 2 + trial;
    QMatrix m = testutil::random_int_matrix(rng, n, -5, 5);
    CHECK(charpoly(m).eval(m).is_zero());
  }
}
