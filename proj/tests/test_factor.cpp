#include <doctest.h>

#include <random>

#include "emsym/factor.hpp"
#include "test_util.hpp"

using namespace emsym;

namespace {

QPolynomial remultiply(const std::vector<IrreducibleFactor>& fs) {
  QPolynomial p = QPolynomial::constant(Rational(1));
  for (const auto& f : fs)
    for (int i = 0; i < f.multiplicity; ++i) p = p * f.factor;
  return p;
}

} // namespace

TEST_CASE("factor_q: x^3 - x") {
  QPolynomial p = QPolynomial::from_longs({0, -1, 0, 1});
  auto fs = factor_q(p);
  REQUIRE(fs.size() == 3);
  // canonical order: degree, then lexicographic from the constant coefficient
  CHECK(fs[0].factor == QPolynomial::from_longs({-1, 1})); // x - 1
  CHECK(fs[1].factor == QPolynomial::from_longs({0, 1}));  // x
  CHECK(fs[2].factor == QPolynomial::from_longs({1, 1}));  // x + 1
  for (const auto& f : fs) CHECK(f.multiplicity == 1);
}

TEST_CASE("factor_q: x^2 + 1 is irreducible") {
  auto fs = factor_q(QPolynomial::from_longs({1, 0, 1}));
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].factor == QPolynomial::from_longs({1, 0, 1}));
  CHECK(fs[0].multiplicity == 1);
}

TEST_CASE("factor_q: (x^2+1)^2 found with multiplicity 2") {
  QPolynomial p = QPolynomial::from_longs({1, 0, 1});
  auto fs = factor_q(p * p);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].factor == QPolynomial::from_longs({1, 0, 1}));
  CHECK(fs[0].multiplicity == 2);
}

TEST_CASE("factor_q rejects the zero polynomial") {
  CHECK_THROWS_AS(factor_q(QPolynomial::zero()), std::invalid_argument);
}

TEST_CASE("factor_q: swinnerton-dyer style quartic") {
  // (x^2-2)(x^2-3) has four irrational roots but factors over Q.
  QPolynomial p = QPolynomial::from_longs({-2, 0, 1}) * QPolynomial::from_longs({-3, 0, 1});
  auto fs = factor_q(p);
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].factor == QPolynomial::from_longs({-3, 0, 1}));
  CHECK(fs[1].factor == QPolynomial::from_longs({-2, 0, 1}));
  // x^4 - 10x^2 + 1 = minimal polynomial of sqrt(2)+sqrt(3): irreducible.
  auto g = factor_q(QPolynomial::from_longs({1, 0, -10, 0, 1}));
  REQUIRE(g.size() == 1);
  CHECK(g[0].factor.degree() == 4);
}

TEST_CASE("factor_q: random products remultiply to the input") {
  std::mt19937 rng(2024);
  std::vector<QPolynomial> pool = {
      QPolynomial::from_longs({0, 1}),      QPolynomial::from_longs({-1, 1}),
      QPolynomial::from_longs({1, 1}),      QPolynomial::from_longs({2, 1}),
      QPolynomial::from_longs({1, 0, 1}),   QPolynomial::from_longs({1, 1, 1}),
      QPolynomial::from_longs({-2, 0, 1}),  QPolynomial::from_longs({1, -1, 1}),
      QPolynomial::from_longs({3, 2, 0, 1}),
  };
  std::uniform_int_distribution<int> pick(0, int(pool.size()) - 1);
  std::uniform_int_distribution<int> mult(1, 3);
  std::uniform_int_distribution<int> terms(1, 4);
  for (int trial = 0; trial < 12; ++trial) {
    QPolynomial p = QPolynomial::constant(Rational(3, 7)); // rational unit
    int k = terms(rng);
    for (int i = 0; i < k; ++i) {
      QPolynomial f = pool[pick(rng)];
      int e = mult(rng);
      for (int j = 0; j < e; ++j) p = p * f;
    }
    auto fs = factor_q(p);
    CHECK(remultiply(fs) == p.monic());
    for (const auto& f : fs) {
      CHECK(f.factor.leading() == 1);
      CHECK(factor_q(f.factor).size() == 1);
    }
  }
}

TEST_CASE("factor_q: cyclotomic-like products") {
  // x^6 - 1 = (x-1)(x+1)(x^2+x+1)(x^2-x+1)
  auto fs = factor_q(QPolynomial::from_longs({-1, 0, 0, 0, 0, 0, 1}));
  REQUIRE(fs.size() == 4);
  CHECK(remultiply(fs) == QPolynomial::from_longs({-1, 0, 0, 0, 0, 0, 1}));
}

TEST_CASE("minimal_polynomial basics") {
  QMatrix m(3, 3);
  m.at(0, 0) = 2;
  m.at(1, 1) = 2;
  m.at(2, 2) = 3;
  // diag(2,2,3): minpoly (x-2)(x-3)
  CHECK(minimal_polynomial(m) == QPolynomial::from_longs({6, -5, 1}));

  QMatrix nil(3, 3);
  nil.at(0, 1) = 1;
  nil.at(1, 2) = 1;
  CHECK(minimal_polynomial(nil) == QPolynomial::from_longs({0, 0, 0, 1}));
}

TEST_CASE("minimal_polynomial divides charpoly and annihilates") {
  std::mt19937 rng(55);
  for (int trial = 0; trial < 8; ++trial) {
    QMatrix m = testutil::random_int_matrix(rng, 5, -3, 3);
    QPolynomial mp = minimal_polynomial(m);
    CHECK(mp.eval(m).is_zero());
    auto [q, r] = divmod(charpoly(m), mp);
    CHECK(r.is_zero());
  }
}
