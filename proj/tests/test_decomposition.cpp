#include <doctest.h>

#include <random>

#include "emsym/decomposition.hpp"
#include "test_util.hpp"

using namespace emsym;

TEST_CASE("primary decomposition of a scalar family") {
  QMatrix two = Rational(2) * QMatrix::identity(2);
  auto comps = primary_decomposition({two});
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].factor == QPolynomial::from_longs({-2, 1}));
  CHECK(comps[0].nilpotency == 1);
  CHECK(comps[0].basis.cols() == 2);
}

TEST_CASE("primary decomposition of a nilpotent block") {
  QMatrix nil(2, 2);
  nil.at(0, 1) = 1;
  auto comps = primary_decomposition({nil});
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].factor == QPolynomial::from_longs({0, 1}));
  CHECK(comps[0].nilpotency == 2);
}

TEST_CASE("family split by the first matrix") {
  QMatrix a(2, 2), b(2, 2);
  a.at(0, 0) = 1;
  a.at(1, 1) = 2;
  b.at(0, 0) = 3;
  b.at(1, 1) = 3;
  auto comps = primary_decomposition({a, b});
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].factor == QPolynomial::from_longs({-2, 1}));
  CHECK(comps[1].factor == QPolynomial::from_longs({-1, 1}));
  CHECK(comps[0].basis.cols() + comps[1].basis.cols() == 2);
}

TEST_CASE("non-commuting input is rejected with the offending pair") {
  QMatrix a(2, 2), b(2, 2);
  a.at(0, 1) = 1;
  b.at(1, 0) = 1;
  try {
    primary_decomposition({a, b});
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    CHECK(msg.find("0") != std::string::npos);
    CHECK(msg.find("1") != std::string::npos);
    CHECK(msg.find("commute") != std::string::npos);
  }
}

TEST_CASE("components direct-sum and stay invariant") {
  std::mt19937 rng(808);
  // Build a commuting family from polynomials in one random matrix.
  for (int trial = 0; trial < 5; ++trial) {
    QMatrix m = testutil::random_int_matrix(rng, 6, -2, 2);
    QMatrix m2 = m * m + m;
    auto comps = primary_decomposition({m, m2});
    std::size_t total = 0;
    QMatrix all(6, 0);
    for (const auto& c : comps) {
      total += c.basis.cols();
      all = hconcat(all, c.basis);
      // invariance: applying each family member stays inside the component
      CHECK_NOTHROW(solve_in_column_space(c.basis, m * c.basis));
      CHECK_NOTHROW(solve_in_column_space(c.basis, m2 * c.basis));
      // designated factor is nilpotent on the component after `nilpotency` steps
      QMatrix r = restrict_to_subspace(m, c.basis);
      QMatrix f = c.factor.eval(r);
      QMatrix pw = QMatrix::identity(c.basis.cols());
      for (int e = 0; e < c.nilpotency; ++e) pw = pw * f;
      CHECK(pw.is_zero());
      if (c.nilpotency > 1) {
        QMatrix pw1 = QMatrix::identity(c.basis.cols());
        for (int e = 0; e + 1 < c.nilpotency; ++e) pw1 = pw1 * f;
        CHECK(!pw1.is_zero());
      }
    }
    CHECK(total == 6);
    CHECK(rank(all) == 6);
  }
}
