#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "qpg/qnum.hpp"

using qpg::Complex;
using qpg::QContext;

namespace {
constexpr double kSqrt2 = 1.4142135623730951;  // [2]_q at k = 4
}

TEST_CASE("context validates its parameters", "[qnum]") {
  REQUIRE_NOTHROW(QContext(2));
  REQUIRE_NOTHROW(QContext(5, 3, -1.0, 1e-12));
  REQUIRE_THROWS_AS(QContext(1), std::invalid_argument);
  REQUIRE_THROWS_AS(QContext(0), std::invalid_argument);
  REQUIRE_THROWS_AS(QContext(3, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(QContext(3, 1, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(QContext(3, 1, 1.0, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(QContext(3, 1, 1.0, -1e-10), std::invalid_argument);
}

TEST_CASE("q is a primitive 2k-th root of unity", "[qnum]") {
  for (int k = 2; k <= 9; ++k) {
    QContext ctx(k);
    REQUIRE(std::abs(std::abs(ctx.q()) - 1.0) < 1e-15);
    REQUIRE(std::abs(ctx.q_power(2 * k) - Complex{1.0, 0.0}) < 1e-13);
    REQUIRE(std::abs(ctx.q_power(k) - Complex{-1.0, 0.0}) < 1e-13);
    // powers multiply consistently, including negative exponents
    REQUIRE(std::abs(ctx.q_power(3) * ctx.q_power(-3) - Complex{1.0, 0.0}) <
            1e-15);
  }
}

TEST_CASE("q-integer spot values", "[qnum]") {
  REQUIRE(qpg::q_int(QContext(3), 0) == 0.0);
  REQUIRE(qpg::q_int(QContext(3), 1) == 1.0);
  REQUIRE(std::abs(qpg::q_int(QContext(3), 2) - 1.0) < 1e-12);
  REQUIRE(std::abs(qpg::q_int(QContext(4), 2) - kSqrt2) < 1e-12);
  REQUIRE(qpg::q_int(QContext(5), 5) == 0.0);   // exact zero at n = k
  REQUIRE(qpg::q_int(QContext(4), 8) == 0.0);   // and at any multiple
  REQUIRE_THROWS_AS(qpg::q_int(QContext(3), -1), std::domain_error);
}

TEST_CASE("q-integer symmetry [n] = [k-n]", "[qnum]") {
  for (int k = 2; k <= 8; ++k) {
    QContext ctx(k);
    for (int n = 0; n <= k; ++n) {
      REQUIRE(std::abs(qpg::q_int(ctx, n) - qpg::q_int(ctx, k - n < 0 ? 0 : k - n)) <
              1e-12);
    }
  }
}

TEST_CASE("q-integer recurrence [n+1] = q [n] + q^{-n}", "[qnum]") {
  for (int k = 2; k <= 8; ++k) {
    QContext ctx(k);
    for (int n = 0; n < k; ++n) {
      Complex rhs = ctx.q() * qpg::q_int(ctx, n) + ctx.q_power(-n);
      REQUIRE(std::abs(Complex{qpg::q_int(ctx, n + 1), 0.0} - rhs) < 1e-12);
    }
  }
}

TEST_CASE("q-integers approach ordinary integers for large k", "[qnum]") {
  QContext ctx(1000000);
  for (int n = 0; n <= 5; ++n) {
    REQUIRE(std::abs(qpg::q_int(ctx, n) - static_cast<double>(n)) < 1e-4);
  }
}

TEST_CASE("q-factorial spot values and domain", "[qnum]") {
  REQUIRE(qpg::q_factorial(QContext(3), 0) == 1.0);
  REQUIRE(std::abs(qpg::q_factorial(QContext(3), 2) - 1.0) < 1e-12);
  REQUIRE(std::abs(qpg::q_factorial(QContext(4), 2) - kSqrt2) < 1e-12);
  REQUIRE(std::abs(qpg::q_factorial(QContext(4), 3) - kSqrt2) < 1e-12);
  REQUIRE_THROWS_AS(qpg::q_factorial(QContext(3), 3), std::domain_error);
  REQUIRE_THROWS_AS(qpg::q_factorial(QContext(3), -1), std::domain_error);
}

TEST_CASE("q-factorial reflection [n]! [k-1-n]! = [k-1]!", "[qnum]") {
  for (int k = 2; k <= 8; ++k) {
    QContext ctx(k);
    const double top = qpg::q_factorial(ctx, k - 1);
    for (int n = 0; n < k; ++n) {
      REQUIRE(std::abs(qpg::q_factorial(ctx, n) * qpg::q_factorial(ctx, k - 1 - n) -
                       top) < 1e-12);
    }
  }
}

TEST_CASE("deformed exponential truncates at order k-1", "[qnum]") {
  REQUIRE(qpg::q_exp_scalar(QContext(4), Complex{0.0, 0.0}) ==
          Complex{1.0, 0.0});
  // k = 2: e_q^x = 1 + x
  REQUIRE(std::abs(qpg::q_exp_scalar(QContext(2), Complex{1.0, 0.0}) -
                   Complex{2.0, 0.0}) < 1e-12);
  // k = 3: [1]! = [2]! = 1, so e_q^1 = 1 + 1 + 1 = 3
  REQUIRE(std::abs(qpg::q_exp_scalar(QContext(3), Complex{1.0, 0.0}) -
                   Complex{3.0, 0.0}) < 1e-12);
  // k = 4: [2]! = [3]! = sqrt(2), so e_q^1 = 2 + 2/sqrt(2) = 2 + sqrt(2)
  REQUIRE(std::abs(qpg::q_exp_scalar(QContext(4), Complex{1.0, 0.0}) -
                   Complex{2.0 + kSqrt2, 0.0}) < 1e-12);
}
