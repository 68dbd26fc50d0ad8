#include "doctest.h"

#include "kacdem/bigint.hpp"
#include "kacdem/linalg.hpp"
#include "kacdem/rational.hpp"

#include <random>

using namespace kacdem;

TEST_CASE("integer arithmetic agrees with int64 on small operands") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<long long> dist(-1000000, 1000000);
  for (int iter = 0; iter < 2000; ++iter) {
    long long a = dist(rng), b = dist(rng);
    Integer A(a), B(b);
    CHECK((A + B).to_int64() == a + b);
    CHECK((A - B).to_int64() == a - b);
    CHECK((A * B).to_int64() == a * b);
    if (b != 0) {
      CHECK((A / B).to_int64() == a / b);
      CHECK((A % B).to_int64() == a % b);
    }
    CHECK(cmp(A, B) == (a < b ? -1 : a > b ? 1 : 0));
  }
}

TEST_CASE("integer string round trip and big products") {
  Integer x = Integer::from_string("123456789012345678901234567890");
  CHECK(x.to_string() == "123456789012345678901234567890");
  CHECK((x * Integer(-1)).to_string() == "-123456789012345678901234567890");
  Integer y(1);
  for (int i = 1; i <= 30; ++i) y *= Integer(i);
  CHECK(y.to_string() == "265252859812191058636308480000000");
  CHECK(gcd(Integer(462), Integer(1071)).to_int64() == 21);
  CHECK(lcm(Integer(4), Integer(6)).to_int64() == 12);
}

TEST_CASE("rational normalization and arithmetic") {
  Rational a(6, -4);
  CHECK(a.to_string() == "-3/2");
  Rational b = Rational::from_string("5/10");
  CHECK(b.to_string() == "1/2");
  CHECK((a + b).to_string() == "-1");
  CHECK((a * b).to_string() == "-3/4");
  CHECK((a / b).to_string() == "-3");
  CHECK(Rational(0).to_string() == "0");
  CHECK(Rational(7, 7).is_integer());
  CHECK(a < b);
}

TEST_CASE("matrix inverse and solve are exact") {
  QMat m(3, 3);
  long long vals[3][3] = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) m(i, j) = Rational(vals[i][j]);
  QMat inv = inverse(m);
  CHECK(inv * m == QMat::identity(3));
  CHECK(inv(0, 0) == Rational(3, 4));

  QVec b{Rational(1), Rational(0), Rational(0)};
  auto x = solve(m, b);
  REQUIRE(x.has_value());
  CHECK(m.apply(*x) == b);

  QMat sing(2, 2);
  sing(0, 0) = Rational(1);
  sing(0, 1) = Rational(2);
  sing(1, 0) = Rational(2);
  sing(1, 1) = Rational(4);
  QVec bad{Rational(1), Rational(0)};
  CHECK(!solve(sing, bad).has_value());
}

TEST_CASE("smith normal form") {
  ZMat m(2, 2);
  m(0, 0) = Integer(2);
  m(0, 1) = Integer(-1);
  m(1, 0) = Integer(-2);
  m(1, 1) = Integer(2);
  SmithForm s = smith_form(m);
  CHECK(s.U * m * s.V == s.D);
  CHECK(s.D(0, 0) == Integer(1));
  CHECK(s.D(1, 1) == Integer(2));
  CHECK(s.D(0, 1).is_zero());
  CHECK(s.D(1, 0).is_zero());

  // random matrices keep U*A*V == D with divisibility down the diagonal
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> dist(-6, 6);
  for (int iter = 0; iter < 50; ++iter) {
    ZMat A(3, 4);
    for (size_t i = 0; i < 3; ++i)
      for (size_t j = 0; j < 4; ++j) A(i, j) = Integer(dist(rng));
    SmithForm f = smith_form(A);
    CHECK(f.U * A * f.V == f.D);
    for (size_t i = 0; i + 1 < 3; ++i) {
      if (f.D(i + 1, i + 1).is_zero()) continue;
      CHECK((f.D(i + 1, i + 1) % f.D(i, i)).is_zero());
    }
  }
}
