#include "arbor/algebra.hpp"
#include "arbor/factor.hpp"
#include "arbor/parse.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace arbor;

namespace {

IntPolynomial P(std::initializer_list<long> c) {
  std::vector<Integer> v;
  for (long x : c) v.emplace_back(x);
  return IntPolynomial(v);
}

RatPolynomial R(std::string_view text) { return parse_polynomial(text); }

RatPolynomial remultiply(const SquarefreeDecomposition& d) {
  RatPolynomial acc(d.unit);
  for (const auto& [f, m] : d.factors)
    for (unsigned i = 0; i < m; ++i) acc = acc * f;
  return acc;
}

}  // namespace

TEST_CASE("compose examples") {
  CHECK(compose(P({1, 0, 1}), P({0, 1})) == P({1, 0, 1}));
  CHECK(compose(P({0, 1, 1}), P({1, 1})) == P({2, 3, 1}));
  CHECK(compose(IntPolynomial(), P({4, 5})).is_zero());
}

TEST_CASE("compose agrees with pointwise evaluation") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    auto f = oracle::random_poly(rng, 4, 9), g = oracle::random_poly(rng, 3, 9);
    auto h = compose(f, g);
    for (long t = -3; t <= 3; ++t) CHECK(h.evaluate(Integer(t)) == f.evaluate(g.evaluate(Integer(t))));
    if (f.degree() > 0 && g.degree() > 0) CHECK(h.degree() == f.degree() * g.degree());
  }
}

TEST_CASE("reduce mod 2 and derivative") {
  CHECK(reduce_mod2(P({0, 5, 0, 0, 1})).to_string() == "t^4+t");
  CHECK(reduce_mod2(P({4, 0, 0, 2})).is_zero());
  CHECK(reduce_mod2(-P({3, 0, 0, 0, 7})).to_string() == "t^4+1");
  CHECK(derivative(reduce_mod2(P({0, 1, 0, 0, 1}))).is_one());
  CHECK(derivative(P({7})).is_zero());
  CHECK(derivative(P({0, 1, 1})) == P({1, 2}));
  CHECK(derivative(reduce_mod2(P({0, 0, 1}))).is_zero());
}

TEST_CASE("squarefree decomposition examples") {
  auto d1 = squarefree_decomposition(R("t^2+t"));
  REQUIRE(d1.factors.size() == 1);
  CHECK(d1.factors[0].factor == R("t^2+t"));
  CHECK(d1.factors[0].multiplicity == 1);

  auto d2 = squarefree_decomposition(R("t^2*(t+1)"));
  REQUIRE(d2.factors.size() == 2);
  CHECK(d2.factors[0].factor == R("t+1"));
  CHECK(d2.factors[0].multiplicity == 1);
  CHECK(d2.factors[1].factor == R("t"));
  CHECK(d2.factors[1].multiplicity == 2);
  CHECK(remultiply(d2) == R("t^3+t^2"));

  auto d3 = squarefree_decomposition(R("5"));
  CHECK(d3.factors.empty());
  CHECK(d3.unit == 5);
  CHECK_THROWS_AS(squarefree_decomposition(RatPolynomial()), std::invalid_argument);
}

TEST_CASE("squarefree decomposition re-multiplies exactly") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 150; ++trial) {
    auto a = oracle::random_poly(rng, 3, 6), b = oracle::random_poly(rng, 2, 6), c = oracle::random_poly(rng, 2, 6);
    RatPolynomial f = RatPolynomial(a) * RatPolynomial(b * b) * RatPolynomial(c * c * c);
    f = f * RatPolynomial(Rational(3, 7));
    auto d = squarefree_decomposition(f);
    CHECK(remultiply(d) == f);
    for (std::size_t i = 1; i < d.factors.size(); ++i) CHECK(d.factors[i - 1].multiplicity < d.factors[i].multiplicity);
    for (const auto& sf : d.factors) CHECK(is_squarefree(sf.factor.numerator()));
  }
}

TEST_CASE("is_square") {
  CHECK(is_square(Rational(4, 9)));
  CHECK_FALSE(is_square(Rational(2)));
  CHECK_FALSE(is_square(Rational(-4)));
  CHECK(is_square(Rational(0)));
  CHECK_FALSE(is_square(R("t^2+t")));
  CHECK(is_square(R("(t+1)^2")));
  CHECK(is_square(R("4(t+1)^2/9")));
  CHECK_FALSE(is_square(R("-(t+1)^2")));
  CHECK_FALSE(is_square(R("2(t+1)^2")));
}

TEST_CASE("is_square property: f^2 square, f^2 g not") {
  std::mt19937_64 rng(13);
  int tested = 0;
  while (tested < 100) {
    auto f = oracle::random_poly(rng, 3, 5), g = oracle::random_poly(rng, 3, 5);
    if (g.degree() < 1 || !is_squarefree(g) || gcd(f, g).degree() > 0) continue;
    ++tested;
    CHECK(is_square(RatPolynomial(f * f)));
    CHECK_FALSE(is_square(RatPolynomial(f * f * g)));
  }
}

TEST_CASE("square in a quadratic extension") {
  CHECK_FALSE(square_in_quadratic_extension(Rational(2), Rational(-1)));
  CHECK(square_in_quadratic_extension(Rational(-4), Rational(-1)));
  CHECK(square_in_quadratic_extension(Rational(9), Rational(-1)));
  CHECK_THROWS_AS(square_in_quadratic_extension(Rational(2), Rational(4)), std::invalid_argument);
  CHECK_THROWS_AS(square_in_quadratic_extension(Rational(2), Rational(0)), std::invalid_argument);
  CHECK_FALSE(square_in_quadratic_extension(R("t^2+t"), R("-t")));
  CHECK(square_in_quadratic_extension(R("-t^3"), R("-t")));
}

TEST_CASE("factor_integer") {
  auto f26 = factor_integer(26);
  CHECK(f26.complete());
  REQUIRE(f26.primes.size() == 2);
  CHECK(f26.primes[0] == std::pair<Integer, unsigned>{2, 1});
  CHECK(f26.primes[1] == std::pair<Integer, unsigned>{13, 1});
  auto f5 = factor_integer(-5);
  CHECK(f5.sign == -1);
  CHECK(f5.primes == std::vector<std::pair<Integer, unsigned>>{{5, 1}});
  CHECK(factor_integer(677).primes == std::vector<std::pair<Integer, unsigned>>{{677, 1}});
  CHECK_THROWS_AS(factor_integer(0), std::invalid_argument);
}

TEST_CASE("factor_integer re-multiplies, including rho-sized factors") {
  std::mt19937_64 rng(14);
  const Integer big = Integer("1000000007") * Integer("998244353") * 49;
  std::vector<Integer> cases = {big, Integer("18446744073709551557") * 3, Integer(1) << 40};
  for (int i = 0; i < 60; ++i) cases.push_back(Integer(std::to_string(rng() >> 4)));
  for (const auto& n : cases) {
    auto f = factor_integer(n);
    REQUIRE(f.complete());
    Integer prod = 1;
    for (const auto& [p, e] : f.primes) {
      CHECK(is_probable_prime(p));
      for (unsigned k = 0; k < e; ++k) prod *= p;
    }
    CHECK(prod == abs(n));
  }
}

TEST_CASE("factor_integer reports a partial result under a tiny budget") {
  FactorBudget tiny;
  tiny.trial_bound = 100;
  tiny.rho_iterations = 1;
  auto f = factor_integer(Integer("1000000007") * Integer("998244353"), tiny);
  CHECK_FALSE(f.complete());
  CHECK(f.cofactor == Integer("1000000007") * Integer("998244353"));
}

TEST_CASE("padic valuation") {
  CHECK(padic_valuation(Rational(-3, 4), 2) == -2);
  CHECK(padic_valuation(Rational(3, 2), 2) == -1);
  CHECK(padic_valuation(Rational(5), 3) == 0);
  CHECK_THROWS_AS(padic_valuation(Rational(0), 3), std::invalid_argument);
  std::mt19937_64 rng(15);
  std::uniform_int_distribution<long> u(1, 5000);
  for (int i = 0; i < 200; ++i) {
    Rational a(u(rng), u(rng)), b(-u(rng), u(rng));
    a.canonicalize();
    b.canonicalize();
    for (long p : {2, 3, 5, 7}) CHECK(padic_valuation(a * b, p) == padic_valuation(a, p) + padic_valuation(b, p));
  }
}

TEST_CASE("resultant and discriminant examples") {
  CHECK(resultant(R("t^2+1"), R("2t")) == 4);
  CHECK(discriminant(R("t^2+1")) == -4);
  CHECK(discriminant(R("x^4+2x^2+2")) == 512);
  CHECK(discriminant(P({2, 0, 2, 0, 1})) == 512);
  CHECK_THROWS_AS(resultant(RatPolynomial(), R("t")), std::invalid_argument);
}

TEST_CASE("resultant matches the Sylvester determinant") {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 200; ++trial) {
    auto f = oracle::random_poly(rng, 5, 7), g = oracle::random_poly(rng, 4, 7);
    CHECK(Rational(resultant(f, g)) == oracle::sylvester_resultant(f, g));
  }
}

TEST_CASE("rational resultant scales by denominators") {
  RatPolynomial f(P({1, 0, 3}), 2), g(P({-1, 5}), 3);
  // Res(f/2, g/3) = Res(f, g) / (2^deg g * 3^deg f)
  Rational expected = oracle::sylvester_resultant(P({1, 0, 3}), P({-1, 5})) / Rational(2 * 9);
  CHECK(resultant(f, g) == expected);
}

TEST_CASE("resultant vanishes exactly when the gcd is nonconstant") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    auto f = oracle::random_poly(rng, 3, 4), g = oracle::random_poly(rng, 3, 4);
    if (trial % 3 == 0) {
      auto h = oracle::random_poly(rng, 2, 4);
      f = f * h;
      g = g * h;
    }
    if (f.degree() < 1 || g.degree() < 1) continue;
    CHECK((resultant(f, g) == 0) == (gcd(f, g).degree() > 0));
  }
}

TEST_CASE("modular gcd agrees with a common-factor construction") {
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = oracle::random_poly(rng, 6, 30), b = oracle::random_poly(rng, 6, 30), h = oracle::random_poly(rng, 5, 30);
    auto g = gcd(a * h, b * h);
    IntPolynomial q;
    CHECK(divides(g, a * h, &q));
    CHECK(divides(g, b * h));
    CHECK(divides(primitive_part(h), g));
    CHECK(g.leading() > 0);
  }
  CHECK(gcd(P({0, 0, 6}), P({0, 4})) == P({0, 2}));
  CHECK(gcd(IntPolynomial(), P({3, -6})) == P({-3, 6}));
}

TEST_CASE("parser") {
  CHECK(parse_polynomial("7t^4+3").to_string() == "7t^4+3");
  CHECK(parse_polynomial("-(7t^4+3)") == -parse_polynomial("7t^4+3"));
  CHECK(parse_polynomial("(t+1)(t-1)") == parse_polynomial("t^2-1"));
  CHECK(parse_rational("-3/4") == Rational(-3, 4));
  CHECK_THROWS_AS(parse_polynomial("t+"), ParseError);
  CHECK_THROWS_AS(parse_polynomial("t+x"), ParseError);
  CHECK_THROWS_AS(parse_rational("t"), ParseError);
  try {
    parse_polynomial("t^2 + * 3");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);
  }
  CHECK(split_list(" -2; -6 ;") == std::vector<std::string>{"-2", "-6"});
}
