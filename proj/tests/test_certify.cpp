#include "arbor/certify.hpp"
#include "arbor/parse.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <fstream>
#include <random>

using namespace arbor;

namespace {

IntPolynomial T(std::string_view text) { return parse_polynomial(text, "t").to_integer(); }

GeneratorSet qt(std::initializer_list<const char*> texts) {
  std::vector<IntPolynomial> cs;
  for (auto t : texts) cs.push_back(T(t));
  return GeneratorSet::polynomials(cs);
}

IntPolynomial random_int_poly(std::mt19937_64& rng, int max_degree, long bound) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<long> coef(-bound, bound);
  std::vector<Integer> c(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& x : c) x = coef(rng);
  return IntPolynomial(c);
}

SequenceCoding random_coding(std::mt19937_64& rng, std::size_t s) {
  std::uniform_int_distribution<std::size_t> idx(0, s - 1);
  std::uniform_int_distribution<int> len(0, 2);
  SequenceCoding c;
  for (int i = len(rng); i > 0; --i) c.prefix.push_back(idx(rng));
  for (int i = len(rng) + 1; i > 0; --i) c.cycle.push_back(idx(rng));
  return c;
}

}  // namespace

TEST_CASE("stability certificate examples") {
  auto a = stability_certificate(GeneratorSet::integers({1}), SequenceCoding::constant(0), 4);
  CHECK(a.stable_through_depth);
  for (const auto& L : a.levels) CHECK(L.stability == StabilityKind::NonSquareWitness);

  auto b = stability_certificate(GeneratorSet::integers({0}), SequenceCoding::constant(0), 3);
  CHECK_FALSE(b.stable_through_depth);
  CHECK(b.levels[0].stability == StabilityKind::Failed);

  auto c = stability_certificate(qt({"t"}), SequenceCoding::constant(0), 7);
  CHECK(c.stable_through_depth);
  for (const auto& L : c.levels) CHECK(L.stability == StabilityKind::DerivativeTrick);

  auto d = stability_certificate(GeneratorSet::integers({-2}), SequenceCoding::constant(0), 4);
  CHECK(d.stable_through_depth);
  CHECK(d.levels.size() == 4);

  // gamma_2(0) = 4 for x^2+3 after x^2+1
  auto e = stability_certificate(GeneratorSet::integers({3, 1}), SequenceCoding::parse("|1,2"), 3);
  CHECK(certifies_stability(e.levels[0].stability));
  CHECK(e.levels[1].stability == StabilityKind::Failed);
  CHECK_FALSE(e.stable_through_depth);
  CHECK_THROWS_AS(stability_certificate(GeneratorSet::integers({1}), SequenceCoding::constant(0), 0),
                  std::invalid_argument);
}

TEST_CASE("maximality by primitive odd prime examples") {
  auto x1 = GeneratorSet::integers({1});
  auto c = SequenceCoding::constant(0);
  auto m3 = maximality_by_primitive_odd_prime(x1, c, 3);
  CHECK(m3.kind == MaximalityKind::PrimitiveOddPrime);
  CHECK(m3.witness == "5");
  CHECK(m3.witness_is_prime);
  auto m4 = maximality_by_primitive_odd_prime(x1, c, 4);
  CHECK(m4.witness == "13");
  auto m5 = maximality_by_primitive_odd_prime(x1, c, 5);  // 677 is prime
  CHECK(m5.witness == "677");
  auto f = maximality_by_primitive_odd_prime(GeneratorSet::integers({-2}), c, 3);
  CHECK(f.kind == MaximalityKind::NoWitness);
  CHECK_FALSE(f.maximal);
  CHECK_THROWS_AS(maximality_by_primitive_odd_prime(GeneratorSet::integers({-1}), c, 2), std::invalid_argument);
  CHECK_THROWS_AS(maximality_by_primitive_odd_prime(x1, c, 1), std::invalid_argument);
}

TEST_CASE("primitive odd prime witnesses are re-checkable") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> cval(-30, 30);
  int witnesses = 0;
  for (int trial = 0; trial < 80; ++trial) {
    std::vector<long> cs{cval(rng), cval(rng)};
    if (cs[0] == cs[1]) continue;
    auto coding = random_coding(rng, 2);
    auto orbit = oracle::integer_orbit(cs, coding, 5);
    bool zero = false;
    for (std::size_t n = 1; n <= 5; ++n) zero = zero || orbit[n] == 0;
    if (zero) continue;
    std::vector<Integer> values(orbit.begin() + 1, orbit.end());
    for (std::size_t n = 2; n <= 5; ++n) {
      auto v = maximality_by_primitive_odd_prime(values, n);
      if (v.kind != MaximalityKind::PrimitiveOddPrime) continue;
      ++witnesses;
      Integer p(v.witness);
      CHECK(p % 2 != 0);
      CHECK(padic_valuation(Rational(values[n - 1]), p) % 2 == 1);
      for (std::size_t m = 1; m < n; ++m) CHECK(padic_valuation(Rational(values[m - 1]), p) == 0);
    }
  }
  CHECK(witnesses > 50);
}

TEST_CASE("maximality over Q(t) examples") {
  auto s = qt({"t"});
  auto c = SequenceCoding::constant(0);
  auto m2 = maximality_qt(s, c, 2);
  CHECK(m2.maximal);
  CHECK(m2.witness == "t+1");
  auto m3 = maximality_qt(s, c, 3);
  CHECK(m3.witness == "t^3+2t^2+t+1");
  CHECK_THROWS_AS(maximality_qt(qt({"t^2"}), c, 1), std::invalid_argument);
  // gamma_2(0) = t^4 + t^2 = t^2 (t^2 + 1): the square factor carries no witness
  auto sq = maximality_qt(qt({"t^2"}), c, 2);
  CHECK(sq.witness == "t^2+1");
}

TEST_CASE("tool conditions") {
  auto a = tool_conditions(qt({"t^4+5t", "-(7t^4+3)"}));
  REQUIRE(a);
  CHECK(a->j == 0);
  CHECK(a->k == 1);
  auto b = tool_conditions(qt({"t"}));
  REQUIRE(b);
  CHECK(b->j == 0);
  CHECK(b->k == 0);
  CHECK_FALSE(tool_conditions(qt({"t^2"})));
  CHECK_FALSE(tool_conditions(qt({"2t^3+t", "t^2"})));  // no odd leading coefficient at degree 3
}

TEST_CASE("certify chain examples") {
  auto a = certify_chain(qt({"t"}), SequenceCoding::constant(0), 6);
  CHECK(a.stable_through_depth);
  CHECK(a.tool_guarantee);
  CHECK(a.maximal_levels == std::vector<std::size_t>{1, 2, 3, 4, 5, 6});
  CHECK_FALSE(a.inconclusive());

  auto s = qt({"t^4+5t", "-(7t^4+3)"});
  auto b = certify_chain(s, SequenceCoding::parse("1|2"), 5);
  CHECK(b.stable_through_depth);
  CHECK(b.tool_guarantee);
  for (const auto& L : b.levels) {
    if (L.map_index == 1) {
      CHECK(L.tool_guaranteed);
      CHECK(L.maximality.maximal);
    }
  }

  auto c = certify_chain(GeneratorSet::integers({-2}), SequenceCoding::constant(0), 4);
  CHECK(c.stable_through_depth);
  CHECK(c.maximal_levels == std::vector<std::size_t>{1});
  for (std::size_t n = 3; n <= 4; ++n) CHECK_FALSE(c.levels[n - 1].maximality.maximal);

  auto d = certify_chain(GeneratorSet::integers({1}), SequenceCoding::constant(0), 5);
  CHECK(d.maximal_levels == std::vector<std::size_t>{1, 2, 3, 4, 5});

  // theta_1 = x^2+1 is not a tool index: no guarantee is claimed
  auto e = certify_chain(qt({"t", "1"}), SequenceCoding::parse("2|1"), 3);
  CHECK_FALSE(e.tool_guarantee);
}

TEST_CASE("certify chain never claims maximality past a failed stability level") {
  auto ch = certify_chain(GeneratorSet::integers({3, 1}), SequenceCoding::parse("|1,2"), 4);
  CHECK(ch.levels[1].stability == StabilityKind::Failed);
  CHECK(ch.levels[2].maximality.kind == MaximalityKind::NotAttempted);
  CHECK_FALSE(ch.levels[2].maximality.maximal);
}

TEST_CASE("level 2 oracle") {
  CHECK(level2_oracle(GeneratorSet::integers({1}), SequenceCoding::constant(0)));
  CHECK_FALSE(level2_oracle(GeneratorSet::integers({3, 1}), SequenceCoding::parse("|1,2")));
  CHECK(level2_oracle(qt({"t"}), SequenceCoding::constant(0)));
  CHECK_FALSE(level2_oracle(GeneratorSet::integers({-2}), SequenceCoding::constant(0)));
  CHECK_THROWS_AS(level2_oracle(GeneratorSet::integers({-4}), SequenceCoding::constant(0)), std::invalid_argument);
}

TEST_CASE("valuation criterion at n = 2 implies the level 2 oracle") {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<long> cval(-40, 40);
  int hits = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<long> cs{cval(rng), cval(rng)};
    if (cs[0] == cs[1]) continue;
    auto s = GeneratorSet::integers(cs);
    auto coding = random_coding(rng, 2);
    auto orbit = critical_orbit(s, coding, 2);
    if (is_square(-orbit[0]) || orbit[1].is_zero()) continue;
    auto v = maximality_by_primitive_odd_prime(s, coding, 2);
    if (v.kind == MaximalityKind::PrimitiveOddPrime) {
      ++hits;
      CHECK(level2_oracle(s, coding));
    }
  }
  for (int trial = 0; trial < 100; ++trial) {
    auto s = GeneratorSet::polynomials({random_int_poly(rng, 3, 5), random_int_poly(rng, 3, 5)});
    if (s.c[0] == s.c[1]) continue;
    auto coding = random_coding(rng, 2);
    auto orbit = critical_orbit(s, coding, 2);
    if (is_square(-orbit[0]) || orbit[1].is_zero()) continue;
    if (maximality_qt(orbit, 2).maximal) {
      ++hits;
      CHECK(level2_oracle(s, coding));
    }
  }
  CHECK(hits > 150);
}

TEST_CASE("discriminant identity") {
  CHECK(discriminant(parse_polynomial("x^4+2x^2+2", "x")) == Rational(512));
  CHECK(discriminant_identity_check(GeneratorSet::integers({1}), SequenceCoding::constant(0), 2));
  CHECK(discriminant_identity_check(GeneratorSet::integers({-2}), SequenceCoding::constant(0), 2));
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<long> cval(-9, 9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<long> cs{cval(rng), cval(rng), cval(rng)};
    if (cs[0] == cs[1] || cs[1] == cs[2] || cs[0] == cs[2]) continue;
    auto s = GeneratorSet::integers(cs);
    auto coding = random_coding(rng, 3);
    for (std::size_t n = 2; n <= 4; ++n) CHECK(discriminant_identity_check(s, coding, n));
  }
  GeneratorSet half;
  half.c = {RatPolynomial(Rational(-3, 4)), RatPolynomial(Rational(5, 2))};
  CHECK(discriminant_identity_check(half, SequenceCoding::parse("|1,2"), 3));
  CHECK_THROWS_AS(discriminant_identity_check(GeneratorSet::integers({1}), SequenceCoding::constant(0), 1),
                  std::invalid_argument);
}

TEST_CASE("degree law") {
  auto a = degree_law_check(qt({"t"}), SequenceCoding::constant(0), 3);
  CHECK(a.equality_case);
  CHECK(a.degree == 4);
  CHECK(a.ok());
  auto b = degree_law_check(qt({"t", "1"}), SequenceCoding::parse("1,1|2"), 3);
  CHECK_FALSE(b.equality_case);
  CHECK(b.inequality_holds);
  auto c = degree_law_check(qt({"-(7t^4+3)", "t^4+5t"}), SequenceCoding::parse("|1,2"), 2);
  CHECK(c.equality_case);
  CHECK(c.degree == 8);
  CHECK(c.ok());
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 60; ++trial) {
    auto s = GeneratorSet::polynomials({random_int_poly(rng, 4, 6), random_int_poly(rng, 4, 6)});
    if (s.c[0] == s.c[1] || std::max(s.c[0].degree(), s.c[1].degree()) <= 0) continue;
    auto coding = random_coding(rng, 2);
    for (std::size_t n = 1; n <= 4; ++n) CHECK(degree_law_check(s, coding, n).ok());
  }
}

TEST_CASE("square-free trick on random inputs") {
  std::mt19937_64 rng(35);
  int tested = 0;
  while (tested < 200) {
    IntPolynomial z = random_int_poly(rng, 4, 9), c = random_int_poly(rng, 6, 9);
    if (!(derivative(reduce_mod2(c)).is_one())) continue;
    if ((z * z + c).leading() % 2 == 0) continue;
    ++tested;
    CHECK(squarefree_trick_check(z, c));
    CHECK(is_squarefree(z * z + c));
  }
  CHECK_THROWS_AS(squarefree_trick_check(T("t"), T("t^2")), std::invalid_argument);
}

TEST_CASE("tool conditions force square-free critical values") {
  std::mt19937_64 rng(36);
  int tested = 0;
  for (int trial = 0; trial < 2000 && tested < 60; ++trial) {
    auto s = GeneratorSet::polynomials({random_int_poly(rng, 4, 7), random_int_poly(rng, 4, 7)});
    if (s.c[0] == s.c[1]) continue;
    auto tool = tool_conditions(s);
    if (!tool) continue;
    ++tested;
    SequenceCoding coding = random_coding(rng, 2);
    coding.prefix.insert(coding.prefix.begin(), tool->j);
    auto orbit = critical_orbit(s, coding, 6);
    for (std::size_t n = 1; n <= orbit.size(); ++n) {
      if (std::find(tool->K.begin(), tool->K.end(), coding.at(n)) == tool->K.end()) continue;
      CHECK(is_squarefree(orbit[n - 1].to_integer()));
    }
    auto ch = certify_chain(s, coding, 5);
    CHECK(ch.tool_guarantee);
    for (const auto& L : ch.levels)
      if (L.tool_guaranteed && L.level >= 2) CHECK(maximality_qt(orbit, L.level).maximal);
  }
  CHECK(tested >= 60);
}

TEST_CASE("certificate json matches the frozen document") {
  auto ch = certify_chain(qt({"t^4+5t", "-(7t^4+3)"}), SequenceCoding::parse("1|2"), 4);
  std::ifstream in(std::string(ARBOR_TEST_DATA) + "/certificate_tool_pair.json");
  REQUIRE(in);
  auto golden = nlohmann::json::parse(in);
  CHECK(to_json(ch) == golden);
  auto bare = to_json(ch, false);
  CHECK_FALSE(bare["levels"][0].contains("value"));
  CHECK(bare["summary"]["tool"]["j"] == 1);
  CHECK(bare["summary"]["tool"]["k"] == 2);
}
