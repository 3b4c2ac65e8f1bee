#include "arbor/dynamics.hpp"
#include "arbor/parse.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <set>

using namespace arbor;

namespace {

IntPolynomial X(std::string_view text) { return parse_polynomial(text, "x").to_integer(); }

MapSet maps(std::initializer_list<const char*> texts) {
  MapSet m;
  for (auto t : texts) m.maps.push_back(X(t));
  return m;
}

std::vector<Integer> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

bool closed_under(const MapSet& s, const std::vector<Integer>& pts) {
  std::set<Integer> set(pts.begin(), pts.end());
  for (const auto& x : pts)
    for (const auto& f : s.maps)
      if (!set.count(f.evaluate(x))) return false;
  return true;
}

}  // namespace

TEST_CASE("coding text round trip and positions") {
  auto c = SequenceCoding::parse("1,2|2");
  CHECK(c.prefix == std::vector<std::size_t>{0, 1});
  CHECK(c.cycle == std::vector<std::size_t>{1});
  CHECK(c.to_string() == "1,2|2");
  CHECK(c.at(1) == 0);
  CHECK(c.at(5) == 1);
  CHECK(SequenceCoding::parse("|1,2").at(4) == 1);
  CHECK_THROWS_AS(SequenceCoding::parse("1|"), ParseError);
  CHECK_THROWS_AS(SequenceCoding::parse("1|2|3"), ParseError);
  CHECK_THROWS_AS(SequenceCoding::parse("|0"), ParseError);
  CHECK_THROWS_AS(SequenceCoding::parse("|3").validate(2), std::invalid_argument);
}

TEST_CASE("generator set validation") {
  CHECK_THROWS_AS(GeneratorSet::integers({1, 1}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(GeneratorSet::integers({}).validate(), std::invalid_argument);
  CHECK(GeneratorSet::integers({-2, -6}).to_string() == "x^2-2; x^2-6");
}

TEST_CASE("critical orbit examples") {
  auto o1 = critical_orbit(GeneratorSet::integers({-2}), SequenceCoding::constant(0), 3);
  CHECK(o1 == std::vector<RatPolynomial>{RatPolynomial(Rational(-2)), RatPolynomial(Rational(2)), RatPolynomial(Rational(2))});
  auto o2 = critical_orbit(GeneratorSet::integers({1}), SequenceCoding::constant(0), 4);
  std::vector<long> want{1, 2, 5, 26};
  for (std::size_t i = 0; i < 4; ++i) CHECK(o2[i] == RatPolynomial(Rational(want[i])));
  auto o3 = critical_orbit(GeneratorSet::polynomials({IntPolynomial::variable()}), SequenceCoding::constant(0), 3);
  CHECK(o3[0] == parse_polynomial("t"));
  CHECK(o3[1] == parse_polynomial("t^2+t"));
  CHECK(o3[2] == parse_polynomial("(t^2+t)^2+t"));
}

TEST_CASE("critical orbit recurrence equals direct evaluation and the composition at 0") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> len(0, 3), idx(0, 2), cval(-4, 4);
  for (int trial = 0; trial < 60; ++trial) {
    std::set<long> cs;
    while (cs.size() < 3) cs.insert(cval(rng));
    auto s = GeneratorSet::integers({cs.begin(), cs.end()});
    SequenceCoding coding;
    for (int i = len(rng); i > 0; --i) coding.prefix.push_back(static_cast<std::size_t>(idx(rng)));
    for (int i = len(rng) + 1; i > 0; --i) coding.cycle.push_back(static_cast<std::size_t>(idx(rng)));
    auto orbit = critical_orbit(s, coding, 8);
    auto plain = oracle::integer_orbit({cs.begin(), cs.end()}, coding, 8);
    for (std::size_t n = 1; n <= 8; ++n) {
      CHECK(orbit[n - 1] == critical_value_direct(s, coding, n));
      CHECK(orbit[n - 1].coeff(0) == Rational(plain[n]));
      if (n <= 5) CHECK(composition(s, coding, n).coeff(0) == orbit[n - 1].coeff(0));
    }
  }
  auto sp = GeneratorSet::polynomials({X("x^3+x"), X("-2x^2+1"), X("5")});
  auto coding = SequenceCoding::parse("2|1,3,2");
  auto orbit = critical_orbit(sp, coding, 6);
  for (std::size_t n = 1; n <= 6; ++n) CHECK(orbit[n - 1] == critical_value_direct(sp, coding, n));
}

TEST_CASE("escape criterion") {
  CHECK(escape_criterion(ints({5, 7})));
  CHECK_FALSE(escape_criterion(ints({-2, -3})));
  CHECK_FALSE(escape_criterion(ints({0})));
}

TEST_CASE("semigroup orbit examples") {
  auto a = semigroup_orbit(maps({"x^2", "x^2-1"}), 0);
  CHECK(a.kind == OrbitKind::Closed);
  // 0 -> -1 -> 1 -> 0, so 1 belongs to the closure as well
  CHECK(a.points == ints({-1, 0, 1}));
  auto b = semigroup_orbit(maps({"x^2-2", "x^2-6"}), -2);
  CHECK(b.kind == OrbitKind::Closed);
  CHECK(b.points == ints({-2, 2}));
  CHECK(semigroup_orbit(maps({"x^2+5", "x^2+7"}), 0).kind == OrbitKind::Escaping);
  CHECK_THROWS_AS(semigroup_orbit(maps({"x^2"}), 0, OrbitCaps{0}), std::invalid_argument);
}

TEST_CASE("closed orbits are closed and escape criterion never yields Closed") {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<long> cval(-50, 50);
  std::uniform_int_distribution<int> size(1, 3);
  int escaping_sets = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::set<long> cs;
    const int s = size(rng);
    while (static_cast<int>(cs.size()) < s) cs.insert(cval(rng));
    auto gs = GeneratorSet::integers({cs.begin(), cs.end()});
    auto st = semigroup_orbit(MapSet::from(gs), 0);
    if (st.kind == OrbitKind::Closed) CHECK(closed_under(MapSet::from(gs), st.points));
    if (escape_criterion(gs.integer_constants())) {
      ++escaping_sets;
      CHECK(st.kind != OrbitKind::Closed);
    }
  }
  CHECK(escaping_sets > 100);
}

TEST_CASE("polynomial semigroup orbit") {
  auto s = GeneratorSet::polynomials({IntPolynomial::variable()});
  CHECK(semigroup_orbit(s, IntPolynomial()).kind == OrbitKind::Escaping);
  auto z = GeneratorSet::polynomials({IntPolynomial(), IntPolynomial::constant(-1)});
  auto st = semigroup_orbit(z, IntPolynomial());
  CHECK(st.kind == OrbitKind::Closed);
  CHECK(st.points.size() == 3);
}

TEST_CASE("finite orbit point search") {
  auto a = orbit_contains_finite_orbit_point(maps({"x^2+x", "x^2-6x"}), 2);
  CHECK(a.answer == Answer::Yes);
  CHECK(a.witness == Integer(0));
  CHECK(orbit_contains_finite_orbit_point(maps({"x^2+5", "x^2+7"}), 0).answer == Answer::No);
  auto c = orbit_contains_finite_orbit_point(maps({"x^2-1"}), 0);
  CHECK(c.answer == Answer::Yes);
  CHECK(c.witness == Integer(0));
  auto d = orbit_contains_finite_orbit_point(maps({"x^2-2", "x^2-6"}), 0);
  CHECK(d.answer == Answer::Yes);
  CHECK(d.witness == Integer(-2));
  CHECK(orbit_contains_finite_orbit_point(maps({"x^2", "x^2-2"}), 0).answer == Answer::No);
}

TEST_CASE("pair family membership") {
  auto a = pair_family_membership(-2, -6);
  REQUIRE(a);
  CHECK(a->family == PairFamily::A);
  CHECK(a->y == 3);
  auto b = pair_family_membership(0, -1);
  REQUIRE(b);
  CHECK(b->family == PairFamily::B);
  CHECK(b->y == 1);
  CHECK_FALSE(pair_family_membership(1, 2));
  CHECK_THROWS_AS(pair_family_membership(3, 3), std::invalid_argument);
}

TEST_CASE("classification examples") {
  auto e = classify_finite_orbit_obstruction(GeneratorSet::integers({-2, -3}));
  CHECK(e.exceptional);
  CHECK(e.name == "{x^2-2, x^2-3}");
  CHECK_FALSE(classify_finite_orbit_obstruction(GeneratorSet::integers({1})).exceptional);
  CHECK_FALSE(classify_finite_orbit_obstruction(GeneratorSet::integers({0, -2})).exceptional);
  GeneratorSet half;
  half.c = {RatPolynomial(Rational(-3, 4)), RatPolynomial(Rational(-2))};
  CHECK_FALSE(classify_finite_orbit_obstruction(half).exceptional);
}

TEST_CASE("negative valuation forces escape") {
  CHECK(valuation_lemma_check(Rational(-3, 4), Rational(3, 2), 2, 2));
  CHECK(valuation_lemma_check(Rational(-3, 4), Rational(-1, 2), 2, 2));
  CHECK_THROWS_AS(valuation_lemma_check(Rational(-2), Rational(2), 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(valuation_lemma_check(Rational(-3, 4), Rational(5, 2), 2, 2, 8), std::invalid_argument);
}

TEST_CASE("Eisenstein at 2") {
  auto s23 = GeneratorSet::integers({-2, -3});
  auto r1 = eisenstein_stability(s23, SequenceCoding::constant(1), 1);
  CHECK(r1.kind == EisensteinCase::Shifted);
  CHECK(r1.tested == X("x^2+2x-2"));
  auto s26 = GeneratorSet::integers({-2, -6});
  auto r2 = eisenstein_stability(s26, SequenceCoding::constant(0), 2);
  CHECK(r2.kind == EisensteinCase::Direct);
  CHECK(r2.constant_mod4 == 2);
  CHECK(eisenstein_stability(GeneratorSet::integers({-1}), SequenceCoding::constant(0), 1).kind ==
        EisensteinCase::Failed);
  CHECK(is_eisenstein_at_2(X("x^4-4x^2+2")));
  CHECK_FALSE(is_eisenstein_at_2(X("x^2+4")));
}
