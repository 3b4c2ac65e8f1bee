#include "arbor/dynamics.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace arbor {

namespace {

// integer y with 1 - 4c = y^2, y >= 0
std::optional<Integer> root_of(const Rational& c) {
  Rational v = 1 - 4 * c;
  v.canonicalize();
  if (v < 0 || v.get_den() != 1) return std::nullopt;
  if (!mpz_perfect_square_p(v.get_num_mpz_t())) return std::nullopt;
  Integer y;
  mpz_sqrt(y.get_mpz_t(), v.get_num_mpz_t());
  return y;
}

bool y_admissible(const Integer& y) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), y.get_mpz_t(), 4);
  return r == 1 || r == 3;
}

Rational quarter(const Integer& v) {
  Rational q(v, 4);
  q.canonicalize();
  return q;
}

std::vector<PairMembership> all_memberships(const Rational& c1, const Rational& c2) {
  std::vector<PairMembership> out;
  for (int swapped = 0; swapped < 2; ++swapped) {
    const Rational& a = swapped ? c2 : c1;
    const Rational& b = swapped ? c1 : c2;
    auto r = root_of(a);
    if (!r) continue;
    for (const Integer& y : {*r, Integer(-*r)}) {
      if (!y_admissible(y)) continue;
      if (b == quarter(1 - (y + 2) * (y + 2))) out.push_back({PairFamily::A, y, swapped != 0});
      if (b == quarter(-3 - y * y)) out.push_back({PairFamily::B, y, swapped != 0});
      if (*r == 0) break;
    }
  }
  return out;
}

std::string canonical_name(std::vector<Integer> cs) {
  std::sort(cs.begin(), cs.end(), [](const Integer& a, const Integer& b) { return a > b; });
  std::string out = "{";
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) out += ", ";
    out += "x^2";
    if (cs[i] > 0) out += "+" + cs[i].get_str();
    if (cs[i] < 0) out += cs[i].get_str();
  }
  return out + "}";
}

}  // namespace

std::optional<PairMembership> pair_family_membership(const Rational& c1, const Rational& c2) {
  if (c1 == c2) throw std::invalid_argument("pair_family_membership: c1 == c2");
  auto all = all_memberships(c1, c2);
  if (all.empty()) return std::nullopt;
  return all.front();
}

Classification classify_finite_orbit_obstruction(const GeneratorSet& s) {
  if (s.ring != Ring::Rationals) throw std::invalid_argument("classification is over the rationals");
  s.validate();
  Classification out;
  if (!s.integral()) {
    out.reason = "some c is not an integer";
    return out;
  }
  const auto cs = s.integer_constants();
  if (cs.size() >= 3) {
    out.reason = "three or more maps have no rational finite orbit point";
    return out;
  }
  if (cs.size() == 1) {
    const Integer& c = cs[0];
    if (c == 0 || c == -1 || c == -2) {
      out.exceptional = true;
      out.name = canonical_name(cs);
      out.witness = Integer(0);
      out.reason = "post-critically finite map";
    } else {
      out.reason = "0 has infinite orbit";
    }
    return out;
  }

  auto members = all_memberships(Rational(cs[0]), Rational(cs[1]));
  bool in_window = false;
  for (const auto& m : members) {
    if (m.family == PairFamily::A && m.y >= -7 && m.y <= 5) in_window = true;
    if (m.family == PairFamily::B && m.y >= -5 && m.y <= 5) in_window = true;
  }
  if (members.empty()) {
    out.reason = "pair lies in neither family";
    return out;
  }
  if (!in_window) {
    out.reason = "family parameter outside the admissible window";
    return out;
  }
  auto search = orbit_contains_finite_orbit_point(MapSet::from(s), 0);
  if (search.answer == Answer::Yes) {
    out.exceptional = true;
    out.name = canonical_name(cs);
    out.witness = search.witness;
    out.reason = "finite orbit point found in the orbit of 0";
  } else if (search.answer == Answer::No) {
    out.reason = "orbit of 0 has no finite orbit point";
  } else {
    throw std::runtime_error("classification: orbit search exhausted its caps for " + s.to_string());
  }
  return out;
}

bool valuation_lemma_check(const Rational& c, const Rational& alpha, const Integer& p, unsigned d, std::size_t cap) {
  if (c == 0 || padic_valuation(c, p) >= 0) throw std::invalid_argument("valuation lemma needs v_p(c) < 0");
  if (alpha == 0) throw std::invalid_argument("valuation lemma: alpha = 0");
  std::set<Rational> seen;
  Rational z = alpha;
  bool preperiodic = false;
  for (std::size_t i = 0; i <= cap; ++i) {
    if (!seen.insert(z).second) {
      preperiodic = true;
      break;
    }
    Rational w;
    mpz_pow_ui(w.get_num_mpz_t(), z.get_num_mpz_t(), d);
    mpz_pow_ui(w.get_den_mpz_t(), z.get_den_mpz_t(), d);
    z = w + c;
    z.canonicalize();
  }
  if (!preperiodic) throw std::invalid_argument("alpha is not seen to be preperiodic within the cap");
  return padic_valuation(c, p) == static_cast<long>(d) * padic_valuation(alpha, p);
}

}  // namespace arbor
