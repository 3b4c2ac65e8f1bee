#include "arbor/galois_process.hpp"

#include <stdexcept>

namespace arbor {

namespace {

Rational step(const Rational& f) {
  Rational g = f - f * f / 2;
  g.canonicalize();
  return g;
}

// floor / ceiling of q on the grid 2^-bits
Rational round_dyadic(const Rational& q, unsigned bits, bool up) {
  Integer scaled = q.get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), bits);
  Integer r;
  if (up)
    mpz_cdiv_q(r.get_mpz_t(), scaled.get_mpz_t(), q.get_den_mpz_t());
  else
    mpz_fdiv_q(r.get_mpz_t(), scaled.get_mpz_t(), q.get_den_mpz_t());
  Rational out(r);
  mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), bits);
  return out;
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Rational dyadic(const Integer& num, unsigned long e) {
  Rational q(num);
  mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), e);
  return q;
}

}  // namespace

Rational fpp_full_binary(unsigned n) {
  if (n < 1) throw std::invalid_argument("fpp_full_binary: n must be at least 1");
  if (n > kExactFppLevels) throw std::invalid_argument("fpp_full_binary: exact values only up to level 24");
  Rational f(1, 2);
  for (unsigned i = 2; i <= n; ++i) f = step(f);
  return f;
}

std::vector<Rational> fpp_table(unsigned n) {
  if (n > kExactFppLevels) throw std::invalid_argument("fpp_table: exact values only up to level 24");
  std::vector<Rational> out;
  Rational f(1, 2);
  for (unsigned i = 1; i <= n; ++i) {
    if (i > 1) f = step(f);
    out.push_back(f);
  }
  return out;
}

// f -> f - f^2/2 is increasing on [0, 1], so rounding the endpoints outward
// keeps the true value inside.
std::vector<FppEnclosure> fpp_enclosures(unsigned n, unsigned precision_bits) {
  std::vector<FppEnclosure> out;
  Rational f(1, 2);
  for (unsigned i = 1; i <= n; ++i) {
    if (i <= kExactFppLevels) {
      if (i > 1) f = step(f);
      out.push_back({f, f});
      continue;
    }
    const FppEnclosure& prev = out.back();
    out.push_back({round_dyadic(step(prev.lo), precision_bits, false), round_dyadic(step(prev.hi), precision_bits, true)});
  }
  return out;
}

FppDecreaseProof prove_fpp_decrease(unsigned N, const Rational& bound) {
  FppDecreaseProof p;
  const auto e = fpp_enclosures(N);
  p.strictly_decreasing = true;
  for (unsigned n = 2; n <= N; ++n) {
    if (!(e[n - 1].hi < e[n - 2].lo)) {
      p.strictly_decreasing = false;
      p.failed_level = n;
      break;
    }
  }
  p.below_bound = !e.empty() && e.back().hi < bound;
  return p;
}

std::map<unsigned long, Rational> coin_transition(unsigned long u) {
  if (u % 2 != 0) throw std::invalid_argument("coin_transition: u must be even");
  std::map<unsigned long, Rational> out;
  for (unsigned long k = 0; k <= u; ++k) {
    Rational p = dyadic(binomial(u, k), u);
    p.canonicalize();
    out.emplace(2 * k, p);
  }
  return out;
}

Rational transition_expectation(unsigned long u) {
  Rational e;
  for (const auto& [v, p] : coin_transition(u)) e += p * Rational(Integer(std::to_string(v)));
  e.canonicalize();
  return e;
}

bool martingale_check(unsigned long lo, unsigned long hi) {
  for (unsigned long u = lo + lo % 2; u <= hi; u += 2)
    if (transition_expectation(u) != Rational(Integer(std::to_string(u)))) return false;
  return true;
}

Rational stay_probability_bound(unsigned long u) {
  if (u < 2 || u % 2 != 0) throw std::invalid_argument("stay_probability_bound: u must be even and >= 2");
  Rational p = dyadic(binomial(u, u / 2), u);
  p.canonicalize();
  if (p > Rational(1, 2)) throw std::logic_error("stay probability exceeds 1/2 at u = " + std::to_string(u));
  return p;
}

const char* nonmaximal_model_name(NonMaximalModel m) { return m == NonMaximalModel::Double ? "double" : "hold"; }

NonMaximalModel parse_nonmaximal_model(const std::string& s) {
  if (s == "double") return NonMaximalModel::Double;
  if (s == "hold") return NonMaximalModel::Hold;
  throw std::invalid_argument("unknown non-maximal model '" + s + "' (double, hold)");
}

// Extinction by level n is G_1(G_2(...G_n(0))) with offspring generating
// functions (1 + s^2)/2 at maximal levels, s^2 for double and s for hold.
std::optional<Rational> model_survival(const std::vector<bool>& mask, NonMaximalModel model, unsigned n) {
  if (n > kExactFppLevels) return std::nullopt;
  Rational e = 0;
  for (unsigned m = n; m >= 1; --m) {
    const bool maximal = m - 1 >= mask.size() || mask[m - 1];
    if (maximal)
      e = (1 + e * e) / 2;
    else if (model == NonMaximalModel::Double)
      e = e * e;
    e.canonicalize();
  }
  return Rational(1 - e);
}

}  // namespace arbor
