#include "arbor/factor.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace arbor {

bool is_probable_prime(const Integer& n) { return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

namespace {

std::vector<unsigned long> small_primes(unsigned long bound) {
  std::vector<char> comp(bound + 1, 0);
  std::vector<unsigned long> out;
  for (unsigned long i = 2; i <= bound; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (unsigned long j = i * i; j <= bound; j += i) comp[j] = 1;
  }
  return out;
}

const std::vector<unsigned long>& trial_primes(unsigned long bound) {
  static thread_local unsigned long cached_bound = 0;
  static thread_local std::vector<unsigned long> cache;
  if (cached_bound != bound) {
    cache = small_primes(bound);
    cached_bound = bound;
  }
  return cache;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor or 0.
Integer brent(const Integer& n, unsigned long c0, std::uint64_t& steps_left) {
  Integer y = 2, x, ys, q = 1, g = 1, tmp;
  const Integer c = c0;
  const std::uint64_t m = 128;
  std::uint64_t r = 1;
  auto f = [&](Integer& v) {
    v = v * v + c;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  while (g == 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) f(y);
    std::uint64_t k = 0;
    while (k < r && g == 1) {
      ys = y;
      const std::uint64_t lim = std::min(m, r - k);
      for (std::uint64_t i = 0; i < lim; ++i) {
        f(y);
        tmp = abs(x - y);
        q *= tmp;
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += lim;
      if (steps_left <= lim) return 0;
      steps_left -= lim;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      f(ys);
      tmp = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), tmp.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g == n ? Integer(0) : g;
}

}  // namespace

Factorization factor_integer(const Integer& n, const FactorBudget& budget) {
  if (n == 0) throw std::invalid_argument("factor_integer: zero");
  Factorization out;
  out.sign = n < 0 ? -1 : 1;
  Integer m = abs(n);
  std::map<Integer, unsigned> found;

  for (unsigned long p : trial_primes(budget.trial_bound)) {
    if (m == 1) break;
    if (Integer(p) * p > m) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++e;
      }
      found[Integer(p)] += e;
    }
  }

  std::vector<Integer> stack;
  if (m != 1) stack.push_back(m);
  std::vector<Integer> stuck;
  std::uint64_t steps = budget.rho_iterations;
  while (!stack.empty()) {
    Integer v = stack.back();
    stack.pop_back();
    if (v == 1) continue;
    if (is_probable_prime(v)) {
      found[v] += 1;
      continue;
    }
    Integer root;
    if (mpz_perfect_power_p(v.get_mpz_t())) {
      for (unsigned long k = 2, top = mpz_sizeinbase(v.get_mpz_t(), 2); k <= top; ++k) {
        if (mpz_root(root.get_mpz_t(), v.get_mpz_t(), k)) {
          for (unsigned long i = 0; i < k; ++i) stack.push_back(root);
          break;
        }
      }
      if (root != 0) continue;
    }
    Integer d = 0;
    if (mpz_sizeinbase(v.get_mpz_t(), 2) <= budget.max_bits)
      for (unsigned long c = 1; c < 20 && d == 0 && steps > 0; ++c) d = brent(v, c, steps);
    if (d == 0) {
      stuck.push_back(v);
      continue;
    }
    Integer e;
    mpz_divexact(e.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
    stack.push_back(d);
    stack.push_back(e);
  }
  for (auto& [p, e] : found) out.primes.emplace_back(p, e);
  for (auto& s : stuck) out.cofactor *= s;
  return out;
}

}  // namespace arbor
