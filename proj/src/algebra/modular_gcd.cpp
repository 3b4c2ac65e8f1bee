// gcd in Z[t] by multi-prime modular reconstruction (Brown style, dense).

#include "arbor/algebra.hpp"

#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace arbor {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using ModPoly = std::vector<u64>;

u64 mul_mod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 pow_mod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 inv_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

// Descending primes below 2^62, generated lazily and shared.
u64 nth_prime(std::size_t i) {
  static std::mutex mu;
  static std::vector<u64> primes;
  std::lock_guard<std::mutex> lock(mu);
  while (primes.size() <= i) {
    Integer c = primes.empty() ? (Integer(1) << 62) - 1 : Integer(primes.back() - 2);
    if (mpz_even_p(c.get_mpz_t())) --c;
    while (mpz_probab_prime_p(c.get_mpz_t(), 40) == 0) c -= 2;
    primes.push_back(c.get_ui());
  }
  return primes[i];
}

u64 reduce(const Integer& c, u64 p) { return mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(p)); }

ModPoly reduce(const IntPolynomial& f, u64 p) {
  ModPoly r;
  r.reserve(f.coefficients().size());
  for (const auto& c : f.coefficients()) r.push_back(reduce(c, p));
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a <- a mod b, b nonzero
void rem_in_place(ModPoly& a, const ModPoly& b, u64 p) {
  const std::size_t db = b.size() - 1;
  const u64 inv = inv_mod(b.back(), p);
  while (!a.empty() && a.size() > db) {
    const u64 q = mul_mod(a.back(), inv, p);
    const std::size_t shift = a.size() - 1 - db;
    if (q) {
      for (std::size_t j = 0; j <= db; ++j) {
        u64 t = mul_mod(q, b[j], p);
        u64& x = a[shift + j];
        x = x >= t ? x - t : x + p - t;
      }
    }
    a.pop_back();
    trim(a);
  }
}

ModPoly monic_gcd(ModPoly a, ModPoly b, u64 p) {
  while (!b.empty()) {
    rem_in_place(a, b, p);
    std::swap(a, b);
  }
  if (!a.empty()) {
    const u64 inv = inv_mod(a.back(), p);
    for (auto& x : a) x = mul_mod(x, inv, p);
  }
  return a;
}

bool mod_divides(const ModPoly& b, ModPoly a, u64 p) {
  if (b.empty()) return a.empty();
  rem_in_place(a, b, p);
  return a.empty();
}

}  // namespace

IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero()) return primitive_part(b) * content(b);
  if (b.is_zero()) return primitive_part(a) * content(a);
  Integer cg = content(a);
  {
    Integer cb = content(b);
    mpz_gcd(cg.get_mpz_t(), cg.get_mpz_t(), cb.get_mpz_t());
  }
  if (a.degree() == 0 || b.degree() == 0) return IntPolynomial::constant(cg);

  const IntPolynomial pa = primitive_part(a);
  const IntPolynomial pb = primitive_part(b);
  Integer h;
  mpz_gcd(h.get_mpz_t(), pa.leading().get_mpz_t(), pb.leading().get_mpz_t());

  std::vector<Integer> acc;  // CRT image, coefficients in [0, modulus)
  Integer modulus = 0;
  int acc_degree = -1;
  IntPolynomial last_candidate;
  bool have_candidate = false;

  for (std::size_t idx = 0;; ++idx) {
    const u64 p = nth_prime(idx);
    if (mpz_divisible_ui_p(h.get_mpz_t(), static_cast<unsigned long>(p))) continue;
    ModPoly ap = reduce(pa, p), bp = reduce(pb, p);
    ModPoly g = monic_gcd(ap, bp, p);
    const int dg = static_cast<int>(g.size()) - 1;
    if (dg == 0) return IntPolynomial::constant(cg);
    if (acc_degree >= 0 && dg > acc_degree) continue;  // unlucky prime
    const u64 hp = reduce(h, p);
    for (auto& x : g) x = mul_mod(x, hp, p);
    if (acc_degree < 0 || dg < acc_degree) {
      acc_degree = dg;
      acc.resize(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) acc[i] = Integer(static_cast<unsigned long>(g[i]));
      modulus = Integer(static_cast<unsigned long>(p));
      have_candidate = false;
    } else {
      // combine: x = acc + modulus * ((g - acc) * modulus^{-1} mod p)
      const u64 minv = inv_mod(reduce(modulus, p), p);
      for (std::size_t i = 0; i < g.size(); ++i) {
        u64 ai = reduce(acc[i], p);
        u64 diff = g[i] >= ai ? g[i] - ai : g[i] + p - ai;
        u64 k = mul_mod(diff, minv, p);
        acc[i] += modulus * static_cast<unsigned long>(k);
      }
      modulus *= static_cast<unsigned long>(p);
    }

    std::vector<Integer> sym(acc.size());
    const Integer half = modulus >> 1;
    for (std::size_t i = 0; i < acc.size(); ++i) sym[i] = acc[i] > half ? acc[i] - modulus : acc[i];
    IntPolynomial cand = primitive_part(IntPolynomial(std::move(sym)));
    // a candidate that survives one more prime unchanged is tested exactly
    if (have_candidate && cand == last_candidate && cand.degree() == acc_degree) {
      bool ok = true;
      // cheap screen modulo the next usable prime before the exact test
      for (std::size_t j = idx + 1; ok; ++j) {
        const u64 q = nth_prime(j);
        if (mpz_divisible_ui_p(h.get_mpz_t(), static_cast<unsigned long>(q))) continue;
        ModPoly cq = reduce(cand, q);
        ok = mod_divides(cq, reduce(pa, q), q) && mod_divides(cq, reduce(pb, q), q);
        break;
      }
      if (ok && divides(cand, pa) && divides(cand, pb)) return cand * cg;
    }
    last_candidate = std::move(cand);
    have_candidate = true;
  }
}

}  // namespace arbor
