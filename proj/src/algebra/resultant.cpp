// Resultants by the subresultant pseudo-remainder sequence (Cohen, Alg. 3.3.7).

#include "arbor/algebra.hpp"

#include <stdexcept>
#include <utility>

namespace arbor {
namespace {

Integer ipow(const Integer& b, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

}  // namespace

Integer resultant(const IntPolynomial& f, const IntPolynomial& g) {
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant: zero polynomial");
  if (f.degree() == 0) return ipow(f.leading(), static_cast<unsigned long>(g.degree()));
  if (g.degree() == 0) return ipow(g.leading(), static_cast<unsigned long>(f.degree()));

  const Integer a = content(f), b = content(g);
  IntPolynomial A = divexact(f, a), B = divexact(g, b);
  Integer sign = 1;
  Integer t = ipow(a, static_cast<unsigned long>(g.degree())) * ipow(b, static_cast<unsigned long>(f.degree()));
  if (A.degree() < B.degree()) {
    std::swap(A, B);
    if ((A.degree() & 1) && (B.degree() & 1)) sign = -sign;
  }
  Integer G = 1, H = 1;
  while (true) {
    const int delta = A.degree() - B.degree();
    if ((A.degree() & 1) && (B.degree() & 1)) sign = -sign;
    IntPolynomial R = pseudo_remainder(A, B);
    if (R.is_zero()) return 0;
    A = std::move(B);
    B = divexact(R, G * ipow(H, static_cast<unsigned long>(delta)));
    G = A.leading();
    if (delta > 0) {
      Integer num = ipow(G, static_cast<unsigned long>(delta));
      Integer den = ipow(H, static_cast<unsigned long>(delta - 1));
      mpz_divexact(H.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    if (B.degree() == 0) break;
  }
  const unsigned long da = static_cast<unsigned long>(A.degree());
  Integer num = ipow(B.leading(), da);
  Integer den = ipow(H, da - 1);
  Integer h;
  mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return sign * t * h;
}

Rational resultant(const RatPolynomial& f, const RatPolynomial& g) {
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant: zero polynomial");
  Rational r(resultant(f.numerator(), g.numerator()));
  Integer scale = ipow(f.denominator(), static_cast<unsigned long>(g.degree())) *
                  ipow(g.denominator(), static_cast<unsigned long>(f.degree()));
  r /= Rational(scale);
  r.canonicalize();
  return r;
}

Rational discriminant(const RatPolynomial& f) {
  const int d = f.degree();
  if (d < 1) throw std::invalid_argument("discriminant: degree must be at least 1");
  Rational r = resultant(f, derivative(f)) / f.leading();
  if ((static_cast<long>(d) * (d - 1) / 2) & 1) r = -r;
  r.canonicalize();
  return r;
}

Integer discriminant(const IntPolynomial& f) {
  const int d = f.degree();
  if (d < 1) throw std::invalid_argument("discriminant: degree must be at least 1");
  Integer r = resultant(f, derivative(f));
  mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), f.leading().get_mpz_t());
  if ((static_cast<long>(d) * (d - 1) / 2) & 1) r = -r;
  return r;
}

}  // namespace arbor
