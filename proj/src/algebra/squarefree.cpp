#include "arbor/algebra.hpp"

#include <stdexcept>

namespace arbor {
namespace {

IntPolynomial exact_quotient(const IntPolynomial& a, const IntPolynomial& b) {
  IntPolynomial q;
  if (!divides(b, a, &q)) throw std::logic_error("squarefree: inexact division");
  return q;
}

}  // namespace

// Yun's algorithm run entirely in Z[t]. Every divisor is primitive, so each
// quotient of a Z[t] element by it stays in Z[t] (Gauss).
SquarefreeDecomposition squarefree_decomposition(const RatPolynomial& f) {
  if (f.is_zero()) throw std::invalid_argument("squarefree_decomposition: zero polynomial");
  SquarefreeDecomposition out;
  out.unit = f.leading();
  if (f.degree() == 0) return out;

  const IntPolynomial F = primitive_part(f.numerator());
  const IntPolynomial dF = derivative(F);
  IntPolynomial a = primitive_part(gcd(F, dF));
  IntPolynomial b = exact_quotient(F, a);
  IntPolynomial c = exact_quotient(dF, a);
  IntPolynomial d = c - derivative(b);
  Integer lc_product = 1;
  for (unsigned i = 1; b.degree() > 0; ++i) {
    a = primitive_part(gcd(b, d));
    b = exact_quotient(b, a);
    c = exact_quotient(d, a);
    d = c - derivative(b);
    if (a.degree() > 0) {
      out.factors.push_back({RatPolynomial(a), i});
      Integer l;
      mpz_pow_ui(l.get_mpz_t(), a.leading().get_mpz_t(), i);
      lc_product *= l;
    }
  }
  out.unit = f.leading() / Rational(lc_product);
  out.unit.canonicalize();
  return out;
}

bool is_square(const Rational& q) {
  if (q < 0) return false;
  return mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
}

bool is_square(const RatPolynomial& f) {
  if (f.degree() <= 0) return is_square(f.leading());
  if (f.degree() & 1) return false;
  if (!is_square(f.leading())) return false;
  auto dec = squarefree_decomposition(f);
  for (const auto& fac : dec.factors)
    if (fac.multiplicity & 1) return false;
  return is_square(dec.unit);
}

bool square_in_quadratic_extension(const Rational& a, const Rational& m) {
  if (m == 0 || is_square(m)) throw std::invalid_argument("square_in_quadratic_extension: m must be a nonzero non-square");
  return is_square(a) || is_square(Rational(a * m));
}

bool square_in_quadratic_extension(const RatPolynomial& a, const RatPolynomial& m) {
  if (m.is_zero() || is_square(m))
    throw std::invalid_argument("square_in_quadratic_extension: m must be a nonzero non-square");
  return is_square(a) || is_square(a * m);
}

long padic_valuation(const Rational& q, const Integer& p) {
  if (q == 0) throw std::invalid_argument("padic_valuation: zero has infinite valuation");
  if (p < 2) throw std::invalid_argument("padic_valuation: p must be prime");
  Integer r;
  long vn = static_cast<long>(mpz_remove(r.get_mpz_t(), q.get_num_mpz_t(), p.get_mpz_t()));
  long vd = static_cast<long>(mpz_remove(r.get_mpz_t(), q.get_den_mpz_t(), p.get_mpz_t()));
  return vn - vd;
}

}  // namespace arbor
