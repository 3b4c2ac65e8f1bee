#include "arbor/dynamics.hpp"

#include <stdexcept>

namespace arbor {

const char* eisenstein_case_name(EisensteinCase c) {
  switch (c) {
    case EisensteinCase::Direct: return "Direct";
    case EisensteinCase::Shifted: return "Shifted";
    default: return "Failed";
  }
}

bool is_eisenstein_at_2(const IntPolynomial& f) {
  if (f.degree() < 1) return false;
  if (mpz_even_p(f.leading().get_mpz_t())) return false;
  const auto& c = f.coefficients();
  for (std::size_t i = 0; i + 1 < c.size(); ++i)
    if (mpz_odd_p(c[i].get_mpz_t())) return false;
  return !mpz_divisible_2exp_p(c[0].get_mpz_t(), 2);
}

EisensteinResult eisenstein_stability(const IntPolynomial& f) {
  EisensteinResult out;
  mpz_fdiv_r_ui(out.constant_mod4.get_mpz_t(), f.coeff(0).get_mpz_t(), 4);
  if (out.constant_mod4 == 2) {
    out.tested = f;
    if (is_eisenstein_at_2(f)) out.kind = EisensteinCase::Direct;
  } else if (out.constant_mod4 == 1 || out.constant_mod4 == 3) {
    out.tested = compose(f, IntPolynomial({1, 1}));
    if (is_eisenstein_at_2(out.tested)) out.kind = EisensteinCase::Shifted;
  } else {
    out.tested = f;
  }
  return out;
}

EisensteinResult eisenstein_stability(const GeneratorSet& s, const SequenceCoding& coding, std::size_t n) {
  if (!s.integral() || s.ring != Ring::Rationals) throw std::invalid_argument("eisenstein_stability: integer set required");
  return eisenstein_stability(composition(s, coding, n).to_integer());
}

}  // namespace arbor
