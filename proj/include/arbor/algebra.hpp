#pragma once

// Exact arithmetic substrate: integers and rationals come from GMP, the
// polynomial types below are dense coefficient vectors indexed by exponent.

#include <gmpxx.h>

#include <cstddef>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace arbor {

using Integer = mpz_class;
using Rational = mpq_class;

inline int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

/// Degree reported for the zero polynomial (stands in for minus infinity).
inline constexpr int kZeroDegree = std::numeric_limits<int>::min();

/// Polynomial with arbitrary-precision integer coefficients in one variable.
/// Coefficient i multiplies t^i; there are never trailing zero coefficients.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Integer> coeffs);

  static IntPolynomial constant(const Integer& c);
  static IntPolynomial monomial(const Integer& c, std::size_t exponent);
  static IntPolynomial variable() { return monomial(1, 1); }

  int degree() const { return coeffs_.empty() ? kZeroDegree : static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }

  /// Coefficient of t^i (zero beyond the degree).
  Integer coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Integer(0); }
  const std::vector<Integer>& coefficients() const { return coeffs_; }
  /// Leading coefficient; zero for the zero polynomial.
  Integer leading() const { return coeffs_.empty() ? Integer(0) : coeffs_.back(); }

  Integer evaluate(const Integer& x) const;
  Rational evaluate(const Rational& x) const;

  IntPolynomial operator-() const;
  IntPolynomial& operator+=(const IntPolynomial& o);
  IntPolynomial& operator-=(const IntPolynomial& o);
  IntPolynomial& operator*=(const Integer& k);

  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(IntPolynomial a, const Integer& k) { return a *= k; }
  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string(char var = 't') const;

 private:
  void normalize();
  std::vector<Integer> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const IntPolynomial& f);

/// f(g(t)).
IntPolynomial compose(const IntPolynomial& f, const IntPolynomial& g);
IntPolynomial derivative(const IntPolynomial& f);
/// Nonnegative gcd of the coefficients; zero for the zero polynomial.
Integer content(const IntPolynomial& f);
/// f / content(f), normalized to a positive leading coefficient.
IntPolynomial primitive_part(const IntPolynomial& f);
/// Largest absolute value of a coefficient, |f| = max |a_i|.
Integer max_norm(const IntPolynomial& f);
/// Exact division of every coefficient by k.
IntPolynomial divexact(const IntPolynomial& f, const Integer& k);
/// R with lc(b)^(deg a - deg b + 1) a = q b + R.
IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b);
/// True when b divides a in Z[t]; the quotient is stored when requested.
bool divides(const IntPolynomial& b, const IntPolynomial& a, IntPolynomial* quotient = nullptr);
/// Greatest common divisor in Z[t] with positive leading coefficient.
IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b);
/// True iff gcd(f, f') is constant.
bool is_squarefree(const IntPolynomial& f);

/// Element of Q[t] stored as numerator / denominator in lowest terms.
class RatPolynomial {
 public:
  RatPolynomial() = default;
  RatPolynomial(IntPolynomial numerator, Integer denominator = 1);
  explicit RatPolynomial(const Rational& c);

  const IntPolynomial& numerator() const { return num_; }
  const Integer& denominator() const { return den_; }

  int degree() const { return num_.degree(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant(); }
  Rational coeff(std::size_t i) const;
  Rational leading() const;
  Rational evaluate(const Rational& x) const;

  RatPolynomial operator-() const { return {-num_, den_}; }
  friend RatPolynomial operator+(const RatPolynomial& a, const RatPolynomial& b);
  friend RatPolynomial operator-(const RatPolynomial& a, const RatPolynomial& b);
  friend RatPolynomial operator*(const RatPolynomial& a, const RatPolynomial& b);
  friend bool operator==(const RatPolynomial& a, const RatPolynomial& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Integer polynomial when the denominator is 1; throws otherwise.
  IntPolynomial to_integer() const;
  std::string to_string(char var = 't') const;

 private:
  void normalize();
  IntPolynomial num_;
  Integer den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const RatPolynomial& f);

RatPolynomial compose(const RatPolynomial& f, const RatPolynomial& g);
RatPolynomial derivative(const RatPolynomial& f);

/// Polynomial over the field with two elements.
class F2Polynomial {
 public:
  F2Polynomial() = default;
  explicit F2Polynomial(std::vector<bool> bits);

  int degree() const { return bits_.empty() ? kZeroDegree : static_cast<int>(bits_.size()) - 1; }
  bool is_zero() const { return bits_.empty(); }
  bool is_one() const { return bits_.size() == 1; }
  bool bit(std::size_t i) const { return i < bits_.size() && bits_[i]; }
  friend bool operator==(const F2Polynomial& a, const F2Polynomial& b) { return a.bits_ == b.bits_; }
  std::string to_string(char var = 't') const;

 private:
  std::vector<bool> bits_;
};

F2Polynomial reduce_mod2(const IntPolynomial& f);
F2Polynomial derivative(const F2Polynomial& f);

struct SquarefreeFactor {
  RatPolynomial factor;  // primitive integer polynomial, positive leading coefficient
  unsigned multiplicity;
};

/// f = unit * prod factor^multiplicity with pairwise coprime square-free
/// factors and strictly increasing multiplicities.
struct SquarefreeDecomposition {
  Rational unit;
  std::vector<SquarefreeFactor> factors;
};

/// Yun's algorithm; throws std::invalid_argument on the zero polynomial.
SquarefreeDecomposition squarefree_decomposition(const RatPolynomial& f);

bool is_square(const Rational& q);
bool is_square(const RatPolynomial& f);

/// Whether a is a square in K(sqrt(m)), K = Q or Q(t). Requires m nonzero
/// and not a square in K.
bool square_in_quadratic_extension(const Rational& a, const Rational& m);
bool square_in_quadratic_extension(const RatPolynomial& a, const RatPolynomial& m);

/// Exponent of the prime p in q; throws on q = 0.
long padic_valuation(const Rational& q, const Integer& p);

Integer resultant(const IntPolynomial& f, const IntPolynomial& g);
Rational resultant(const RatPolynomial& f, const RatPolynomial& g);
/// disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f), d = deg f >= 1.
Rational discriminant(const RatPolynomial& f);
Integer discriminant(const IntPolynomial& f);

}  // namespace arbor
