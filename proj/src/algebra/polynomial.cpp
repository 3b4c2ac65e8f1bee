#include "arbor/algebra.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace arbor {

IntPolynomial::IntPolynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

IntPolynomial IntPolynomial::constant(const Integer& c) { return IntPolynomial(std::vector<Integer>{c}); }

IntPolynomial IntPolynomial::monomial(const Integer& c, std::size_t exponent) {
  std::vector<Integer> v(exponent + 1);
  v[exponent] = c;
  return IntPolynomial(std::move(v));
}

void IntPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Integer IntPolynomial::evaluate(const Integer& x) const {
  Integer acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rational IntPolynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rational(*it);
  acc.canonicalize();
  return acc;
}

IntPolynomial IntPolynomial::operator-() const {
  IntPolynomial r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  normalize();
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  normalize();
  return *this;
}

IntPolynomial& IntPolynomial::operator*=(const Integer& k) {
  if (k == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) c *= k;
  return *this;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& x = a.coeffs_;
  const auto& y = b.coeffs_;
  std::vector<Integer> r(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), x[i].get_mpz_t(), y[j].get_mpz_t());
  }
  return IntPolynomial(std::move(r));
}

namespace {

// Shared by the integer, rational and F2 printers. coeff_text(i) returns the
// absolute value of the coefficient as text and sign(i) its sign.
template <class Sign, class Abs>
std::string render_terms(int degree, char var, Sign sign, Abs abs_text) {
  if (degree == kZeroDegree) return "0";
  std::string out;
  for (int i = degree; i >= 0; --i) {
    int s = sign(i);
    if (s == 0) continue;
    if (out.empty()) {
      if (s < 0) out += "-";
    } else {
      out += s < 0 ? "-" : "+";
    }
    std::string a = abs_text(i);
    if (i == 0) {
      out += a;
    } else {
      if (a != "1") out += a;
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

}  // namespace

std::string IntPolynomial::to_string(char var) const {
  return render_terms(
      degree(), var, [&](int i) { return sgn(coeffs_[i]); },
      [&](int i) { return Integer(abs(coeffs_[i])).get_str(); });
}

std::ostream& operator<<(std::ostream& os, const IntPolynomial& f) { return os << f.to_string(); }

IntPolynomial compose(const IntPolynomial& f, const IntPolynomial& g) {
  IntPolynomial acc;
  const auto& c = f.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * g + IntPolynomial::constant(*it);
  return acc;
}

IntPolynomial derivative(const IntPolynomial& f) {
  const auto& c = f.coefficients();
  if (c.size() <= 1) return {};
  std::vector<Integer> r(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * static_cast<unsigned long>(i);
  return IntPolynomial(std::move(r));
}

Integer content(const IntPolynomial& f) {
  Integer g = 0;
  for (const auto& c : f.coefficients()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPolynomial divexact(const IntPolynomial& f, const Integer& k) {
  std::vector<Integer> r = f.coefficients();
  for (auto& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), k.get_mpz_t());
  return IntPolynomial(std::move(r));
}

IntPolynomial primitive_part(const IntPolynomial& f) {
  if (f.is_zero()) return f;
  Integer g = content(f);
  if (f.leading() < 0) g = -g;
  return g == 1 ? f : divexact(f, g);
}

Integer max_norm(const IntPolynomial& f) {
  Integer m = 0;
  for (const auto& c : f.coefficients())
    if (cmpabs(c, m) > 0) m = abs(c);
  return m;
}

IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw std::invalid_argument("pseudo_remainder: division by zero polynomial");
  if (a.degree() < b.degree()) return a;
  std::vector<Integer> r = a.coefficients();
  const auto& bc = b.coefficients();
  const Integer lb = b.leading();
  const std::size_t db = bc.size() - 1;
  int e = a.degree() - b.degree() + 1;
  Integer q;
  while (!r.empty() && r.size() > db) {
    const std::size_t shift = r.size() - 1 - db;
    q = r.back();
    for (auto& c : r) c *= lb;
    for (std::size_t j = 0; j <= db; ++j) mpz_submul(r[shift + j].get_mpz_t(), q.get_mpz_t(), bc[j].get_mpz_t());
    r.pop_back();
    while (!r.empty() && r.back() == 0) r.pop_back();
    --e;
  }
  Integer scale;
  mpz_pow_ui(scale.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(e));
  IntPolynomial rem(std::move(r));
  return e > 0 ? rem * scale : rem;
}

bool divides(const IntPolynomial& b, const IntPolynomial& a, IntPolynomial* quotient) {
  if (b.is_zero()) throw std::invalid_argument("divides: zero divisor");
  if (a.is_zero()) {
    if (quotient) *quotient = {};
    return true;
  }
  if (a.degree() < b.degree()) return false;
  std::vector<Integer> r = a.coefficients();
  const auto& bc = b.coefficients();
  const std::size_t db = bc.size() - 1;
  const Integer& lb = bc.back();
  std::vector<Integer> q(r.size() - db);
  // quick necessary condition: trailing coefficients
  if (bc[0] != 0 && r[0] != 0 && !mpz_divisible_p(r[0].get_mpz_t(), bc[0].get_mpz_t())) return false;
  for (std::size_t k = q.size(); k-- > 0;) {
    Integer& top = r[k + db];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return false;
    mpz_divexact(q[k].get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    for (std::size_t j = 0; j <= db; ++j) mpz_submul(r[k + j].get_mpz_t(), q[k].get_mpz_t(), bc[j].get_mpz_t());
  }
  for (std::size_t i = 0; i < db; ++i)
    if (r[i] != 0) return false;
  if (quotient) *quotient = IntPolynomial(std::move(q));
  return true;
}

bool is_squarefree(const IntPolynomial& f) {
  if (f.degree() <= 0) return true;
  return gcd(f, derivative(f)).degree() == 0;
}

// ---------------------------------------------------------------- Q[t]

RatPolynomial::RatPolynomial(IntPolynomial numerator, Integer denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_ == 0) throw std::invalid_argument("RatPolynomial: zero denominator");
  normalize();
}

RatPolynomial::RatPolynomial(const Rational& c)
    : num_(IntPolynomial::constant(c.get_num())), den_(c.get_den()) {
  normalize();
}

void RatPolynomial::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    num_ = -num_;
  }
  if (num_.is_zero()) {
    den_ = 1;
    return;
  }
  Integer g = content(num_);
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den_.get_mpz_t());
  if (g != 1) {
    num_ = divexact(num_, g);
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

Rational RatPolynomial::coeff(std::size_t i) const {
  Rational r(num_.coeff(i), den_);
  r.canonicalize();
  return r;
}

Rational RatPolynomial::leading() const {
  Rational r(num_.leading(), den_);
  r.canonicalize();
  return r;
}

Rational RatPolynomial::evaluate(const Rational& x) const {
  Rational r = num_.evaluate(x) / Rational(den_);
  r.canonicalize();
  return r;
}

RatPolynomial operator+(const RatPolynomial& a, const RatPolynomial& b) {
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RatPolynomial operator-(const RatPolynomial& a, const RatPolynomial& b) {
  return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
}

RatPolynomial operator*(const RatPolynomial& a, const RatPolynomial& b) {
  return {a.num_ * b.num_, a.den_ * b.den_};
}

IntPolynomial RatPolynomial::to_integer() const {
  if (den_ != 1) throw std::domain_error("polynomial has non-integer coefficients: " + to_string());
  return num_;
}

std::string RatPolynomial::to_string(char var) const {
  return render_terms(
      degree(), var, [&](int i) { return sgn(num_.coefficients()[i]); },
      [&](int i) {
        Rational c = coeff(static_cast<std::size_t>(i));
        return Rational(abs(c)).get_str();
      });
}

std::ostream& operator<<(std::ostream& os, const RatPolynomial& f) { return os << f.to_string(); }

RatPolynomial compose(const RatPolynomial& f, const RatPolynomial& g) {
  RatPolynomial acc;
  for (int i = f.degree(); i >= 0; --i) acc = acc * g + RatPolynomial(f.coeff(static_cast<std::size_t>(i)));
  return acc;
}

RatPolynomial derivative(const RatPolynomial& f) { return {derivative(f.numerator()), f.denominator()}; }

// ---------------------------------------------------------------- F2[t]

F2Polynomial::F2Polynomial(std::vector<bool> bits) : bits_(std::move(bits)) {
  while (!bits_.empty() && !bits_.back()) bits_.pop_back();
}

std::string F2Polynomial::to_string(char var) const {
  return render_terms(
      degree(), var, [&](int i) { return bits_[i] ? 1 : 0; }, [](int) { return std::string("1"); });
}

F2Polynomial reduce_mod2(const IntPolynomial& f) {
  std::vector<bool> bits;
  bits.reserve(f.coefficients().size());
  for (const auto& c : f.coefficients()) bits.push_back(mpz_odd_p(c.get_mpz_t()) != 0);
  return F2Polynomial(std::move(bits));
}

F2Polynomial derivative(const F2Polynomial& f) {
  if (f.degree() <= 0) return {};
  std::vector<bool> bits(static_cast<std::size_t>(f.degree()));
  for (int i = 1; i <= f.degree(); i += 2) bits[i - 1] = f.bit(static_cast<std::size_t>(i));
  return F2Polynomial(std::move(bits));
}

}  // namespace arbor
