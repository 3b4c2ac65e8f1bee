#include "arbor/census.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

namespace arbor {

namespace {

Integer power(const Integer& b, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

Rational power(const Rational& b, unsigned long e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), b.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), b.get_den_mpz_t(), e);
  r.canonicalize();
  return r;
}

Integer binomial(const Integer& n, unsigned long k) {
  if (n < 0) throw std::invalid_argument("binomial: negative argument");
  Integer r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

Rational ratio(const Integer& a, const Integer& b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

bool odd(long v) { return v % 2 != 0; }

// a_i even for odd i in [3, hi]
bool odd_indices_even(const std::vector<long>& a, std::size_t hi) {
  for (std::size_t i = 3; i <= hi && i < a.size(); i += 2)
    if (odd(a[i])) return false;
  return true;
}

}  // namespace

Integer CoefficientBox::cardinality() const {
  return power(Integer(2 * B + 1), monic ? d : d + 1);
}

void CoefficientBox::validate() const {
  if (d < 1) throw std::invalid_argument("box degree must be at least 1");
  if (B < 1) throw std::invalid_argument("box bound must be at least 1");
}

const char* parity_property_name(ParityProperty p) {
  switch (p) {
    case ParityProperty::StarEven: return "StarEven";
    case ParityProperty::OddDerivative: return "OddDerivative";
    case ParityProperty::OddLeading: return "OddLeading";
    default: return "MonicDerivative";
  }
}

const char* bound_variant_name(BoundVariant v) {
  switch (v) {
    case BoundVariant::Even: return "even";
    case BoundVariant::Odd: return "odd";
    default: return "monic";
  }
}

BoundVariant parse_bound_variant(const std::string& s) {
  if (s == "even") return BoundVariant::Even;
  if (s == "odd") return BoundVariant::Odd;
  if (s == "monic") return BoundVariant::Monic;
  throw std::invalid_argument("unknown variant '" + s + "' (even, odd, monic)");
}

Integer odd_in_range(unsigned long B) { return Integer(2 * ((B + 1) / 2)); }
Integer even_in_range(unsigned long B) { return Integer(2 * B + 1) - odd_in_range(B); }

Rational r_d(unsigned d) {
  if (d < 1) throw std::invalid_argument("r_d: d must be at least 1");
  const unsigned e = d % 2 == 0 ? d / 2 + 1 : (d + 1) / 2;
  return Rational(1, power(Integer(2), e));
}

bool satisfies(ParityProperty p, const std::vector<long>& a) {
  if (a.size() < 2) throw std::invalid_argument("satisfies: need a_0..a_d with d >= 1");
  const std::size_t d = a.size() - 1;
  switch (p) {
    case ParityProperty::StarEven: return odd(a[d]) && odd(a[1]) && odd_indices_even(a, d - 1);
    case ParityProperty::OddDerivative: return odd(a[1]) && odd_indices_even(a, d);
    case ParityProperty::OddLeading: return odd(a[d]);
    default: return a[d] == 1 && odd(a[1]) && odd_indices_even(a, d - 1);
  }
}

void check_property(const CoefficientBox& box, ParityProperty p) {
  box.validate();
  const bool even = box.d % 2 == 0;
  bool ok = false;
  switch (p) {
    case ParityProperty::StarEven: ok = even && !box.monic; break;
    case ParityProperty::OddDerivative:
    case ParityProperty::OddLeading: ok = !even && !box.monic; break;
    case ParityProperty::MonicDerivative: ok = even && box.monic; break;
  }
  if (!ok)
    throw std::invalid_argument(std::string(parity_property_name(p)) + " does not apply to a " +
                                (box.monic ? "monic " : "") + "box of degree " + std::to_string(box.d));
}

unsigned constrained_coefficients(unsigned d, ParityProperty p) {
  switch (p) {
    case ParityProperty::StarEven: return d / 2 + 1;
    case ParityProperty::OddDerivative: return (d + 1) / 2;
    case ParityProperty::OddLeading: return 1;
    default: return d / 2;
  }
}

Rational limiting_fraction(unsigned d, ParityProperty p) {
  return Rational(1, power(Integer(2), constrained_coefficients(d, p)));
}

Integer count_closed_form(const CoefficientBox& box, ParityProperty p) {
  check_property(box, p);
  const Integer x = 2 * box.B + 1, o = odd_in_range(box.B), e = even_in_range(box.B);
  const unsigned d = box.d;
  switch (p) {
    case ParityProperty::StarEven: return o * o * power(e, d / 2 - 1) * power(x, d / 2);
    case ParityProperty::OddDerivative: return o * power(e, (d - 1) / 2) * power(x, (d + 1) / 2);
    case ParityProperty::OddLeading: return o * power(x, d);
    default: return o * power(e, d / 2 - 1) * power(x, d / 2);
  }
}

std::optional<Integer> count_enumerated(const CoefficientBox& box, ParityProperty p, std::uint64_t limit,
                                        unsigned threads) {
  check_property(box, p);
  if (box.cardinality() > Integer(std::to_string(limit))) return std::nullopt;
  const long B = static_cast<long>(box.B);
  const std::size_t free_len = box.monic ? box.d : box.d + 1;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(2 * B + 1));

  // a_0 is split across workers; the rest is an odometer over [-B, B]
  std::atomic<std::uint64_t> total{0};
  auto work = [&](unsigned w) {
    std::uint64_t local = 0;
    std::vector<long> a(box.d + 1, -B);
    if (box.monic) a[box.d] = 1;
    for (long a0 = -B + static_cast<long>(w); a0 <= B; a0 += static_cast<long>(threads)) {
      a[0] = a0;
      for (std::size_t i = 1; i < free_len; ++i) a[i] = -B;
      for (;;) {
        if (satisfies(p, a)) ++local;
        std::size_t i = 1;
        while (i < free_len && a[i] == B) a[i++] = -B;
        if (i >= free_len) break;
        ++a[i];
      }
    }
    total += local;
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  for (auto& t : pool) t.join();
  return Integer(std::to_string(total.load()));
}

PropertyCount count_property(const CoefficientBox& box, ParityProperty p, std::uint64_t limit) {
  PropertyCount c;
  c.closed_form = count_closed_form(box, p);
  c.enumerated = count_enumerated(box, p, limit);
  if (!c.agree())
    throw std::logic_error("count_property: closed form " + c.closed_form.get_str() + " != enumeration " +
                           c.enumerated->get_str());
  return c;
}

Rational bound_formula(unsigned d, unsigned s, BoundVariant v) {
  if (s < 1) throw std::invalid_argument("bound_formula: s must be at least 1");
  const bool even = d % 2 == 0;
  const Rational one(1), half(1, 2);
  Rational out;
  switch (v) {
    case BoundVariant::Even:
      if (!even || d == 0) throw std::invalid_argument("even bound needs even d >= 2");
      out = one - power(Rational(one - r_d(d)), s);
      break;
    case BoundVariant::Odd: {
      if (even) throw std::invalid_argument("odd bound needs odd d");
      const Rational r = r_d(d);
      out = one - power(Rational(one - r), s) - power(half, s) + power(Rational(one - r - half), s);
      break;
    }
    case BoundVariant::Monic:
      if (!even || d == 0) throw std::invalid_argument("monic bound needs even d >= 2");
      out = one - power(Rational(one - power(half, d / 2)), s);
      break;
  }
  out.canonicalize();
  return out;
}

Rational presence_fraction(const CoefficientBox& box, ParityProperty p, unsigned s) {
  if (s < 1) throw std::invalid_argument("presence_fraction: s must be at least 1");
  const Integer T = box.cardinality(), k = count_closed_form(box, p);
  const Integer all = binomial(T, s);
  return ratio(all - binomial(T - k, s), all);
}

Rational exact_set_fraction(unsigned d, unsigned s, unsigned long B, BoundVariant v) {
  if (s < 1) throw std::invalid_argument("exact_set_fraction: s must be at least 1");
  switch (v) {
    case BoundVariant::Even: return presence_fraction({d, B, false}, ParityProperty::StarEven, s);
    case BoundVariant::Monic: return presence_fraction({d, B, true}, ParityProperty::MonicDerivative, s);
    case BoundVariant::Odd: break;
  }
  const CoefficientBox box{d, B, false};
  const Integer T = box.cardinality();
  const Integer kI = count_closed_form(box, ParityProperty::OddDerivative);
  const Integer kII = count_closed_form(box, ParityProperty::OddLeading);
  // (I) and (II) share exactly the tuples with a_1 odd when d = 1 and none otherwise
  const Integer both = d == 1 ? kI : Integer(0);
  const Integer all = binomial(T, s);
  const Integer hits = all - binomial(T - kI, s) - binomial(T - kII, s) + binomial(T - kI - kII + both, s);
  return ratio(hits, all);
}

CensusReport convergence_experiment(unsigned d, unsigned s, const std::vector<unsigned long>& Bs, BoundVariant v) {
  if (Bs.empty()) throw std::invalid_argument("convergence_experiment: empty B list");
  for (std::size_t i = 1; i < Bs.size(); ++i)
    if (Bs[i] <= Bs[i - 1]) throw std::invalid_argument("convergence_experiment: B list must increase");
  CensusReport r;
  r.d = d;
  r.s = s;
  r.variant = v;
  r.bound = bound_formula(d, s, v);
  for (unsigned long B : Bs) {
    CensusRow row;
    row.B = B;
    row.fraction = exact_set_fraction(d, s, B, v);
    row.deviation = row.fraction - r.bound;
    r.rows.push_back(row);
  }
  return r;
}

void write_csv(std::ostream& os, const CensusReport& r) {
  os << "d,s,B,fraction_num,fraction_den,bound_num,bound_den,deviation\n";
  for (const auto& row : r.rows)
    os << r.d << ',' << r.s << ',' << row.B << ',' << row.fraction.get_num() << ',' << row.fraction.get_den() << ','
       << r.bound.get_num() << ',' << r.bound.get_den() << ',' << row.deviation.get_str() << '\n';
}

}  // namespace arbor
