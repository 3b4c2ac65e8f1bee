#include "arbor/prime_density.hpp"

#include "arbor/factor.hpp"
#include "arbor/galois_process.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>

namespace arbor {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr std::size_t kMaxExactBits = std::size_t(1) << 20;
constexpr std::size_t kPrintedExactLevels = 12;

Rational step(const Rational& x, const Rational& c) {
  Rational y = x * x + c;
  y.canonicalize();
  return y;
}

std::uint64_t mod_p(const Integer& v, std::uint64_t p) {
  return mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(p));
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  Integer r, A(std::to_string(a)), P(std::to_string(p));
  mpz_invert(r.get_mpz_t(), A.get_mpz_t(), P.get_mpz_t());
  return r.get_ui();
}

std::uint64_t reduce(const Rational& q, std::uint64_t p) {
  const std::uint64_t d = mod_p(q.get_den(), p);
  return mod_p(q.get_num(), p) * inverse_mod(d, p) % p;
}

std::size_t bits(const Rational& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

std::string decimal(const Rational& q, unsigned places) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
  Integer v = (q.get_num() * scale * 2 + q.get_den()) / (q.get_den() * 2);
  std::string digits = v.get_str();
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
  return digits.substr(0, digits.size() - places) + "." + digits.substr(digits.size() - places);
}

}  // namespace

const char* zero_status_name(ZeroStatus z) {
  switch (z) {
    case ZeroStatus::Certified: return "certified";
    case ZeroStatus::Periodic: return "periodic";
    default: return "cap_exhausted";
  }
}

// gamma_n(a0) for n = a + kL + r equals Pref(delta_{r,k}) with
// delta_{r,k+1} = Cyc(delta_{r,k}); each residue class is one orbit of Cyc.
OrbitScanner::OrbitScanner(const GeneratorSet& s, const SequenceCoding& coding, const Rational& a0,
                           std::size_t zero_cap, std::uint64_t visit_cap)
    : set_(s), coding_(coding), a0_(a0), zero_cap_(zero_cap), visit_cap_(visit_cap) {
  if (s.ring != Ring::Rationals) throw std::invalid_argument("prime scans need constant coefficients (ring q)");
  s.validate();
  coding.validate(s.size());
  a_ = coding.prefix.size();
  L_ = coding.cycle.size();
  std::vector<Rational> c;
  for (const auto& ci : s.c) c.push_back(ci.coeff(0));

  std::set<Integer> bad;
  auto add_bad = [&](const Integer& den) {
    if (den == 1) return;
    for (const auto& [q, e] : factor_integer(den).primes) bad.insert(q);
  };
  add_bad(a0.get_den());
  for (const auto& ci : c) add_bad(ci.get_den());
  bad_primes_.assign(bad.begin(), bad.end());

  bool integral = true;
  Rational R = 1;
  for (const auto& ci : c) {
    if (ci.get_den() != 1) integral = false;
    R = std::max(R, Rational(1 + abs(ci)));
  }
  auto pref = [&](Rational x) {
    for (std::size_t i = a_; i-- > 0;) x = step(x, c[coding_.prefix[i]]);
    return x;
  };
  auto cyc = [&](Rational x, std::size_t count) {
    for (std::size_t i = count; i-- > 0;) x = step(x, c[coding_.cycle[i]]);
    return x;
  };

  for (std::size_t n = 0; n <= a_; ++n) {
    Rational x = a0;
    for (std::size_t i = n; i-- > 0;) x = step(x, c[coding_.prefix[i]]);
    head_.push_back(x);
  }

  residues_.resize(L_);
  for (std::size_t r = 0; r < L_; ++r) {
    Residue& res = residues_[r];
    std::map<Rational, std::size_t> seen;
    Rational d = cyc(a0, r);
    bool decided = false;
    for (std::size_t k = 0; k <= zero_cap_; ++k) {
      // |x| > R is carried off by every map and never returns to 0; with
      // integral c a non-integer stays a non-integer
      if (abs(d) > R || (integral && d.get_den() != 1)) {
        res.exact.push_back(d);
        res.zero.push_back(false);
        res.safe_from = k;
        decided = true;
        break;
      }
      if (auto it = seen.find(d); it != seen.end()) {
        res.period_start = it->second;
        res.period = k - it->second;
        decided = true;
        break;
      }
      if (bits(d) > kMaxExactBits) break;
      seen.emplace(d, k);
      res.exact.push_back(d);
      res.zero.push_back(pref(d) == 0);
      d = cyc(d, L_);
    }
    if (res.period) {
      zero_status_ = std::max(zero_status_, ZeroStatus::Periodic);
    } else if (!decided) {
      zero_status_ = ZeroStatus::CapExhausted;
      // later terms are treated as nonzero; the walk resumes from the last exact value
      if (res.exact.empty()) {
        res.exact.push_back(d);
        res.zero.push_back(false);
      }
      res.safe_from = res.exact.size() - 1;
    }
  }
}

bool OrbitScanner::excluded(std::uint64_t p) const {
  const Integer P(std::to_string(p));
  return std::find(bad_primes_.begin(), bad_primes_.end(), P) != bad_primes_.end();
}

bool OrbitScanner::exact_zero(std::size_t r, std::size_t k) const {
  const Residue& res = residues_[r];
  if (res.period) {
    if (k >= *res.period_start) k = *res.period_start + (k - *res.period_start) % *res.period;
    return res.zero[k];
  }
  return k < res.zero.size() && res.zero[k];
}

std::vector<std::size_t> OrbitScanner::zero_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n <= a_; ++n)
    if (head_[n] == 0) out.push_back(n);
  for (std::size_t r = 0; r < L_; ++r)
    for (std::size_t k = r == 0 ? 1 : 0; index(r, k) <= zero_cap_; ++k)
      if (exact_zero(r, k)) out.push_back(index(r, k));
  std::sort(out.begin(), out.end());
  return out;
}

OrbitScanner::Result OrbitScanner::test(std::uint64_t p) const {
  if (p < 2) throw std::invalid_argument("prime expected");
  if (p > std::numeric_limits<std::uint32_t>::max()) throw std::invalid_argument("prime too large for the scanner");
  Result out;
  if (excluded(p)) {
    out.status = Status::Excluded;
    return out;
  }
  for (std::size_t n = 0; n <= a_; ++n) {
    if (head_[n] != 0 && reduce(head_[n], p) == 0) {
      out.status = Status::Yes;
      out.n = n;
      return out;
    }
  }
  std::vector<std::uint64_t> c;
  for (const auto& ci : set_.c) c.push_back(reduce(ci.coeff(0), p));
  auto f = [&](std::uint64_t x, std::size_t idx) { return (x * x + c[idx]) % p; };
  auto pref = [&](std::uint64_t x) {
    for (std::size_t i = a_; i-- > 0;) x = f(x, coding_.prefix[i]);
    return x;
  };
  auto cyc = [&](std::uint64_t x) {
    for (std::size_t i = L_; i-- > 0;) x = f(x, coding_.cycle[i]);
    return x;
  };

  std::size_t best = kNone;
  bool capped = false;
  std::uint64_t visits = 0;
  for (std::size_t r = 0; r < L_; ++r) {
    const Residue& res = residues_[r];
    const std::size_t k0 = r == 0 ? 1 : 0;
    auto hit = [&](std::uint64_t x, std::size_t k) { return pref(x) == 0 && !exact_zero(r, k); };
    auto record = [&](std::size_t k) { best = std::min(best, index(r, k)); };
    if (res.period) {
      const std::size_t end = *res.period_start + *res.period + k0;
      for (std::size_t k = k0; k < end && index(r, k) < best; ++k) {
        const std::size_t kk = k < res.exact.size() ? k : *res.period_start + (k - *res.period_start) % *res.period;
        if (hit(reduce(res.exact[kk], p), k)) {
          record(k);
          break;
        }
      }
      continue;
    }
    bool found = false;
    for (std::size_t k = k0; k < res.safe_from && index(r, k) < best; ++k) {
      if (hit(reduce(res.exact[k], p), k)) {
        record(k);
        found = true;
        break;
      }
    }
    if (found) continue;
    // Brent's cycle walk over delta mod p; every state of the rho is checked
    std::size_t k = std::max(k0, res.safe_from);
    std::uint64_t x = reduce(res.exact[res.safe_from], p);
    for (std::size_t j = res.safe_from; j < k; ++j) x = cyc(x);
    if (index(r, k) >= best) continue;
    if (hit(x, k)) {
      record(k);
      continue;
    }
    std::uint64_t tortoise = x, power = 1, lam = 0;
    for (;;) {
      x = cyc(x);
      ++k;
      if (++visits > visit_cap_) {
        capped = true;
        break;
      }
      if (index(r, k) >= best) break;
      if (hit(x, k)) {
        record(k);
        break;
      }
      if (x == tortoise) break;
      if (++lam == power) {
        tortoise = x;
        power *= 2;
        lam = 0;
      }
    }
  }
  if (best != kNone) {
    out.status = Status::Yes;
    out.n = best;
  } else {
    out.status = capped ? Status::Capped : Status::No;
  }
  return out;
}

OrbitScanner::Result prime_divides_orbit(std::uint64_t p, const GeneratorSet& s, const SequenceCoding& coding,
                                         const Rational& a0, std::size_t zero_cap) {
  return OrbitScanner(s, coding, a0, zero_cap).test(p);
}

bool PrimeScanReport::strictly_decreasing() const {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i].ratio < rows[i - 1].ratio)) return false;
  return !rows.empty();
}

PrimeScanReport density_profile(const GeneratorSet& s, const SequenceCoding& coding, const Rational& a0,
                                const std::vector<std::uint64_t>& cutoffs, const ScanOptions& opt) {
  if (cutoffs.empty()) throw std::invalid_argument("density_profile: no cutoffs");
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    if (cutoffs[i] < 2) throw std::invalid_argument("density_profile: cutoffs must be at least 2");
    if (i && cutoffs[i] <= cutoffs[i - 1]) throw std::invalid_argument("density_profile: cutoffs must increase");
  }
  if (cutoffs.back() > opt.max_cutoff)
    throw std::invalid_argument("density_profile: cutoff " + std::to_string(cutoffs.back()) + " exceeds the budget " +
                                std::to_string(opt.max_cutoff));
  const OrbitScanner scanner(s, coding, a0, opt.zero_cap, opt.visit_cap);
  const auto primes = primes_up_to(static_cast<std::uint32_t>(cutoffs.back()));
  std::vector<OrbitScanner::Status> status(primes.size());

  constexpr std::size_t kChunk = 1024;
  const std::size_t chunks = (primes.size() + kChunk - 1) / kChunk;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t ch; (ch = next++) < chunks;)
      for (std::size_t i = ch * kChunk; i < std::min(primes.size(), (ch + 1) * kChunk); ++i)
        status[i] = scanner.test(primes[i]).status;
  };
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(chunks, 1)));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work);
  for (auto& t : pool) t.join();

  PrimeScanReport rep;
  rep.set = s.to_string();
  rep.coding = coding.to_string();
  rep.a0 = a0.get_str();
  rep.zero_status = scanner.zero_status();
  rep.zero_indices = scanner.zero_indices();
  std::size_t i = 0;
  std::uint64_t in_p = 0;
  for (std::uint64_t x : cutoffs) {
    for (; i < primes.size() && primes[i] <= x; ++i) {
      switch (status[i]) {
        case OrbitScanner::Status::Yes: ++in_p; break;
        case OrbitScanner::Status::Excluded: rep.excluded.push_back(primes[i]); break;
        case OrbitScanner::Status::Capped: rep.capped.push_back(primes[i]); break;
        default: break;
      }
    }
    DensityRow row;
    row.x = x;
    row.in_p = in_p;
    row.pi_x = i;
    row.ratio = i ? Rational(Integer(std::to_string(in_p)), Integer(std::to_string(i))) : Rational(0);
    row.ratio.canonicalize();
    rep.rows.push_back(row);
  }
  return rep;
}

void write_csv(std::ostream& os, const PrimeScanReport& r) {
  os << "x,in_P_count,pi_x,ratio_decimal_12dp\n";
  for (const auto& row : r.rows) os << row.x << ',' << row.in_p << ',' << row.pi_x << ',' << decimal(row.ratio, 12) << '\n';
}

nlohmann::json to_json(const PrimeScanReport& r) {
  using nlohmann::json;
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"x", row.x},
                    {"in_P_count", row.in_p},
                    {"pi_x", row.pi_x},
                    {"ratio", row.ratio.get_str()},
                    {"ratio_decimal", decimal(row.ratio, 12)}});
  return {{"set", r.set},
          {"coding", r.coding},
          {"a0", r.a0},
          {"rows", rows},
          {"excluded_primes", r.excluded},
          {"capped_primes", r.capped},
          {"zero_status", zero_status_name(r.zero_status)},
          {"zero_indices", r.zero_indices},
          {"strictly_decreasing", r.strictly_decreasing()}};
}

FppComparison fpp_comparison(const GeneratorSet& s, const SequenceCoding& coding, const Rational& a0, unsigned depth,
                             std::uint64_t cutoff, const ScanOptions& opt) {
  if (depth < 1) throw std::invalid_argument("fpp_comparison: depth must be at least 1");
  FppComparison out;
  out.cutoff = cutoff;
  out.ratio = density_profile(s, coding, a0, {cutoff}, opt).rows.front().ratio;
  for (const auto& e : fpp_enclosures(depth)) {
    out.fpp_lo.push_back(e.lo);
    out.fpp_hi.push_back(e.hi);
  }
  return out;
}

nlohmann::json to_json(const FppComparison& c) {
  using nlohmann::json;
  json levels = json::array();
  for (std::size_t i = 0; i < c.fpp_lo.size(); ++i) {
    json l = {{"n", i + 1}, {"fpp_decimal", decimal(c.fpp_hi[i], 12)}};
    if (c.fpp_lo[i] == c.fpp_hi[i] && i + 1 <= kPrintedExactLevels) l["fpp"] = c.fpp_lo[i].get_str();
    levels.push_back(std::move(l));
  }
  return {{"cutoff", c.cutoff}, {"ratio", c.ratio.get_str()}, {"ratio_decimal", decimal(c.ratio, 12)}, {"fpp", levels}};
}

}  // namespace arbor
