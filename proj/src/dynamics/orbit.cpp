#include "arbor/dynamics.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace arbor {

namespace {

RatPolynomial apply_map(const RatPolynomial& z, const RatPolynomial& c) { return z * z + c; }

// theta_lo o ... o theta_hi applied to z, innermost first.
RatPolynomial apply_range(const GeneratorSet& s, const std::vector<std::size_t>& idx, std::size_t count,
                          RatPolynomial z) {
  for (std::size_t i = count; i-- > 0;) z = apply_map(z, s.c[idx[i]]);
  return z;
}

}  // namespace

const char* orbit_kind_name(OrbitKind k) {
  switch (k) {
    case OrbitKind::Closed: return "Closed";
    case OrbitKind::Escaping: return "Escaping";
    default: return "Unknown";
  }
}

const char* answer_name(Answer a) {
  switch (a) {
    case Answer::Yes: return "Yes";
    case Answer::No: return "No";
    default: return "Unknown";
  }
}

RatPolynomial critical_value_direct(const GeneratorSet& s, const SequenceCoding& coding, std::size_t n) {
  RatPolynomial z;
  for (std::size_t m = n; m >= 1; --m) z = apply_map(z, s.c[coding.at(m)]);
  return z;
}

// With a = |prefix|, L = |cycle| and n = a + kL + r (0 <= r < L),
//   gamma_n = Pref o Cyc^k o Part_r,
// so delta_{r,k} = Cyc^k(Part_r(0)) obeys delta_{r,k+1} = Cyc(delta_{r,k})
// and gamma_n(0) = Pref(delta_{r,k}).
std::vector<RatPolynomial> critical_orbit(const GeneratorSet& s, const SequenceCoding& coding, std::size_t n,
                                          std::size_t max_bits) {
  if (n == 0) throw std::invalid_argument("critical_orbit: n must be at least 1");
  s.validate();
  coding.validate(s.size());
  std::vector<RatPolynomial> out;
  out.reserve(n);
  const std::size_t a = coding.prefix.size(), L = coding.cycle.size();
  auto too_big = [&](const RatPolynomial& z) {
    if (max_bits == 0) return false;
    for (const auto& c : z.numerator().coefficients())
      if (mpz_sizeinbase(c.get_mpz_t(), 2) > max_bits) return true;
    return mpz_sizeinbase(z.denominator().get_mpz_t(), 2) > max_bits;
  };
  for (std::size_t m = 1; m <= std::min(n, a); ++m) {
    RatPolynomial z;
    for (std::size_t i = m; i-- > 0;) z = apply_map(z, s.c[coding.prefix[i]]);
    if (too_big(z)) return out;
    out.push_back(std::move(z));
  }
  std::vector<RatPolynomial> delta(L);
  for (std::size_t m = a + 1; m <= n; ++m) {
    const std::size_t r = (m - a) % L, k = (m - a) / L;
    if (k == 0)
      delta[r] = apply_range(s, coding.cycle, r, RatPolynomial());
    else
      delta[r] = apply_range(s, coding.cycle, L, delta[r]);
    RatPolynomial z = apply_range(s, coding.prefix, a, delta[r]);
    if (too_big(z)) return out;
    out.push_back(std::move(z));
  }
  return out;
}

RatPolynomial composition(const GeneratorSet& s, const SequenceCoding& coding, std::size_t n) {
  if (s.ring != Ring::Rationals) throw std::invalid_argument("composition: needs constant coefficients");
  RatPolynomial z(IntPolynomial::variable());
  for (std::size_t m = n; m >= 1; --m) z = apply_map(z, s.c[coding.at(m)]);
  return z;
}

bool escape_criterion(const std::vector<Integer>& c) {
  Integer m = 0;
  for (const auto& v : c) m = std::max(m, Integer(abs(v)));
  for (const auto& ci : c)
    for (const auto& cj : c)
      if (cmpabs(Integer(ci * ci + cj), m) <= 0) return false;
  return true;
}

std::optional<Integer> escape_radius(const IntPolynomial& f) {
  if (f.degree() < 2) return std::nullopt;
  Integer r = 1;
  for (int i = 0; i < f.degree(); ++i) r += abs(f.coeff(static_cast<std::size_t>(i)));
  return r;
}

// ---------------------------------------------------------------- Z

OrbitStatus<Integer> semigroup_orbit(const MapSet& s, const Integer& p, const OrbitCaps& caps) {
  if (caps.size_cap == 0) throw std::invalid_argument("semigroup_orbit: size cap must be positive");
  std::optional<Integer> radius;
  bool escapable = !s.maps.empty();
  for (const auto& f : s.maps) {
    auto r = escape_radius(f);
    if (!r) {
      escapable = false;
      break;
    }
    if (!radius || *r > *radius) radius = r;
  }
  const Integer H = escapable ? std::max(*radius, caps.height_cap) : caps.height_cap;

  OrbitStatus<Integer> st;
  std::set<Integer> visited{p};
  std::vector<Integer> frontier{p};
  bool prev_high = false;
  Integer prev_min;
  for (std::size_t level = 0;; ++level) {
    st.level = level;
    Integer mn = abs(frontier.front());
    bool high = escapable;
    for (const auto& x : frontier) {
      if (cmpabs(x, mn) < 0) mn = abs(x);
      if (cmpabs(x, H) <= 0) high = false;
    }
    if (prev_high && high && mn > prev_min) {
      st.kind = OrbitKind::Escaping;
      st.points.assign(visited.begin(), visited.end());
      return st;
    }
    std::vector<Integer> next;
    for (const auto& x : frontier) {
      for (const auto& f : s.maps) {
        Integer y = f.evaluate(x);
        if (mpz_sizeinbase(y.get_mpz_t(), 2) > caps.max_bits) {
          st.points.assign(visited.begin(), visited.end());
          return st;
        }
        if (visited.insert(y).second) next.push_back(std::move(y));
      }
    }
    if (next.empty()) {
      st.kind = OrbitKind::Closed;
      st.points.assign(visited.begin(), visited.end());
      return st;
    }
    if (visited.size() > caps.size_cap) {
      st.points.assign(visited.begin(), visited.end());
      return st;
    }
    prev_high = high;
    prev_min = mn;
    frontier = std::move(next);
  }
}

// ---------------------------------------------------------------- Z[t]

namespace {

struct PolyLess {
  bool operator()(const IntPolynomial& a, const IntPolynomial& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    const auto& x = a.coefficients();
    const auto& y = b.coefficients();
    for (std::size_t i = x.size(); i-- > 0;) {
      int c = cmp(x[i], y[i]);
      if (c) return c < 0;
    }
    return false;
  }
};

// (degree, max norm) ordering used as the height of an element of Z[t]
bool height_less(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return max_norm(a) < max_norm(b);
}

}  // namespace

OrbitStatus<IntPolynomial> semigroup_orbit(const GeneratorSet& s, const IntPolynomial& p, const OrbitCaps& caps) {
  if (caps.size_cap == 0) throw std::invalid_argument("semigroup_orbit: size cap must be positive");
  const auto cs = s.polynomial_constants();
  int D = 0;
  for (const auto& c : cs) D = std::max(D, c.degree());
  // deg z > max(D, 0) forces deg(z^2 + c) = 2 deg z > deg z
  const long hcap = caps.height_cap > 0 ? caps.height_cap.get_si() : 0;
  const long H = std::max<long>(D, hcap);

  OrbitStatus<IntPolynomial> st;
  std::set<IntPolynomial, PolyLess> visited{p};
  std::vector<IntPolynomial> frontier{p};
  bool prev_high = false;
  IntPolynomial prev_min;
  for (std::size_t level = 0;; ++level) {
    st.level = level;
    IntPolynomial mn = frontier.front();
    bool high = true;
    for (const auto& z : frontier) {
      if (height_less(z, mn)) mn = z;
      if (z.degree() <= H) high = false;
    }
    if (prev_high && high && height_less(prev_min, mn)) {
      st.kind = OrbitKind::Escaping;
      st.points.assign(visited.begin(), visited.end());
      return st;
    }
    std::vector<IntPolynomial> next;
    for (const auto& z : frontier) {
      for (const auto& c : cs) {
        IntPolynomial y = z * z + c;
        if (y.degree() > 4096) {
          st.points.assign(visited.begin(), visited.end());
          return st;
        }
        if (visited.insert(y).second) next.push_back(std::move(y));
      }
    }
    if (next.empty()) {
      st.kind = OrbitKind::Closed;
      st.points.assign(visited.begin(), visited.end());
      return st;
    }
    if (visited.size() > caps.size_cap) {
      st.points.assign(visited.begin(), visited.end());
      return st;
    }
    prev_high = high;
    prev_min = mn;
    frontier = std::move(next);
  }
}

// ---------------------------------------------------------------- finite orbit points

// Every map has degree >= 2, so with R_i the escape radius of map i a point
// |y| > R_i is carried off to infinity by map i alone. A finite orbit point
// therefore has its whole orbit inside |y| <= R_min, and nothing beyond R_max
// can lead back there. Both searches are finite.
FiniteOrbitSearch orbit_contains_finite_orbit_point(const MapSet& s, const Integer& p, const OrbitCaps& caps) {
  FiniteOrbitSearch out;
  std::optional<Integer> rmin, rmax;
  bool bounded = !s.maps.empty();
  for (const auto& f : s.maps) {
    auto r = escape_radius(f);
    if (!r) {
      bounded = false;
      break;
    }
    if (!rmin || *r < *rmin) rmin = r;
    if (!rmax || *r > *rmax) rmax = r;
  }

  if (!bounded) {
    // breadth-first over Orb(P), closure test per point under the caps
    std::set<Integer> seen{p};
    std::deque<Integer> queue{p};
    while (!queue.empty() && seen.size() <= caps.size_cap) {
      Integer x = queue.front();
      queue.pop_front();
      ++out.explored;
      auto st = semigroup_orbit(s, x, caps);
      if (st.kind == OrbitKind::Closed) {
        out.answer = Answer::Yes;
        out.witness = x;
        return out;
      }
      for (const auto& f : s.maps) {
        Integer y = f.evaluate(x);
        if (mpz_sizeinbase(y.get_mpz_t(), 2) > caps.max_bits) return out;
        if (seen.insert(y).second) queue.push_back(std::move(y));
      }
    }
    return out;
  }

  std::set<Integer> infinite;  // points known to have infinite orbit
  auto closure_is_finite = [&](const Integer& x) -> std::optional<bool> {
    std::set<Integer> cl{x};
    std::deque<Integer> q{x};
    while (!q.empty()) {
      Integer z = q.front();
      q.pop_front();
      for (const auto& f : s.maps) {
        Integer y = f.evaluate(z);
        if (cmpabs(y, *rmin) > 0 || infinite.count(y)) {
          infinite.insert(x);
          return false;
        }
        if (cl.insert(y).second) q.push_back(std::move(y));
        if (cl.size() > caps.size_cap) return std::nullopt;
      }
    }
    return true;
  };

  if (cmpabs(p, *rmax) > 0) {
    out.answer = Answer::No;
    return out;
  }
  std::set<Integer> seen{p};
  std::deque<Integer> queue{p};
  bool capped = false;
  while (!queue.empty()) {
    Integer x = queue.front();
    queue.pop_front();
    ++out.explored;
    if (cmpabs(x, *rmin) <= 0 && !infinite.count(x)) {
      auto fin = closure_is_finite(x);
      if (!fin) {
        capped = true;
      } else if (*fin) {
        out.answer = Answer::Yes;
        out.witness = x;
        return out;
      }
    }
    for (const auto& f : s.maps) {
      Integer y = f.evaluate(x);
      if (cmpabs(y, *rmax) > 0) continue;
      if (seen.insert(y).second) queue.push_back(std::move(y));
    }
    if (seen.size() > caps.size_cap) return out;
  }
  out.answer = capped ? Answer::Unknown : Answer::No;
  return out;
}

}  // namespace arbor
