#include "arbor/galois_process.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace arbor {

namespace {

// Integer weights over a common denominator.
std::vector<std::uint64_t> integer_weights(const std::vector<Rational>& weights, std::uint64_t& total) {
  if (weights.empty()) throw std::invalid_argument("sampling needs at least one weight");
  Rational sum = 0;
  Integer den = 1;
  for (const auto& w : weights) {
    if (w <= 0) throw std::invalid_argument("weights must be positive");
    sum += w;
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), w.get_den_mpz_t());
  }
  if (sum != 1) throw std::invalid_argument("weights must sum to 1, got " + sum.get_str());
  if (mpz_sizeinbase(den.get_mpz_t(), 2) > 62) throw std::invalid_argument("weight denominators too large");
  std::vector<std::uint64_t> out;
  for (const auto& w : weights) {
    Integer v = w.get_num() * (den / w.get_den());
    out.push_back(v.get_ui());
  }
  total = den.get_ui();
  return out;
}

std::vector<std::size_t> draw(const std::vector<std::uint64_t>& w, std::uint64_t total, std::mt19937_64& rng,
                              std::size_t length) {
  std::uniform_int_distribution<std::uint64_t> u(0, total - 1);
  std::vector<std::size_t> out(length);
  for (auto& x : out) {
    std::uint64_t r = u(rng);
    std::size_t i = 0;
    while (r >= w[i]) r -= w[i++];
    x = i;
  }
  return out;
}

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index) { return std::mt19937_64(splitmix64(seed ^ splitmix64(index))); }

}  // namespace

std::vector<std::size_t> sample_coding(const std::vector<Rational>& weights, std::uint64_t seed, std::size_t length) {
  if (length < 1) throw std::invalid_argument("sample length must be at least 1");
  std::uint64_t total = 0;
  auto w = integer_weights(weights, total);
  auto rng = stream(seed, 0);
  return draw(w, total, rng, length);
}

SampleReport sample_codings(const GeneratorSet* set, const SampleOptions& opt) {
  if (opt.length < 1) throw std::invalid_argument("sample length must be at least 1");
  if (opt.samples < 1) throw std::invalid_argument("sample count must be at least 1");
  if (opt.certify && !set) throw std::invalid_argument("certification needs a generator set");
  if (set && set->size() != opt.weights.size())
    throw std::invalid_argument("one weight per generator is required");
  std::uint64_t total = 0;
  const auto w = integer_weights(opt.weights, total);
  const std::size_t s = w.size();

  SampleReport rep;
  rep.options = opt;
  rep.theta1_counts.assign(s, 0);
  rep.position_counts.assign(s, 0);
  CertifyOptions copt;
  copt.include_values = false;
  for (std::uint64_t i = 0; i < opt.samples; ++i) {
    auto rng = stream(opt.seed, i);
    auto c = draw(w, total, rng, opt.length);
    ++rep.theta1_counts[c[0]];
    for (auto x : c) ++rep.position_counts[x];
    if (opt.certify) {
      SequenceCoding coding;
      coding.prefix.assign(c.begin(), c.end() - 1);
      coding.cycle = {c.back()};
      const std::size_t depth = std::min(opt.certify_depth, opt.length);
      auto ch = certify_chain(*set, coding, depth, copt);
      ++rep.certified;
      if (ch.stable_through_depth) ++rep.stable;
      if (ch.inconclusive()) ++rep.inconclusive;
      if (ch.tool_guarantee) {
        ++rep.tool_guaranteed;
        bool ok = true;
        for (const auto& L : ch.levels)
          if (L.tool_guaranteed && !L.maximality.maximal) ok = false;
        if (ok) ++rep.tool_maximal_ok;
      }
    }
    if (rep.kept.size() < opt.keep) rep.kept.push_back(std::move(c));
  }
  const double N = static_cast<double>(opt.samples);
  for (std::size_t i = 0; i < s; ++i) {
    const double p = opt.weights[i].get_d();
    const double se = std::sqrt(p * (1 - p) / N);
    rep.theta1_within_3se.push_back(std::abs(static_cast<double>(rep.theta1_counts[i]) / N - p) <= 3 * se);
  }
  return rep;
}

nlohmann::json to_json(const SampleReport& r) {
  using nlohmann::json;
  json weights = json::array();
  for (const auto& w : r.options.weights) weights.push_back(w.get_str());
  json kept = json::array();
  for (const auto& c : r.kept) {
    json row = json::array();
    for (auto x : c) row.push_back(x + 1);
    kept.push_back(std::move(row));
  }
  json out = {{"seed", r.options.seed},
              {"length", r.options.length},
              {"samples", r.options.samples},
              {"weights", weights},
              {"theta1_counts", r.theta1_counts},
              {"theta1_within_3se", r.theta1_within_3se},
              {"position_counts", r.position_counts},
              {"kept", kept}};
  if (r.options.certify)
    out["certify"] = {{"depth", std::min(r.options.certify_depth, r.options.length)},
                      {"certified", r.certified},
                      {"stable", r.stable},
                      {"tool_guaranteed", r.tool_guaranteed},
                      {"tool_maximal_ok", r.tool_maximal_ok},
                      {"inconclusive", r.inconclusive}};
  return out;
}

}  // namespace arbor
