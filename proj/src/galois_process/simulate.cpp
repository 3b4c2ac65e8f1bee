#include "arbor/galois_process.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace arbor {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

constexpr std::uint64_t kChunk = 4096;

std::uint64_t heads(std::mt19937_64& rng, std::uint64_t coins) {
  if (coins > 4096) return std::binomial_distribution<std::uint64_t>(coins, 0.5)(rng);
  std::uint64_t h = 0;
  for (; coins >= 64; coins -= 64) h += std::popcount(rng());
  if (coins) h += std::popcount(rng() & ((std::uint64_t(1) << coins) - 1));
  return h;
}

struct ChunkResult {
  std::vector<std::uint64_t> survivors;
  std::uint64_t constant = 0, violations = 0;
};

double binomial_se(double p, std::uint64_t n) { return std::sqrt(p * (1 - p) / static_cast<double>(n)); }

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace

bool ProcessReport::all_within_3se() const {
  return std::all_of(levels.begin(), levels.end(), [](const ProcessLevel& l) { return l.within_3se.value_or(true); });
}

ProcessReport simulate_process(const ProcessOptions& opt) {
  if (opt.trials < 1) throw std::invalid_argument("simulate_process: trials must be at least 1");
  if (opt.depth < 1 || opt.depth > 62) throw std::invalid_argument("simulate_process: depth must be in [1, 62]");
  if (opt.window < 1 || opt.window > opt.depth) throw std::invalid_argument("simulate_process: window must be in [1, depth]");
  const unsigned D = opt.depth;
  auto maximal = [&](unsigned m) { return m - 1 >= opt.maximal_mask.size() || opt.maximal_mask[m - 1]; };

  const std::uint64_t chunks = (opt.trials + kChunk - 1) / kChunk;
  std::vector<ChunkResult> results(chunks);
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    std::vector<std::uint64_t> path(D + 1);
    for (std::uint64_t c; (c = next++) < chunks;) {
      ChunkResult& r = results[c];
      r.survivors.assign(D, 0);
      std::mt19937_64 rng(splitmix64(opt.seed ^ splitmix64(c)));
      const std::uint64_t n = std::min(kChunk, opt.trials - c * kChunk);
      for (std::uint64_t t = 0; t < n; ++t) {
        std::uint64_t x = 1;
        path[0] = 1;
        bool dead = false;
        for (unsigned m = 1; m <= D; ++m) {
          if (maximal(m))
            x = 2 * heads(rng, x);
          else if (opt.model == NonMaximalModel::Double)
            x = 2 * x;
          path[m] = x;
          if (x > 0) {
            ++r.survivors[m - 1];
            if (dead) ++r.violations;
          } else {
            dead = true;
          }
        }
        bool constant = true;
        for (unsigned m = D - opt.window + 2; m <= D; ++m) constant = constant && path[m] == path[m - 1];
        if (constant) ++r.constant;
      }
    }
  };
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work);
  for (auto& t : pool) t.join();

  ProcessReport rep;
  rep.options = opt;
  std::vector<std::uint64_t> surv(D, 0);
  for (const auto& r : results) {
    for (unsigned m = 0; m < D; ++m) surv[m] += r.survivors[m];
    rep.constant_window += r.constant;
    rep.monotone_violations += r.violations;
  }
  const Integer N(std::to_string(opt.trials));
  for (unsigned m = 1; m <= D; ++m) {
    ProcessLevel L;
    L.n = m;
    L.survivors = surv[m - 1];
    L.p_hat = Rational(Integer(std::to_string(L.survivors)), N);
    L.p_hat.canonicalize();
    L.stderr_hat = binomial_se(to_double(L.p_hat), opt.trials);
    L.exact = model_survival(opt.maximal_mask, opt.model, m);
    if (L.exact) {
      L.stderr_exact = binomial_se(to_double(*L.exact), opt.trials);
      const double diff = std::abs(to_double(L.p_hat) - to_double(*L.exact));
      L.within_3se = L.stderr_exact == 0 ? L.p_hat == *L.exact : diff <= 3 * L.stderr_exact;
    }
    rep.levels.push_back(std::move(L));
  }
  rep.constant_fraction = Rational(Integer(std::to_string(rep.constant_window)), N);
  rep.constant_fraction.canonicalize();
  return rep;
}

nlohmann::json to_json(const ProcessReport& r) {
  using nlohmann::json;
  json mask = json::array();
  for (unsigned m = 1; m <= r.options.depth; ++m)
    mask.push_back(m - 1 >= r.options.maximal_mask.size() || r.options.maximal_mask[m - 1]);
  json levels = json::array();
  for (const auto& L : r.levels) {
    json l = {{"n", L.n},
              {"survivors", L.survivors},
              {"p_hat", L.p_hat.get_str()},
              {"p_hat_decimal", L.p_hat.get_d()},
              {"stderr", L.stderr_hat}};
    if (L.exact) {
      l["fpp_exact"] = L.exact->get_str();
      l["fpp_decimal"] = L.exact->get_d();
      l["stderr_exact"] = L.stderr_exact;
      l["within_3se"] = *L.within_3se;
    } else {
      l["fpp_exact"] = nullptr;
    }
    levels.push_back(std::move(l));
  }
  return {{"seed", r.options.seed},
          {"depth", r.options.depth},
          {"trials", r.options.trials},
          {"nonmaximal_model", nonmaximal_model_name(r.options.model)},
          {"maximal_mask", mask},
          {"window", r.options.window},
          {"levels", levels},
          {"constant_window_paths", r.constant_window},
          {"constant_window_fraction", r.constant_fraction.get_d()},
          {"monotone_violations", r.monotone_violations},
          {"all_within_3se", r.all_within_3se()}};
}

}  // namespace arbor
