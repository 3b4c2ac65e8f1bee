#include "arbor/cli.hpp"

#include "arbor/census.hpp"
#include "arbor/galois_process.hpp"
#include "arbor/parse.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <set>

namespace arbor {

namespace {

const std::vector<std::string> kSubcommands = {"classify", "orbit", "certify", "census",
                                               "fpp",      "simulate", "sample", "primes"};

struct OptionUse {
  std::string key;
  std::set<std::string> subcommands;
};

// Registration and rendering order.
const std::vector<OptionUse>& option_table() {
  static const std::vector<OptionUse> t = {
      {"ring", {"classify", "orbit", "certify", "sample", "primes"}},
      {"c", {"classify", "orbit", "certify", "sample", "primes"}},
      {"set", {"classify", "orbit"}},
      {"coding", {"orbit", "certify", "primes"}},
      {"point", {"orbit"}},
      {"depth", {"orbit", "certify", "fpp", "simulate", "sample"}},
      {"d", {"census"}},
      {"s", {"census"}},
      {"B", {"census"}},
      {"variant", {"census"}},
      {"trials", {"simulate"}},
      {"nonmaximal-model", {"simulate"}},
      {"mask", {"simulate"}},
      {"window", {"simulate"}},
      {"weights", {"sample"}},
      {"samples", {"sample"}},
      {"length", {"sample"}},
      {"certify", {"sample"}},
      {"a0", {"primes"}},
      {"cutoffs", {"primes"}},
      {"fpp-depth", {"primes"}},
      {"seed", {"simulate", "sample"}},
      {"factor-budget", {"certify", "sample"}},
      {"orbit-cap", {"orbit"}},
      {"zero-cap", {"primes"}},
      {"threads", {"census", "simulate", "primes"}},
      {"format", {"classify", "orbit", "certify", "census", "fpp", "simulate", "sample", "primes"}},
      {"output", {"classify", "orbit", "certify", "census", "fpp", "simulate", "sample", "primes"}},
  };
  return t;
}

bool uses(const std::string& sub, const std::string& key) {
  for (const auto& o : option_table())
    if (o.key == key) return o.subcommands.count(sub) > 0;
  return false;
}

std::uint64_t env_or(const char* name, std::uint64_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    std::size_t used = 0;
    unsigned long long x = std::stoull(v, &used);
    if (used != std::string(v).size() || x == 0) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(std::string(name) + " must be a positive integer, got '" + v + "'");
  }
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

std::string normalize_uint_list(const std::string& key, const std::string& text) {
  std::vector<std::string> out;
  for (const auto& item : split_list(text, ',')) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.front() == '-') throw ConfigError("--" + key + ": '" + item + "' is not a nonnegative integer");
    out.push_back(std::to_string(v));
  }
  if (out.empty()) throw ConfigError("--" + key + ": empty list");
  return join(out, ",");
}

std::string normalize_constant(const std::string& text, Ring ring) {
  if (ring == Ring::Rationals) return parse_rational(text).get_str();
  return parse_polynomial(text, "t").to_string('t');
}

template <class F>
auto guarded(const std::string& key, F f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw ConfigError("--" + key + ": " + e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError("--" + key + ": " + e.what());
  }
}

// x^2 + c for every map: rewritten as --c. Otherwise kept as a general set.
void normalize_set(RunConfig& cfg) {
  if (!cfg.c.empty()) throw ConfigError("--set and --c are mutually exclusive");
  if (cfg.ring != Ring::Rationals) throw ConfigError("--set needs --ring q");
  const MapSet ms = guarded("set", [&] { return cfg.map_set(); });
  if (ms.maps.empty()) throw ConfigError("--set: map set is empty");
  std::vector<std::string> consts;
  for (const auto& f : ms.maps) {
    if (f.degree() < 1) throw ConfigError("--set: '" + f.to_string('x') + "' is constant");
    if (f.degree() == 2 && f.leading() == 1 && f.coeff(1) == 0) consts.push_back(f.coeff(0).get_str());
  }
  for (std::size_t i = 0; i < ms.maps.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (ms.maps[i] == ms.maps[j]) throw ConfigError("--set: repeated map '" + ms.maps[i].to_string('x') + "'");
  if (consts.size() == ms.maps.size()) {
    cfg.c = join(consts, "; ");
    cfg.set.clear();
    return;
  }
  if (cfg.subcommand != "orbit") throw ConfigError("--set: " + cfg.subcommand + " needs maps of the form x^2 + c");
  cfg.set = ms.to_string();
}

void normalize(RunConfig& cfg) {
  const std::string& sub = cfg.subcommand;
  if (!uses(sub, "set")) cfg.set.clear();
  if (!cfg.set.empty()) normalize_set(cfg);
  const bool general = !cfg.set.empty();
  if (uses(sub, "c") && !general) {
    guarded("c", [&] {
      cfg.generator_set().validate();
      return 0;
    });
    cfg.c = guarded("c", [&] {
      std::vector<std::string> items;
      for (const auto& item : split_list(cfg.c, ';')) items.push_back(normalize_constant(item, cfg.ring));
      return join(items, "; ");
    });
  }
  if (uses(sub, "coding") && !general) {
    cfg.coding = guarded("coding", [&] {
      auto coding = SequenceCoding::parse(cfg.coding);
      coding.validate(cfg.generator_set().size());
      return coding.to_string();
    });
  }
  if (uses(sub, "point")) cfg.point = guarded("point", [&] { return normalize_constant(cfg.point, cfg.ring); });
  if (general && Rational(cfg.point).get_den() != 1) throw ConfigError("--point must be an integer for --set");
  if (uses(sub, "a0")) cfg.a0 = guarded("a0", [&] { return parse_rational(cfg.a0).get_str(); });
  if (uses(sub, "B")) cfg.bounds = normalize_uint_list("B", cfg.bounds);
  if (uses(sub, "cutoffs")) cfg.cutoffs = normalize_uint_list("cutoffs", cfg.cutoffs);
  if (uses(sub, "variant"))
    cfg.variant = guarded("variant", [&] { return std::string(bound_variant_name(parse_bound_variant(cfg.variant))); });
  if (uses(sub, "nonmaximal-model"))
    cfg.model = guarded("nonmaximal-model",
                        [&] { return std::string(nonmaximal_model_name(parse_nonmaximal_model(cfg.model))); });
  if (uses(sub, "mask") && cfg.mask.find_first_not_of("01") != std::string::npos)
    throw ConfigError("--mask: only the characters 0 and 1 are allowed");
  if (uses(sub, "weights") && !cfg.weights.empty()) {
    cfg.weights = guarded("weights", [&] {
      std::vector<std::string> out;
      for (const auto& w : split_list(cfg.weights, ',')) out.push_back(parse_rational(w).get_str());
      return join(out, ",");
    });
  }
  if (!uses(sub, "c") || general) cfg.c.clear();
}

std::string quote(const std::string& v) {
  if (!v.empty() && v.find_first_of(" ;|\"'$\\*()") == std::string::npos) return v;
  std::string out = "\"";
  for (char ch : v) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

namespace {

// Calls f on each nonblank ';' item; parse positions are made relative to text.
template <class F>
void for_each_item(const std::string& text, F f) {
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(start, end - start);
    if (item.find_first_not_of(" \t") != std::string::npos) {
      try {
        f(item);
      } catch (const ParseError& e) {
        throw ParseError(e.message(), start + e.position());
      }
    }
    start = end + 1;
  }
}

}  // namespace

GeneratorSet RunConfig::generator_set() const {
  GeneratorSet s;
  s.ring = ring;
  for_each_item(c, [&](const std::string& item) {
    if (ring == Ring::Rationals)
      s.c.emplace_back(parse_rational(item));
    else
      s.c.push_back(parse_polynomial(item, "t"));
  });
  return s;
}

MapSet RunConfig::map_set() const {
  MapSet s;
  for_each_item(set, [&](const std::string& item) { s.maps.push_back(parse_polynomial(item, "x").to_integer()); });
  return s;
}

SequenceCoding RunConfig::sequence_coding() const { return SequenceCoding::parse(coding); }

RunConfig parse_run_config(const std::vector<std::string>& args) {
  RunConfig cfg;
  cfg.factor_budget = env_or("ARBOR_FACTOR_BUDGET", cfg.factor_budget);
  cfg.orbit_cap = env_or("ARBOR_ORBIT_CAP", cfg.orbit_cap);
  cfg.zero_cap = env_or("ARBOR_ZERO_CAP", cfg.zero_cap);

  CLI::App app{"arbor: iterated quadratic critical sets, certificates and experiments", "arbor"};
  app.require_subcommand(1);
  std::string ring = "q";
  for (const auto& name : kSubcommands) {
    CLI::App* sub = app.add_subcommand(name);
    auto add = [&](const std::string& key, auto& field, const std::string& help) {
      if (uses(name, key)) sub->add_option("--" + key, field, help);
    };
    if (uses(name, "ring")) sub->add_option("--ring", ring, "q or qt")->check(CLI::IsMember({"q", "qt"}));
    add("c", cfg.c, "constants c_i separated by ';'");
    add("set", cfg.set, "maps in x over Z separated by ';' (orbit accepts any degree)");
    add("coding", cfg.coding, "prefix|cycle of 1-based indices, theta_1 outermost");
    add("point", cfg.point, "start point of the semigroup orbit");
    add("depth", cfg.depth, "number of levels");
    add("d", cfg.d, "degree bound");
    add("s", cfg.s, "set size");
    add("B", cfg.bounds, "comma separated coefficient bounds");
    add("variant", cfg.variant, "even, odd or monic");
    add("trials", cfg.trials, "simulated paths");
    add("nonmaximal-model", cfg.model, "double or hold");
    add("mask", cfg.mask, "1 (maximal) or 0 per level");
    add("window", cfg.window, "levels in the constancy window");
    add("weights", cfg.weights, "comma separated rational weights");
    add("samples", cfg.samples, "number of sampled codings");
    add("length", cfg.length, "length of each sampled coding");
    if (uses(name, "certify")) sub->add_flag("--certify", cfg.certify, "certify each sampled prefix");
    add("a0", cfg.a0, "base point");
    add("cutoffs", cfg.cutoffs, "comma separated increasing cutoffs");
    add("fpp-depth", cfg.fpp_depth, "also compare with f_1..f_n");
    add("seed", cfg.seed, "master seed");
    add("factor-budget", cfg.factor_budget, "Pollard-Brent steps");
    add("orbit-cap", cfg.orbit_cap, "points per orbit search");
    add("zero-cap", cfg.zero_cap, "exact zero detection depth");
    add("threads", cfg.threads, "worker threads, 0 for all cores");
    if (uses(name, "format")) sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    add("output", cfg.output, "report path");
  }
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) throw HelpRequested(app.help());
    throw ConfigError(e.what());
  }
  for (const auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();
  cfg.ring = ring == "qt" ? Ring::Polynomials : Ring::Rationals;
  normalize(cfg);
  return cfg;
}

std::vector<std::string> render_args(const RunConfig& cfg) {
  std::vector<std::string> out{cfg.subcommand};
  const std::string& sub = cfg.subcommand;
  const bool general = !cfg.set.empty();
  auto put = [&](const std::string& key, const std::string& v) {
    if (!uses(sub, key)) return;
    if (general && (key == "c" || key == "coding" || key == "depth")) return;
    out.push_back("--" + key);
    out.push_back(v);
  };
  put("ring", ring_name(cfg.ring));
  put("c", cfg.c);
  if (general) put("set", cfg.set);
  put("coding", cfg.coding);
  put("point", cfg.point);
  put("depth", std::to_string(cfg.depth));
  put("d", std::to_string(cfg.d));
  put("s", std::to_string(cfg.s));
  put("B", cfg.bounds);
  put("variant", cfg.variant);
  put("trials", std::to_string(cfg.trials));
  put("nonmaximal-model", cfg.model);
  if (!cfg.mask.empty()) put("mask", cfg.mask);
  put("window", std::to_string(cfg.window));
  if (!cfg.weights.empty()) put("weights", cfg.weights);
  put("samples", std::to_string(cfg.samples));
  put("length", std::to_string(cfg.length));
  if (cfg.certify && uses(sub, "certify")) out.push_back("--certify");
  put("a0", cfg.a0);
  put("cutoffs", cfg.cutoffs);
  put("fpp-depth", std::to_string(cfg.fpp_depth));
  put("seed", std::to_string(cfg.seed));
  put("factor-budget", std::to_string(cfg.factor_budget));
  put("orbit-cap", std::to_string(cfg.orbit_cap));
  put("zero-cap", std::to_string(cfg.zero_cap));
  put("format", cfg.format);
  if (!cfg.output.empty()) put("output", cfg.output);
  return out;
}

std::string render(const RunConfig& cfg) {
  std::vector<std::string> parts;
  for (const auto& a : render_args(cfg)) parts.push_back(a.rfind("--", 0) == 0 ? a : quote(a));
  return join(parts, " ");
}

}  // namespace arbor
