#include "arbor/cli.hpp"

#include "arbor/census.hpp"
#include "arbor/certify.hpp"
#include "arbor/galois_process.hpp"
#include "arbor/parse.hpp"
#include "arbor/prime_density.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace arbor {

namespace {

using nlohmann::json;

std::vector<std::uint64_t> uint_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& item : split_list(text, ',')) out.push_back(std::stoull(item));
  return out;
}

struct Report {
  json body;
  std::string csv;  // empty when the subcommand has no CSV form
  bool inconclusive = false;
};

Report classify(const RunConfig& cfg) {
  Report r;
  const auto s = cfg.generator_set();
  r.body["set"] = s.to_string();
  try {
    auto c = classify_finite_orbit_obstruction(s);
    r.body["verdict"] = c.exceptional ? "Exceptional" : "NotExceptional";
    r.body["name"] = c.name;
    r.body["witness_point"] = c.witness ? json(c.witness->get_str()) : json(nullptr);
    r.body["reason"] = c.reason;
  } catch (const std::runtime_error& e) {
    r.body["verdict"] = "Inconclusive";
    r.body["reason"] = e.what();
    r.inconclusive = true;
  }
  std::ostringstream csv;
  csv << "set,verdict,witness_point\n\"" << r.body["set"].get<std::string>() << "\"," << r.body["verdict"].get<std::string>()
      << ',' << (r.body.contains("witness_point") && !r.body["witness_point"].is_null()
                     ? r.body["witness_point"].get<std::string>()
                     : "")
      << '\n';
  r.csv = csv.str();
  return r;
}

json integer_orbit_json(const MapSet& ms, const Integer& p, const OrbitCaps& caps, bool& inconclusive) {
  json sg;
  auto st = semigroup_orbit(ms, p, caps);
  sg["kind"] = orbit_kind_name(st.kind);
  sg["size"] = st.points.size();
  sg["levels"] = st.level;
  if (st.kind == OrbitKind::Closed) {
    json pts = json::array();
    for (const auto& x : st.points) pts.push_back(x.get_str());
    sg["points"] = pts;
  }
  auto fo = orbit_contains_finite_orbit_point(ms, p, caps);
  sg["finite_orbit_point"] = {{"answer", answer_name(fo.answer)},
                              {"witness", fo.witness ? json(fo.witness->get_str()) : json(nullptr)},
                              {"explored", fo.explored}};
  inconclusive = st.kind == OrbitKind::Unknown || fo.answer == Answer::Unknown;
  return sg;
}

Report general_orbit(const RunConfig& cfg) {
  Report r;
  const auto ms = cfg.map_set();
  OrbitCaps caps;
  caps.size_cap = cfg.orbit_cap;
  json sg = integer_orbit_json(ms, Rational(cfg.point).get_num(), caps, r.inconclusive);
  sg["point"] = cfg.point;
  r.body = {{"set", ms.to_string()}, {"semigroup_orbit", sg}};
  std::ostringstream csv;
  csv << "set,point,kind,size,finite_orbit_point,witness\n\"" << ms.to_string() << "\"," << cfg.point << ','
      << sg["kind"].get<std::string>() << ',' << sg["size"].get<std::size_t>() << ','
      << sg["finite_orbit_point"]["answer"].get<std::string>() << ','
      << (sg["finite_orbit_point"]["witness"].is_null() ? "" : sg["finite_orbit_point"]["witness"].get<std::string>())
      << '\n';
  r.csv = csv.str();
  return r;
}

Report orbit(const RunConfig& cfg) {
  if (!cfg.set.empty()) return general_orbit(cfg);
  Report r;
  const auto s = cfg.generator_set();
  const auto coding = cfg.sequence_coding();
  const auto values = critical_orbit(s, coding, cfg.depth);
  json vals = json::array();
  std::ostringstream csv;
  csv << "n,map,gamma_n_0\n";
  for (std::size_t n = 1; n <= values.size(); ++n) {
    vals.push_back(values[n - 1].to_string());
    csv << n << ',' << coding.at(n) + 1 << ",\"" << values[n - 1].to_string() << "\"\n";
  }
  r.body = {{"set", s.to_string()}, {"coding", coding.to_string()}, {"critical_orbit", vals}};
  OrbitCaps caps;
  caps.size_cap = cfg.orbit_cap;
  json sg = {{"point", cfg.point}};
  if (s.ring == Ring::Rationals && s.integral()) {
    const Rational p = parse_rational(cfg.point);
    if (p.get_den() != 1) throw std::invalid_argument("--point must be an integer for an integral set");
    sg.update(integer_orbit_json(MapSet::from(s), p.get_num(), caps, r.inconclusive));
  } else if (s.ring == Ring::Polynomials && s.integral()) {
    auto st = semigroup_orbit(s, parse_polynomial(cfg.point, "t").to_integer(), caps);
    sg["kind"] = orbit_kind_name(st.kind);
    sg["size"] = st.points.size();
    sg["levels"] = st.level;
    if (st.kind == OrbitKind::Closed) {
      json pts = json::array();
      for (const auto& x : st.points) pts.push_back(x.to_string());
      sg["points"] = pts;
    }
    r.inconclusive = st.kind == OrbitKind::Unknown;
  } else {
    sg["kind"] = "NotComputed";
    sg["reason"] = "semigroup orbits are searched for integral sets only";
  }
  r.body["semigroup_orbit"] = sg;
  r.csv = csv.str();
  return r;
}

Report certify(const RunConfig& cfg) {
  Report r;
  CertifyOptions opt;
  opt.budget.rho_iterations = cfg.factor_budget;
  auto chain = certify_chain(cfg.generator_set(), cfg.sequence_coding(), cfg.depth, opt);
  r.body = to_json(chain);
  r.inconclusive = chain.inconclusive();
  std::ostringstream csv;
  csv << "level,map,stability,maximality,maximal,witness,tool_guaranteed\n";
  for (const auto& L : chain.levels)
    csv << L.level << ',' << L.map_index + 1 << ',' << stability_kind_name(L.stability) << ','
        << maximality_kind_name(L.maximality.kind) << ',' << (L.maximality.maximal ? "true" : "false") << ",\""
        << L.maximality.witness << "\"," << (L.tool_guaranteed ? "true" : "false") << '\n';
  r.csv = csv.str();
  return r;
}

Report census(const RunConfig& cfg) {
  Report r;
  std::vector<unsigned long> Bs;
  for (auto b : uint_list(cfg.bounds)) Bs.push_back(static_cast<unsigned long>(b));
  auto rep = convergence_experiment(cfg.d, cfg.s, Bs, parse_bound_variant(cfg.variant));
  json rows = json::array();
  for (const auto& row : rep.rows)
    rows.push_back({{"B", row.B},
                    {"fraction", row.fraction.get_str()},
                    {"fraction_decimal", row.fraction.get_d()},
                    {"deviation", row.deviation.get_str()}});
  r.body = {{"d", rep.d},
            {"s", rep.s},
            {"variant", bound_variant_name(rep.variant)},
            {"r_d", r_d(rep.d).get_str()},
            {"bound", rep.bound.get_str()},
            {"counted_property", rep.variant == BoundVariant::Odd ? "some element with (I) and some with (II)"
                                 : rep.variant == BoundVariant::Even ? "some element with (*)"
                                                                     : "some element with odd derivative mod 2"},
            {"rows", rows}};
  std::ostringstream csv;
  write_csv(csv, rep);
  r.csv = csv.str();
  return r;
}

Report fpp(const RunConfig& cfg) {
  Report r;
  const unsigned depth = static_cast<unsigned>(cfg.depth);
  if (depth < 1) throw std::invalid_argument("--depth must be at least 1");
  const auto enc = fpp_enclosures(depth);
  json levels = json::array();
  std::ostringstream csv;
  csv << "n,fpp_lower,fpp_upper\n";
  for (unsigned n = 1; n <= depth; ++n) {
    json l = {{"n", n}, {"lower", enc[n - 1].lo.get_d()}, {"upper", enc[n - 1].hi.get_d()}};
    if (n <= 12) l["exact"] = enc[n - 1].lo.get_str();
    levels.push_back(std::move(l));
    csv << n << ',' << enc[n - 1].lo.get_d() << ',' << enc[n - 1].hi.get_d() << '\n';
  }
  const auto proof = prove_fpp_decrease(depth, Rational(1, 16));
  r.body = {{"depth", depth},
            {"levels", levels},
            {"strictly_decreasing", proof.strictly_decreasing},
            {"below_one_sixteenth", proof.below_bound}};
  r.csv = csv.str();
  return r;
}

Report simulate(const RunConfig& cfg) {
  Report r;
  ProcessOptions opt;
  opt.seed = cfg.seed;
  opt.depth = static_cast<unsigned>(cfg.depth);
  opt.trials = cfg.trials;
  opt.model = parse_nonmaximal_model(cfg.model);
  opt.window = cfg.window;
  opt.threads = cfg.threads;
  for (char ch : cfg.mask) opt.maximal_mask.push_back(ch == '1');
  auto rep = simulate_process(opt);
  r.body = to_json(rep);
  std::ostringstream csv;
  csv << "n,survivors,p_hat,stderr,fpp\n";
  for (const auto& L : rep.levels)
    csv << L.n << ',' << L.survivors << ',' << L.p_hat.get_d() << ',' << L.stderr_hat << ','
        << (L.exact ? std::to_string(L.exact->get_d()) : "") << '\n';
  r.csv = csv.str();
  return r;
}

Report sample(const RunConfig& cfg) {
  Report r;
  const auto s = cfg.generator_set();
  SampleOptions opt;
  opt.seed = cfg.seed;
  opt.length = cfg.length;
  opt.samples = cfg.samples;
  opt.certify = cfg.certify;
  opt.certify_depth = cfg.depth;
  if (cfg.weights.empty()) {
    for (std::size_t i = 0; i < s.size(); ++i) opt.weights.emplace_back(1, static_cast<unsigned long>(s.size()));
    for (auto& w : opt.weights) w.canonicalize();
  } else {
    for (const auto& w : split_list(cfg.weights, ',')) opt.weights.push_back(parse_rational(w));
  }
  auto rep = sample_codings(&s, opt);
  r.body = to_json(rep);
  r.body["set"] = s.to_string();
  r.inconclusive = rep.inconclusive > 0;
  std::ostringstream csv;
  csv << "generator,weight,theta1_count,position_count\n";
  for (std::size_t i = 0; i < s.size(); ++i)
    csv << i + 1 << ',' << opt.weights[i].get_str() << ',' << rep.theta1_counts[i] << ',' << rep.position_counts[i]
        << '\n';
  r.csv = csv.str();
  return r;
}

Report primes(const RunConfig& cfg) {
  Report r;
  const auto s = cfg.generator_set();
  const auto coding = cfg.sequence_coding();
  const Rational a0 = parse_rational(cfg.a0);
  ScanOptions opt;
  opt.zero_cap = cfg.zero_cap;
  opt.threads = cfg.threads;
  auto rep = density_profile(s, coding, a0, uint_list(cfg.cutoffs), opt);
  r.body = to_json(rep);
  if (cfg.fpp_depth > 0) {
    FppComparison cmp;
    cmp.cutoff = rep.rows.back().x;
    cmp.ratio = rep.rows.back().ratio;
    for (const auto& e : fpp_enclosures(cfg.fpp_depth)) {
      cmp.fpp_lo.push_back(e.lo);
      cmp.fpp_hi.push_back(e.hi);
    }
    r.body["fpp_comparison"] = to_json(cmp);
  }
  r.inconclusive = !rep.capped.empty() || rep.zero_status == ZeroStatus::CapExhausted;
  std::ostringstream csv;
  write_csv(csv, rep);
  r.csv = csv.str();
  return r;
}

Report dispatch(const RunConfig& cfg) {
  const std::string& sub = cfg.subcommand;
  if (sub == "classify") return classify(cfg);
  if (sub == "orbit") return orbit(cfg);
  if (sub == "certify") return certify(cfg);
  if (sub == "census") return census(cfg);
  if (sub == "fpp") return fpp(cfg);
  if (sub == "simulate") return simulate(cfg);
  if (sub == "sample") return sample(cfg);
  if (sub == "primes") return primes(cfg);
  throw ConfigError("unknown subcommand '" + sub + "'");
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Report rep;
  try {
    rep = dispatch(cfg);
  } catch (const std::exception& e) {
    err << "arbor " << cfg.subcommand << ": " << e.what() << '\n';
    return kExitError;
  }
  std::string text;
  if (cfg.format == "csv") {
    text = "# arbor " + std::string(kVersion) + "\n# config: " + render(cfg) + "\n" + rep.csv;
  } else {
    json doc = {{"tool", "arbor"}, {"version", kVersion}, {"config", render(cfg)}, {"report", rep.body}};
    text = doc.dump(2) + "\n";
  }
  if (cfg.output.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) {
      err << "arbor: cannot write " << cfg.output << '\n';
      return kExitError;
    }
    f << text;
  }
  return rep.inconclusive ? kExitInconclusive : kExitOk;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  RunConfig cfg;
  try {
    cfg = parse_run_config(args);
  } catch (const HelpRequested& h) {
    std::cout << h.what();
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "arbor: " << e.what() << '\n';
    return kExitError;
  }
  return run(cfg, std::cout, std::cerr);
}

}  // namespace arbor
