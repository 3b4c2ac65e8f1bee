#include "arbor/dynamics.hpp"
#include "arbor/parse.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace arbor {

const char* ring_name(Ring r) { return r == Ring::Rationals ? "q" : "qt"; }

GeneratorSet GeneratorSet::integers(const std::vector<long>& cs) {
  GeneratorSet s;
  for (long v : cs) s.c.emplace_back(Rational(v));
  return s;
}

GeneratorSet GeneratorSet::polynomials(const std::vector<IntPolynomial>& cs) {
  GeneratorSet s;
  s.ring = Ring::Polynomials;
  for (const auto& v : cs) s.c.emplace_back(v);
  return s;
}

bool GeneratorSet::integral() const {
  return std::all_of(c.begin(), c.end(), [](const RatPolynomial& v) { return v.denominator() == 1; });
}

void GeneratorSet::validate() const {
  if (c.empty()) throw std::invalid_argument("generator set is empty");
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (ring == Ring::Rationals && !c[i].is_constant())
      throw std::invalid_argument("nonconstant c over the rationals: " + c[i].to_string());
    for (std::size_t j = 0; j < i; ++j)
      if (c[i] == c[j]) throw std::invalid_argument("repeated map x^2+(" + c[i].to_string() + ")");
  }
}

std::vector<Integer> GeneratorSet::integer_constants() const {
  if (ring != Ring::Rationals || !integral()) throw std::invalid_argument("set is not over the integers");
  std::vector<Integer> out;
  for (const auto& v : c) out.push_back(v.numerator().coeff(0));
  return out;
}

std::vector<IntPolynomial> GeneratorSet::polynomial_constants() const {
  if (!integral()) throw std::invalid_argument("set has non-integral coefficients");
  std::vector<IntPolynomial> out;
  for (const auto& v : c) out.push_back(v.numerator());
  return out;
}

std::string GeneratorSet::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += "; ";
    out += "x^2";
    if (c[i].is_zero()) continue;
    std::string v = c[i].to_string('t');
    if (c[i].is_constant())
      out += v[0] == '-' ? v : "+" + v;
    else
      out += "+(" + v + ")";
  }
  return out;
}

MapSet MapSet::from(const GeneratorSet& s) {
  MapSet m;
  for (const auto& c : s.integer_constants()) m.maps.push_back(IntPolynomial({c, 0, 1}));
  return m;
}

std::string MapSet::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (i) out += "; ";
    out += maps[i].to_string('x');
  }
  return out;
}

namespace {

std::vector<std::size_t> parse_indices(std::string_view text, std::size_t offset) {
  std::vector<std::size_t> out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (i == text.size()) return out;
  while (true) {
    skip();
    std::size_t start = i;
    std::size_t v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + static_cast<std::size_t>(text[i] - '0');
      if (v > 1000000) throw ParseError("index too large", offset + start);
      ++i;
    }
    if (i == start) throw ParseError("expected a generator index", offset + i);
    if (v == 0) throw ParseError("generator indices are 1-based", offset + start);
    out.push_back(v - 1);
    skip();
    if (i == text.size()) break;
    if (text[i] != ',') throw ParseError(std::string("unexpected '") + text[i] + "' in coding", offset + i);
    ++i;
  }
  return out;
}

}  // namespace

SequenceCoding SequenceCoding::parse(std::string_view text) {
  SequenceCoding out;
  const std::size_t bar = text.find('|');
  if (bar == std::string_view::npos) {
    out.cycle = parse_indices(text, 0);
  } else {
    if (text.find('|', bar + 1) != std::string_view::npos) throw ParseError("more than one '|'", text.find('|', bar + 1));
    out.prefix = parse_indices(text.substr(0, bar), 0);
    out.cycle = parse_indices(text.substr(bar + 1), bar + 1);
  }
  if (out.cycle.empty()) throw ParseError("empty cycle", text.size());
  return out;
}

std::string SequenceCoding::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < prefix.size(); ++i) out += (i ? "," : "") + std::to_string(prefix[i] + 1);
  out += "|";
  for (std::size_t i = 0; i < cycle.size(); ++i) out += (i ? "," : "") + std::to_string(cycle[i] + 1);
  return out;
}

std::size_t SequenceCoding::at(std::size_t n) const {
  if (n == 0) throw std::invalid_argument("coding positions start at 1");
  if (n <= prefix.size()) return prefix[n - 1];
  return cycle[(n - 1 - prefix.size()) % cycle.size()];
}

void SequenceCoding::validate(std::size_t set_size) const {
  if (cycle.empty()) throw std::invalid_argument("coding cycle is empty");
  for (auto i : prefix)
    if (i >= set_size) throw std::invalid_argument("coding index " + std::to_string(i + 1) + " out of range");
  for (auto i : cycle)
    if (i >= set_size) throw std::invalid_argument("coding index " + std::to_string(i + 1) + " out of range");
}

}  // namespace arbor
