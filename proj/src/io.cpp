#include "rpa/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>

#include "rpa/error.hpp"
#include "rpa/exponents.hpp"

namespace rpa::io {
namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

double to_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) parse_fail("not a number: '" + std::string(s) + "'");
  return v;
}

std::uint64_t to_uint(std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) parse_fail("not an unsigned integer: '" + std::string(s) + "'");
  return v;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Splits "name:args" when name is one of the known shorthands.
bool shorthand(const std::string& spec, std::string_view name, std::string& args) {
  if (spec.size() <= name.size() || spec.compare(0, name.size(), name) != 0 || spec[name.size()] != ':') return false;
  args = spec.substr(name.size() + 1);
  return true;
}

std::vector<double> numbers(const json& j, const char* what) {
  if (!j.is_array()) parse_fail(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) parse_fail(std::string(what) + " must contain only numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<std::string> labels(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) return {};
  std::vector<std::string> out;
  for (const auto& x : j.at(key)) out.push_back(x.is_string() ? x.get<std::string>() : x.dump());
  return out;
}

Alphabet alphabet_for(std::vector<std::string> names, std::size_t size) {
  if (names.empty()) return Alphabet(size);
  if (names.size() != size) parse_fail("label count differs from the table dimension");
  return Alphabet(std::move(names));
}

// Flattens [[...], ...] and checks it is rectangular.
std::vector<double> matrix(const json& j, std::size_t& rows, std::size_t& cols) {
  if (!j.is_array() || j.empty()) parse_fail("expected a non-empty array of rows");
  rows = j.size();
  cols = 0;
  std::vector<double> flat;
  for (const auto& row : j) {
    const auto r = numbers(row, "row");
    if (cols == 0) cols = r.size();
    if (r.size() != cols || cols == 0) parse_fail("rows must be non-empty and of equal length");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return flat;
}

}  // namespace

std::string format_number(double x, int precision) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  const double ax = std::abs(x);
  const auto fmt = (ax == 0.0 || (ax >= 1e-4 && ax < 1e15)) ? std::chars_format::fixed : std::chars_format::scientific;
  char buf[512];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, fmt, precision);
  if (ec != std::errc()) throw Error(ErrorKind::Inconsistent, "number formatting failed");
  return std::string(buf, ptr);
}

double round_printed(double x, int precision) {
  if (!std::isfinite(x)) return x;
  const std::string s = format_number(x, precision);
  return to_double(s);
}

json rounded(const json& j, int precision) {
  if (j.is_number_float()) return round_printed(j.get<double>(), precision);
  if (j.is_array()) {
    json out = json::array();
    for (const auto& x : j) out.push_back(rounded(x, precision));
    return out;
  }
  if (j.is_object()) {
    json out = json::object();
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = rounded(it.value(), precision);
    return out;
  }
  return j;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    parse_fail("'" + path + "': " + e.what());
  }
}

Dist dist_from_json(const json& j) {
  if (j.is_array()) return make_dist(numbers(j, "distribution"));
  if (j.is_object() && j.contains("probs")) return make_dist(labels(j, "labels"), numbers(j.at("probs"), "probs"));
  parse_fail("distribution must be an array or an object with 'probs'");
}

JointDist joint_from_json(const json& j) {
  const json& t = j.is_object() ? (j.contains("table") ? j.at("table") : json()) : j;
  if (t.is_null()) parse_fail("joint distribution needs a 'table'");
  std::size_t rows = 0, cols = 0;
  auto flat = matrix(t, rows, cols);
  return JointDist(alphabet_for(labels(j, "rows"), rows), alphabet_for(labels(j, "cols"), cols), std::move(flat));
}

Channel channel_from_json(const json& j) {
  json t = j;
  if (j.is_object()) t = j.contains("rows") ? j.at("rows") : j.contains("matrix") ? j.at("matrix") : json();
  if (t.is_null()) parse_fail("channel needs 'rows'");
  std::size_t rows = 0, cols = 0;
  auto flat = matrix(t, rows, cols);
  return Channel(alphabet_for(labels(j, "inputs"), rows), alphabet_for(labels(j, "outputs"), cols), std::move(flat));
}

AdditiveSpec additive_from_json(const json& j) {
  if (!j.is_object() || !j.contains("module") || !j.contains("noise"))
    parse_fail("additive spec needs 'module' and 'noise'");
  const json& mod = j.at("module");
  const std::string kind = mod.value("kind", "");
  const json params = mod.value("params", json());
  std::optional<Module> module;
  try {
    if (kind == "Zd") {
      module = Module::cyclic(params.is_object() ? params.at("d").get<std::uint32_t>() : params.get<std::uint32_t>());
    } else if (kind == "GF(q)^n") {
      const auto q = params.is_object() ? params.at("q").get<std::uint32_t>() : params.at(0).get<std::uint32_t>();
      const auto n = params.is_object() ? params.at("n").get<std::size_t>() : params.at(1).get<std::size_t>();
      module = Module::vector_space(q, n);
    } else if (kind == "product") {
      module = Module(params.get<std::vector<std::uint32_t>>());
    }
  } catch (const json::exception& e) {
    parse_fail(std::string("module params: ") + e.what());
  }
  if (!module) parse_fail("module kind must be Zd, GF(q)^n or product");
  std::optional<JointDist> side;
  if (j.contains("sideInfo")) side = joint_from_json(j.at("sideInfo"));
  return AdditiveSpec(*module, dist_from_json(j.at("noise")), std::move(side));
}

Dist parse_dist(const std::string& spec) {
  std::string args;
  if (shorthand(spec, "bern", args)) return Dist::bernoulli(to_double(args));
  if (shorthand(spec, "uniform", args)) return Dist::uniform(static_cast<std::size_t>(to_uint(args)));
  return dist_from_json(load_json(spec));
}

Channel parse_channel(const std::string& spec) {
  std::string args;
  if (shorthand(spec, "bsc", args)) return Channel::bsc(to_double(args));
  if (shorthand(spec, "identity", args)) return Channel::identity(static_cast<std::size_t>(to_uint(args)));
  return channel_from_json(load_json(spec));
}

JointDist parse_joint(const std::string& spec) {
  std::string args;
  if (shorthand(spec, "bsc", args)) return join(Dist::uniform(2), Channel::bsc(to_double(args)));
  return joint_from_json(load_json(spec));
}

AdditiveSpec parse_additive(const std::string& spec) {
  std::string args;
  if (shorthand(spec, "bsc", args)) return AdditiveSpec(Module::cyclic(2), Dist::bernoulli(to_double(args)));
  if (shorthand(spec, "additive", args)) {
    const std::size_t c1 = args.find(','), c2 = c1 == std::string::npos ? c1 : args.find(',', c1 + 1);
    if (c2 == std::string::npos) parse_fail("additive shorthand is additive:q,m,NOISE");
    const auto q = static_cast<std::uint32_t>(to_uint(std::string_view(args).substr(0, c1)));
    const auto m = static_cast<std::size_t>(to_uint(std::string_view(args).substr(c1 + 1, c2 - c1 - 1)));
    return AdditiveSpec(Module::vector_space(q, m), parse_dist(args.substr(c2 + 1)));
  }
  return additive_from_json(load_json(spec));
}

std::function<HashFamily(std::size_t)> parse_family(const std::string& spec) {
  std::string args;
  if (shorthand(spec, "toeplitz", args)) {
    const auto v = parse_uints(args, 3);
    return [v](std::size_t domain) {
      HashFamily f = toeplitz_family(static_cast<std::uint32_t>(v[0]), v[1], v[2]);
      if (f.domain_size() != domain) throw Error(ErrorKind::DimensionMismatch, "family domain differs from |A|");
      return f;
    };
  }
  if (shorthand(spec, "permutation", args)) {
    const auto range = static_cast<std::size_t>(to_uint(args));
    return [range](std::size_t domain) {
      if (range == 0 || domain % range != 0) throw Error(ErrorKind::NotBalanced, "M must divide |A|");
      HashTable base(domain);
      for (std::size_t a = 0; a < domain; ++a) base[a] = static_cast<std::uint32_t>(a * range / domain);
      return permutation_family(std::move(base), range);
    };
  }
  parse_fail("family must be toeplitz:q,m,k or permutation:M");
}

std::vector<double> parse_grid(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3) parse_fail("grid must be start:stop:step");
  return rate_grid(to_double(parts[0]), to_double(parts[1]), to_double(parts[2]));
}

std::vector<std::uint64_t> parse_uints(const std::string& spec, std::size_t expected) {
  std::vector<std::uint64_t> out;
  for (const auto& p : split(spec, ',')) out.push_back(to_uint(p));
  if (out.size() != expected) parse_fail("expected " + std::to_string(expected) + " comma-separated integers");
  return out;
}

}  // namespace rpa::io
