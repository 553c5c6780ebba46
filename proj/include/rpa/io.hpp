#pragma once

// JSON and shorthand readers for the command-line front end, and
// locale-independent number formatting.

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rpa/hashfam.hpp"
#include "rpa/prob.hpp"

namespace rpa::io {

using nlohmann::json;

/// `precision` digits after the point, in fixed notation for magnitudes in
/// [1e-4, 1e15) and scientific otherwise; '.' regardless of locale.
std::string format_number(double x, int precision);
/// x as it would read back from format_number.
double round_printed(double x, int precision);
/// Copy of j with every floating-point number rounded.
json rounded(const json& j, int precision);

json load_json(const std::string& path);

/// [p0, p1, ...] or {"probs": [...], "labels": [...]}.
Dist dist_from_json(const json& j);
/// [[row], ...] or {"table": [[row], ...], "rows": [labels], "cols": [labels]}.
JointDist joint_from_json(const json& j);
/// [[row], ...] or {"inputs": [...], "outputs": [...], "rows": [[row], ...]}.
Channel channel_from_json(const json& j);
/// {"module": {"kind": "Zd" | "GF(q)^n" | "product", "params": ...},
///  "noise": Dist, "sideInfo": JointDist (optional)}.
AdditiveSpec additive_from_json(const json& j);

/// `bern:p`, `uniform:n`, or a JSON file.
Dist parse_dist(const std::string& spec);
/// `bsc:p`, `identity:n`, or a JSON file.
Channel parse_channel(const std::string& spec);
/// `bsc:p` (uniform bit through the BSC) or a JSON file.
JointDist parse_joint(const std::string& spec);
/// `bsc:p`, `additive:q,m,NOISE` (NOISE a distribution spec over F_q^m), or
/// a JSON file in the additive_from_json layout.
AdditiveSpec parse_additive(const std::string& spec);

/// `toeplitz:q,m,k` or `permutation:M`; the result builds the family for a
/// given domain size.
std::function<HashFamily(std::size_t)> parse_family(const std::string& spec);

/// `start:stop:step`, inclusive.
std::vector<double> parse_grid(const std::string& spec);
/// Comma-separated unsigned integers.
std::vector<std::uint64_t> parse_uints(const std::string& spec, std::size_t expected);

}  // namespace rpa::io
