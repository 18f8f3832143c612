#pragma once

#include <string>

#include "json.hpp"

#include "qroof/bipartite.hpp"
#include "qroof/channel.hpp"
#include "qroof/minkowski.hpp"

namespace qroof::io {

using ordered_json = nlohmann::ordered_json;

/// Channel descriptor, one of
///   {"lambda": [[3],[3],[3]], "t": [3]}
///   {"canonical": {"alpha", "beta", "omega": [3], "xi": [3]}}
///   {"named": {"type": "identity" | "unital" | "axial" | "amplitude_damping"
///              | "phase_damping" | "depolarizing", ...parameters}}
/// Malformed input throws ParseError; bad parameter values OutOfRange or NotPositiveMap.
AffineMap parse_channel(const nlohmann::json& j);

/// {"bloch": [3]} or {"matrix": [[[re,im],[re,im]],[[re,im],[re,im]]]}.
FourVector parse_state(const nlohmann::json& j);

/// {"dims": [2,n], "mixture": [{"weight": p, "ket": [[re,im], ...]}, ...]} or
/// {"dims": [2,n], "matrix": [[re,im], ...]} (row-major, flat or nested by row).
BipartiteState parse_bipartite(const nlohmann::json& j);

ordered_json to_json(const AffineMap& phi);
ordered_json to_json(const FourVector& v);
ordered_json to_json(const Eigen::Matrix2cd& m);

/// Reads and parses a JSON file; ParseError if unreadable or malformed.
nlohmann::json read_json_file(const std::string& path);

/// Shortest-round-trip-safe decimal with 17 significant digits, '.' separator, no locale.
std::string format_number(double value);

}  // namespace qroof::io
