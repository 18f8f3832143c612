#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qroof/error.hpp"
#include "qroof/io.hpp"
#include "qroof/oracle.hpp"
#include "qroof/roof.hpp"

namespace qroof::cli {

inline constexpr const char* kToolName = "qroof";
inline constexpr const char* kToolVersion = "0.1.0";

struct Settings {
  double tol_psd = kDefaultPsdTolerance;
  double tol_causal = kDefaultCausalTolerance;
  /// Adds wall-clock timing to reports. Off by default so that reports are byte-reproducible.
  bool timing = false;
  OracleConfig oracle;

  RoofOptions roof_options() const { return {tol_psd, tol_causal, true}; }
};

/// Stable process exit codes: 0 ok, 1 internal, 2 parse, 3 not positive, 4 invalid state, 5 rank.
int exit_code(ErrorCode code);

io::ordered_json channel_info(const nlohmann::json& channel, const Settings& settings);

io::ordered_json concurrence_report(const nlohmann::json& channel, const nlohmann::json& state, bool with_oracle,
                                    bool with_decomposition, const Settings& settings);

io::ordered_json reduce_report(const nlohmann::json& bipartite, bool then_concurrence, const Settings& settings);

io::ordered_json oracle_report(const nlohmann::json& channel, const nlohmann::json& state, bool sufficiency,
                               const Settings& settings);

/// Inclusive linear range "name=start:stop:count"; count 1 yields start, count 0 nothing.
struct ParamRange {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  int count = 0;

  double value(int i) const;
};

ParamRange parse_param_range(const std::string& spec);

/// Replaces every string "$name" in the template with the current parameter value.
nlohmann::json substitute(const nlohmann::json& tmpl, const std::vector<std::pair<std::string, double>>& values);

struct SweepOptions {
  std::vector<ParamRange> ranges;
  std::optional<nlohmann::json> state;
  /// Points per axis of a cubic grid of Bloch vectors (those inside the ball are kept); 0 disables.
  int grid = 0;
  int jobs = 1;
};

/// One CSV row per point of the parameter grid (first range varies slowest), times the
/// state grid when enabled. Failing rows carry the exit code in the 'error' column.
std::string sweep_csv(const nlohmann::json& tmpl, const SweepOptions& options, const Settings& settings);

/// Pretty JSON followed by a newline.
std::string dump(const io::ordered_json& report);

}  // namespace qroof::cli
