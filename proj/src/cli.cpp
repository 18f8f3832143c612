#include "qroof/cli.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "qroof/bipartite.hpp"
#include "qroof/channel.hpp"

namespace qroof::cli {

using io::ordered_json;

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::OutOfRange:
    case ErrorCode::WrongDims:
    case ErrorCode::InvalidConfig:
      return 2;
    case ErrorCode::NotPositiveMap: return 3;
    case ErrorCode::InvalidState: return 4;
    case ErrorCode::RankTooHigh: return 5;
    case ErrorCode::NoPsdWindow:
    case ErrorCode::AmbiguousW0:
      return 1;
  }
  return 1;
}

namespace {

using Clock = std::chrono::steady_clock;

ordered_json header(const char* command) {
  ordered_json out;
  out["tool"] = kToolName;
  out["version"] = kToolVersion;
  out["command"] = command;
  return out;
}

ordered_json tolerances(const Settings& s) {
  ordered_json out;
  out["tol_psd"] = s.tol_psd;
  out["tol_causal"] = s.tol_causal;
  out["positivity"] = kPositivityTolerance;
  out["complete_positivity"] = kCompletePositivityTolerance;
  return out;
}

ordered_json oracle_config(const OracleConfig& c) {
  ordered_json out;
  out["grid_resolution"] = c.grid_resolution;
  out["refine_iterations"] = c.refine_iterations;
  out["n_points"] = c.n_points;
  out["restarts"] = c.restarts;
  out["seed"] = c.seed;
  return out;
}

AffineMap positive_channel(const nlohmann::json& channel) {
  AffineMap phi = io::parse_channel(channel);
  if (!is_positive(phi)) throw Error(ErrorCode::NotPositiveMap, "channel does not send the Bloch ball into itself");
  return phi;
}

void add_roof(ordered_json& out, const RoofSolution& sol, const Settings& s) {
  out["w0"] = sol.w0;
  out["psd_interval"] = {sol.psd_interval.lower, sol.psd_interval.upper};
  out["flat"] = sol.flat;
  out["degenerate"] = sol.degenerate;
  out["kernel_dim"] = sol.kernel_basis.size();
  out["kernel_vector"] = io::to_json(sol.n);
  out["kernel_causal_class"] = sol.degenerate ? "LightLike" : to_string(causal_class(sol.n, s.tol_causal));
  out["solver"] = sol.used_fallback ? "eigenvalue-bisection" : "secular";
}

void add_timing(ordered_json& out, const Settings& s, Clock::time_point start) {
  if (!s.timing) return;
  out["timing"] = {{"seconds", std::chrono::duration<double>(Clock::now() - start).count()}};
}

}  // namespace

ordered_json channel_info(const nlohmann::json& channel, const Settings& settings) {
  const auto start = Clock::now();
  const AffineMap phi = positive_channel(channel);
  ordered_json out = header("channel-info");
  out["channel"] = io::to_json(phi);
  out["positive"] = true;
  out["completely_positive"] = is_completely_positive(phi);
  RoofOptions options = settings.roof_options();
  options.check_positivity = false;
  add_roof(out, solve_w0(phi, options), settings);
  out["tolerances"] = tolerances(settings);
  add_timing(out, settings, start);
  return out;
}

ordered_json concurrence_report(const nlohmann::json& channel, const nlohmann::json& state, bool with_oracle,
                                bool with_decomposition, const Settings& settings) {
  const auto start = Clock::now();
  const AffineMap phi = positive_channel(channel);
  const FourVector rho = io::parse_state(state);
  validate_state(rho);

  ordered_json out = header("concurrence");
  out["channel"] = io::to_json(phi);
  out["positive"] = true;
  out["completely_positive"] = is_completely_positive(phi);
  RoofOptions options = settings.roof_options();
  options.check_positivity = false;
  const RoofSolution sol = solve_w0(phi, options);
  add_roof(out, sol, settings);
  out["state"] = io::to_json(rho);
  const double c = concurrence(sol, rho);
  out["concurrence"] = c;

  if (with_decomposition) {
    const Decomposition d = optimal_decomposition(sol, rho);
    ordered_json comps = ordered_json::array();
    for (const auto& comp : d.components) {
      ordered_json entry;
      entry["weight"] = comp.weight;
      entry["pure"] = io::to_json(comp.pure);
      entry["concurrence"] = pure_state_concurrence(phi, comp.pure);
      comps.push_back(entry);
    }
    out["decomposition"] = {{"components", comps}, {"degenerate_leaf", d.degenerate_leaf}};
  }
  if (with_oracle) {
    const double value = brute_force_concurrence(phi, rho, settings.oracle);
    ordered_json o;
    o["value"] = value;
    o["gap"] = value - c;
    o["config"] = oracle_config(settings.oracle);
    out["oracle"] = o;
  }
  out["tolerances"] = tolerances(settings);
  add_timing(out, settings, start);
  return out;
}

ordered_json reduce_report(const nlohmann::json& bipartite, bool then_concurrence, const Settings& settings) {
  const auto start = Clock::now();
  const BipartiteState s = io::parse_bipartite(bipartite);
  const InducedMap induced = induced_map(s);

  ordered_json out = header("reduce");
  out["dims"] = {2, s.n()};
  out["rank"] = s.rank();
  ordered_json basis = ordered_json::array();
  for (int k = 0; k < 2; ++k) {
    ordered_json col = ordered_json::array();
    for (Eigen::Index i = 0; i < induced.basis.rows(); ++i) col.push_back({induced.basis(i, k).real(), induced.basis(i, k).imag()});
    basis.push_back(col);
  }
  out["support_basis"] = basis;
  ordered_json blocks;
  blocks["d11"] = io::to_json(induced.d[0][0]);
  blocks["d12"] = io::to_json(induced.d[0][1]);
  blocks["d21"] = io::to_json(induced.d[1][0]);
  blocks["d22"] = io::to_json(induced.d[1][1]);
  out["d_blocks"] = blocks;
  out["channel"] = io::to_json(induced.map);
  out["completely_positive"] = is_completely_positive(induced.map);
  out["coefficient_state"] = io::to_json(induced.coefficients);

  if (then_concurrence) {
    const EofBound eof = eof_bound(s, settings.roof_options());
    out["concurrence"] = eof.concurrence;
    out["eof"] = {{"value", eof.value}, {"exact", eof.exact}};
    if (s.n() == 2) out["wootters_concurrence"] = wootters_concurrence(s);
  }
  out["tolerances"] = tolerances(settings);
  add_timing(out, settings, start);
  return out;
}

ordered_json oracle_report(const nlohmann::json& channel, const nlohmann::json& state, bool sufficiency,
                           const Settings& settings) {
  const auto start = Clock::now();
  const AffineMap phi = positive_channel(channel);
  const FourVector rho = io::parse_state(state);
  validate_state(rho);

  ordered_json out = header("oracle");
  out["channel"] = io::to_json(phi);
  out["state"] = io::to_json(rho);
  RoofOptions options = settings.roof_options();
  options.check_positivity = false;
  const double roof = concurrence(solve_w0(phi, options), rho);
  out["concurrence"] = roof;
  const double value = brute_force_concurrence(phi, rho, settings.oracle);
  out["oracle"] = value;
  out["gap"] = value - roof;
  if (sufficiency) {
    const SufficiencyReport r = two_point_sufficiency(phi, rho, settings.oracle);
    out["sufficiency"] = {{"min2", r.min2}, {"min3", r.min3}, {"min4", r.min4}, {"tolerance", kSufficiencyTolerance},
                          {"two_point_sufficient", r.sufficient}};
  }
  out["config"] = oracle_config(settings.oracle);
  out["tolerances"] = tolerances(settings);
  add_timing(out, settings, start);
  return out;
}

double ParamRange::value(int i) const {
  if (count <= 1) return start;
  return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
}

ParamRange parse_param_range(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::ParseError, "range must look like name=start:stop:count");
  ParamRange r;
  r.name = spec.substr(0, eq);
  std::string rest = spec.substr(eq + 1);
  std::vector<std::string> parts;
  std::stringstream ss(rest);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 3) throw Error(ErrorCode::ParseError, "range must look like name=start:stop:count");
  try {
    std::size_t used = 0;
    r.start = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument(parts[0]);
    r.stop = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
    r.count = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "bad range '" + spec + "'");
  }
  if (r.count < 0) throw Error(ErrorCode::ParseError, "range count must be >= 0");
  return r;
}

nlohmann::json substitute(const nlohmann::json& tmpl, const std::vector<std::pair<std::string, double>>& values) {
  if (tmpl.is_string()) {
    const auto& s = tmpl.get_ref<const std::string&>();
    if (!s.empty() && s.front() == '$') {
      for (const auto& [name, value] : values)
        if (s.substr(1) == name) return value;
      throw Error(ErrorCode::ParseError, "no range given for placeholder '" + s + "'");
    }
    return tmpl;
  }
  if (tmpl.is_array()) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& e : tmpl) out.push_back(substitute(e, values));
    return out;
  }
  if (tmpl.is_object()) {
    nlohmann::json out = nlohmann::json::object();
    for (auto it = tmpl.begin(); it != tmpl.end(); ++it) out[it.key()] = substitute(it.value(), values);
    return out;
  }
  return tmpl;
}

namespace {

std::vector<Eigen::Vector3d> bloch_grid(int n) {
  std::vector<Eigen::Vector3d> points;
  auto coord = [n](int i) { return n == 1 ? 0.0 : -1.0 + 2.0 * i / (n - 1); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Eigen::Vector3d p(coord(i), coord(j), coord(k));
        if (p.norm() <= 1.0) points.push_back(p);
      }
  return points;
}

}  // namespace

std::string sweep_csv(const nlohmann::json& tmpl, const SweepOptions& options, const Settings& settings) {
  using io::format_number;
  const bool with_grid = options.grid > 0;
  const bool with_state = options.state.has_value() || with_grid;

  std::vector<Eigen::Vector3d> states;
  if (with_grid) {
    states = bloch_grid(options.grid);
  } else if (options.state) {
    const FourVector s = io::parse_state(*options.state);
    validate_state(s);
    states.push_back(s.x);
  }

  std::ostringstream head;
  for (const auto& r : options.ranges) head << r.name << ',';
  if (with_grid) head << "x1,x2,x3,";
  head << "w0,w1,w2,flat";
  if (with_state) head << ",concurrence";
  head << ",error\n";

  std::size_t n_params = 1;
  for (const auto& r : options.ranges) n_params *= static_cast<std::size_t>(r.count);
  if (options.ranges.empty()) n_params = 1;
  const std::size_t per_point = with_state ? states.size() : 1;
  const std::size_t n_rows = n_params * per_point;

  // Template placeholders are checked once so that a typo fails the whole sweep.
  if (n_params > 0) {
    std::vector<std::pair<std::string, double>> probe;
    for (const auto& r : options.ranges) probe.emplace_back(r.name, r.start);
    (void)substitute(tmpl, probe);
  }

  std::vector<std::string> rows(n_params);
  auto compute = [&](std::size_t index) {
    std::vector<std::pair<std::string, double>> values;
    std::size_t rem = index;
    std::vector<int> digits(options.ranges.size());
    for (std::size_t k = options.ranges.size(); k-- > 0;) {
      const auto count = static_cast<std::size_t>(options.ranges[k].count);
      digits[k] = static_cast<int>(rem % count);
      rem /= count;
    }
    std::string prefix;
    for (std::size_t k = 0; k < options.ranges.size(); ++k) {
      const double v = options.ranges[k].value(digits[k]);
      values.emplace_back(options.ranges[k].name, v);
      prefix += format_number(v) + ',';
    }

    std::ostringstream out;
    auto emit_error = [&](int code) {
      for (std::size_t s = 0; s < per_point; ++s) {
        out << prefix;
        if (with_grid) out << format_number(states[s](0)) << ',' << format_number(states[s](1)) << ',' << format_number(states[s](2)) << ',';
        out << ",,,";
        if (with_state) out << ',';
        out << ',' << code << '\n';
      }
    };
    try {
      const AffineMap phi = io::parse_channel(substitute(tmpl, values));
      if (!is_positive(phi)) throw Error(ErrorCode::NotPositiveMap, "not positive");
      RoofOptions ro = settings.roof_options();
      ro.check_positivity = false;
      const RoofSolution sol = solve_w0(phi, ro);
      const std::string roof_cols = format_number(sol.w0) + ',' + format_number(sol.psd_interval.lower) + ',' +
                                    format_number(sol.psd_interval.upper) + ',' + (sol.flat ? "true" : "false");
      if (!with_state) {
        out << prefix << roof_cols << ",\n";
      } else {
        for (const auto& x : states) {
          out << prefix;
          if (with_grid) out << format_number(x(0)) << ',' << format_number(x(1)) << ',' << format_number(x(2)) << ',';
          out << roof_cols << ',' << format_number(concurrence(sol, FourVector::state(x))) << ",\n";
        }
      }
    } catch (const Error& e) {
      out.str("");
      emit_error(exit_code(e.code()));
    } catch (const std::exception&) {
      out.str("");
      emit_error(1);
    }
    rows[index] = out.str();
  };

  const int jobs = std::max(1, options.jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n_params; i = next++) compute(i);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::string csv = head.str();
  csv.reserve(csv.size() + n_rows * 64);
  for (const auto& r : rows) csv += r;
  return csv;
}

std::string dump(const ordered_json& report) { return report.dump(2) + "\n"; }

}  // namespace qroof::cli
