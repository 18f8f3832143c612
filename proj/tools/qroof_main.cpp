#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qroof/cli.hpp"

namespace {

int fail(int code, const std::string& message) {
  std::cerr << "qroof: " << message << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace qroof;
  CLI::App app{"Concurrence of stochastic 1-qubit maps and rank-2 states of 2 x n systems"};
  app.require_subcommand(1);
  app.fallthrough();

  cli::Settings settings;
  app.add_option("--tol-psd", settings.tol_psd, "PSD tolerance relative to |Q_0|_F")->capture_default_str();
  app.add_option("--tol-causal", settings.tol_causal, "Minkowski-square tolerance for causal classes")->capture_default_str();
  app.add_option("--seed", settings.oracle.seed, "Oracle seed")->capture_default_str();
  app.add_flag("--timing", settings.timing, "Include wall-clock timing in reports");

  std::string channel_file;
  std::string state_file;
  std::string bipartite_file;
  std::string output_file;

  auto* info = app.add_subcommand("channel-info", "w0, PSD window, kernel and flatness of a channel");
  info->add_option("channel", channel_file, "Channel JSON")->required();

  bool with_oracle = false;
  bool with_decomposition = false;
  auto* conc = app.add_subcommand("concurrence", "Concurrence of a qubit state under a channel");
  conc->add_option("channel", channel_file, "Channel JSON")->required();
  conc->add_option("state", state_file, "State JSON")->required();
  conc->add_flag("--oracle", with_oracle, "Also run the brute-force decomposition search");
  conc->add_flag("--decompose", with_decomposition, "Emit an optimal two-component decomposition");

  bool then_concurrence = false;
  auto* reduce = app.add_subcommand("reduce", "Induced qubit map of a rank-2 state of a 2 x n system");
  reduce->add_option("bipartite", bipartite_file, "Bipartite state JSON")->required();
  reduce->add_flag("--then-concurrence", then_concurrence, "Also compute concurrence and the EoF value/bound");

  std::vector<std::string> params;
  std::optional<std::string> sweep_state;
  int grid = 0;
  int jobs = 1;
  std::string csv_file;
  auto* sweep = app.add_subcommand("sweep", "CSV sweep over a channel template");
  sweep->add_option("template", channel_file, "Channel JSON with \"$name\" placeholders")->required();
  sweep->add_option("--param", params, "name=start:stop:count (repeatable)");
  auto* state_opt = sweep->add_option("--state", sweep_state, "State JSON");
  sweep->add_option("--grid", grid, "Points per axis of a Bloch-ball grid of states")->excludes(state_opt);
  sweep->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  sweep->add_option("--csv", csv_file, "Output CSV (default stdout)");

  bool sufficiency = false;
  auto* oracle = app.add_subcommand("oracle", "Brute-force decomposition search");
  oracle->add_option("channel", channel_file, "Channel JSON")->required();
  oracle->add_option("state", state_file, "State JSON")->required();
  oracle->add_option("--points", settings.oracle.n_points, "Pure states per decomposition")->capture_default_str();
  oracle->add_option("--grid-resolution", settings.oracle.grid_resolution, "Chord directions per azimuth sweep")->capture_default_str();
  oracle->add_option("--refine-iterations", settings.oracle.refine_iterations, "Simplex iterations")->capture_default_str();
  oracle->add_option("--restarts", settings.oracle.restarts, "Local refinements")->capture_default_str();
  oracle->add_flag("--sufficiency", sufficiency, "Compare 2-, 3- and 4-point minima");

  for (auto* sub : {info, conc, reduce, oracle}) sub->add_option("-o,--output", output_file, "Write the report here");

  CLI11_PARSE(app, argc, argv);

  try {
    std::string text;
    if (info->parsed()) {
      text = cli::dump(cli::channel_info(io::read_json_file(channel_file), settings));
    } else if (conc->parsed()) {
      text = cli::dump(cli::concurrence_report(io::read_json_file(channel_file), io::read_json_file(state_file),
                                               with_oracle, with_decomposition, settings));
    } else if (reduce->parsed()) {
      text = cli::dump(cli::reduce_report(io::read_json_file(bipartite_file), then_concurrence, settings));
    } else if (oracle->parsed()) {
      text = cli::dump(cli::oracle_report(io::read_json_file(channel_file), io::read_json_file(state_file), sufficiency,
                                          settings));
    } else if (sweep->parsed()) {
      cli::SweepOptions options;
      for (const auto& p : params) options.ranges.push_back(cli::parse_param_range(p));
      if (sweep_state) options.state = io::read_json_file(*sweep_state);
      options.grid = grid;
      options.jobs = jobs;
      text = cli::sweep_csv(io::read_json_file(channel_file), options, settings);
      output_file = csv_file;
    }

    if (output_file.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(output_file, std::ios::binary);
      if (!out) return fail(2, "cannot write '" + output_file + "'");
      out << text;
    }
    return 0;
  } catch (const Error& e) {
    return fail(cli::exit_code(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(2, e.what());
  } catch (const std::exception& e) {
    return fail(1, e.what());
  }
}
