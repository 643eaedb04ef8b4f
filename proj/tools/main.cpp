#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gphase/cli.hpp"
#include "gphase/numfmt.hpp"

namespace cli = gphase::cli;

namespace {

struct CommonOptions {
  std::string phi = "2pi";
  std::size_t steps = 1;
  std::uint64_t shots = 8192;
  bool exact = false;
  std::uint64_t seed = 1;
  double noise_p = 0.0;
  std::string basis = "both";
  std::string format = "csv";
  std::string out;
};

void add_sampling_flags(CLI::App* cmd, CommonOptions& o) {
  auto* shots_opt =
      cmd->add_option("--shots", o.shots, "measurement shots per basis (default 8192)");
  cmd->add_flag("--exact", o.exact, "exact expectations instead of sampling")
      ->excludes(shots_opt);
  cmd->add_option("--seed", o.seed, "sampling seed (default 1)");
  cmd->add_option("--noise-p", o.noise_p, "probe depolarizing probability in [0, 1]");
  cmd->add_option("--basis", o.basis, "measured bases (default both)")
      ->check(CLI::IsMember({"both", "x", "y"}));
  cmd->add_option("--format", o.format, "output format (default csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out, "output file (default stdout)");
}

cli::RunConfig make_config(const CommonOptions& o) {
  cli::RunConfig cfg;
  cfg.phi_total = cli::parse_angle(o.phi);
  cfg.n_steps = o.steps;
  if (o.exact) {
    cfg.shots.reset();
  } else {
    cfg.shots = o.shots;
  }
  cfg.seed = o.seed;
  cfg.noise_p = o.noise_p;
  if (o.basis == "x") {
    cfg.basis_pair = cli::BasisPair::XOnly;
  } else if (o.basis == "y") {
    cfg.basis_pair = cli::BasisPair::YOnly;
  }
  cfg.format = (o.format == "json") ? cli::OutputFormat::Json : cli::OutputFormat::Csv;
  cfg.output_path = o.out;
  return cfg;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  file << text;
  if (!file) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"probe-qubit interferometry around a conical intersection"};
  app.require_subcommand(1);

  CommonOptions run_o;
  CommonOptions sweep_o;
  sweep_o.steps = 12;
  CommonOptions oracle_o;
  oracle_o.steps = 12;
  CommonOptions qasm_o;
  std::string gauge_text = "none";
  std::string model_path;
  std::string q_text;
  std::string vib_format = "text";
  std::string vib_out;

  auto* run_cmd = app.add_subcommand("run", "measure one protocol point");
  run_cmd->add_option("--phi", run_o.phi, "total loop angle (2pi, pi/6, or radians)")
      ->required();
  run_cmd->add_option("--steps", run_o.steps, "loop increments (default 1)");
  add_sampling_flags(run_cmd, run_o);

  auto* sweep_cmd = app.add_subcommand("sweep", "accumulate the loop point by point");
  sweep_cmd->add_option("--phi", sweep_o.phi, "total loop angle (default 2pi)");
  sweep_cmd->add_option("--steps", sweep_o.steps, "grid points (default 12)");
  add_sampling_flags(sweep_cmd, sweep_o);

  auto* oracle_cmd =
      app.add_subcommand("oracle", "check the protocol phase against the branch diagnostics");
  oracle_cmd->add_option("--phi", oracle_o.phi, "total loop angle (default 2pi)");
  oracle_cmd->add_option("--steps", oracle_o.steps, "loop points (default 12, minimum 3)");
  oracle_cmd->add_option("--seed", oracle_o.seed, "unused placeholder for config parity");
  oracle_cmd->add_option("--gauge", gauge_text, "branch gauge (default none)")
      ->check(CLI::IsMember({"none", "half"}));
  oracle_cmd->add_option("--out", oracle_o.out, "output file (default stdout)");

  auto* qasm_cmd = app.add_subcommand("qasm", "write transpiled circuits as OpenQASM 2.0");
  qasm_cmd->add_option("--phi", qasm_o.phi, "total loop angle (default 2pi)");
  qasm_cmd->add_option("--steps", qasm_o.steps, "loop increments (default 1)");
  qasm_cmd->add_option("--out", qasm_o.out, "basename for <out>_x.qasm / <out>_y.qasm");

  auto* vib_cmd = app.add_subcommand("vibronic", "split levels of a vibronic model file");
  vib_cmd->add_option("--model", model_path, "model file")->required();
  vib_cmd->add_option("--q", q_text, "mode displacements, comma-separated")->required();
  vib_cmd->add_option("--format", vib_format, "output format (default text)")
      ->check(CLI::IsMember({"text", "json"}));
  vib_cmd->add_option("--out", vib_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run_cmd->parsed()) {
      const cli::RunConfig cfg = make_config(run_o);
      const auto rec = cli::cmd_run(cfg);
      emit(cfg.output_path, cfg.format == cli::OutputFormat::Json
                                ? cli::record_json(rec)
                                : cli::to_csv({rec}));
    } else if (sweep_cmd->parsed()) {
      const cli::RunConfig cfg = make_config(sweep_o);
      const auto records = cli::cmd_sweep(cfg);
      emit(cfg.output_path, cfg.format == cli::OutputFormat::Json ? cli::to_json(records)
                                                                  : cli::to_csv(records));
    } else if (oracle_cmd->parsed()) {
      const cli::RunConfig cfg = make_config(oracle_o);
      const cli::GaugeChoice gauge =
          (gauge_text == "half") ? cli::GaugeChoice::Half : cli::GaugeChoice::None;
      const cli::OracleReport report = cli::cmd_oracle(cfg, gauge);
      emit(cfg.output_path, report.text());
      if (!report.ok()) return 1;
    } else if (qasm_cmd->parsed()) {
      const cli::RunConfig cfg = make_config(qasm_o);
      const cli::QasmPaths paths = cli::cmd_qasm(cfg);
      std::cout << paths.x_path << "\n" << paths.y_path << "\n";
    } else if (vib_cmd->parsed()) {
      const std::vector<double> levels = cli::cmd_vibronic(model_path, cli::parse_q_list(q_text));
      if (vib_format == "json") {
        emit(vib_out, cli::levels_json(levels));
      } else {
        std::string text;
        for (double level : levels) text += gphase::format_double(level) + "\n";
        emit(vib_out, text);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
