#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gphase/engine.hpp"

namespace gphase::cli {

enum class OutputFormat { Csv, Json };

/// Which probe bases a protocol run measures. Both is the default; the
/// single-basis modes record 0 for the basis that was not measured.
enum class BasisPair { Both, XOnly, YOnly };

enum class GaugeChoice { None, Half };

struct RunConfig {
  double phi_total = 0.0;                      // total loop angle, in (0, 2*pi]
  std::size_t n_steps = 1;                     // run/qasm: increments; sweep: grid points
  std::optional<std::uint64_t> shots = 8192;   // nullopt = exact expectations
  std::uint64_t seed = 1;
  BasisPair basis_pair = BasisPair::Both;
  double noise_p = 0.0;                        // probe depolarizing probability
  OutputFormat format = OutputFormat::Csv;
  std::string output_path;                     // empty = stdout (qasm: basename)

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

/// Angle syntax: raw radians ("1.0472") or exact multiples of pi
/// ("pi", "2pi", "pi/6", "-3pi/4", "0.5pi").
double parse_angle(const std::string& text);

/// Comma-separated reals ("0.5,-0.866").
std::vector<double> parse_q_list(const std::string& text);

/// Run the protocol for one total angle phi split into n_steps equal
/// increments, per the sampling options in cfg (cfg.phi_total/n_steps are
/// ignored here; seed is explicit so sweeps can derive per-point seeds).
/// Shot mode draws the X basis first, then the Y basis, from one stream.
engine::PhaseRecord run_protocol_point(double phi, std::size_t n_steps,
                                       const RunConfig& cfg, std::uint64_t seed);

/// One record at cfg.phi_total with cfg.n_steps increments.
engine::PhaseRecord cmd_run(const RunConfig& cfg);

/// Stepped accumulation: point k (1-based, k <= cfg.n_steps) runs a k-step
/// protocol up to phi_k = cfg.phi_total * k / cfg.n_steps. Point k uses seed
/// cfg.seed + k - 1. Defaults (2*pi, 12) give the pi/6 grid.
std::vector<engine::PhaseRecord> cmd_sweep(const RunConfig& cfg);

struct OracleReport {
  bool open_path = false;      // phi_total != 2*pi: report only, no holonomy claim
  double phi_total = 0.0;
  GaugeChoice gauge = GaugeChoice::None;
  double protocol_phase = 0.0;       // exact-protocol phase_arg
  double pancharatnam = 0.0;         // closed loops only
  std::size_t loop_points = 0;
  double max_abs_connection = 0.0;
  double expected_connection = 0.0;  // 0 for parallel transport, f' for a gauge
  double max_connection_deviation = 0.0;
  double phase_gap = 0.0;            // circular |protocol - pancharatnam|
  bool transport_ok = false;
  bool agree = false;

  bool ok() const { return open_path || (transport_ok && agree); }
  std::string text() const;
};

/// Compare the exact protocol phase against the independent branch
/// diagnostics: the discrete loop phase on cfg.n_steps points and the
/// connection sampled at 64 points with h = 1e-5. Gauge Half applies
/// f(phi) = phi/2 to the branch before the checks.
OracleReport cmd_oracle(const RunConfig& cfg, GaugeChoice gauge);

struct QasmPaths {
  std::string x_path;
  std::string y_path;
};

/// Write the transpiled X- and Y-basis circuits for cfg to
/// "<basename>_x.qasm" and "<basename>_y.qasm" (basename from
/// cfg.output_path, default "protocol").
QasmPaths cmd_qasm(const RunConfig& cfg);

/// Split levels (ascending) of the model file at displacement q.
std::vector<double> cmd_vibronic(const std::string& model_path,
                                 const std::vector<double>& q);

std::string to_csv(const std::vector<engine::PhaseRecord>& records);
std::string to_json(const std::vector<engine::PhaseRecord>& records);
std::string record_json(const engine::PhaseRecord& record);
std::string levels_json(const std::vector<double>& levels);

}  // namespace gphase::cli
