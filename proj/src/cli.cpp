#include "gphase/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gphase/berry.hpp"
#include "gphase/circuit.hpp"
#include "gphase/model.hpp"
#include "gphase/numfmt.hpp"

namespace gphase::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

double parse_strict_double(const std::string& token, const std::string& what) {
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &consumed);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse " + what + " '" + token + "'");
  }
  if (consumed != token.size()) {
    throw std::invalid_argument("cannot parse " + what + " '" + token + "'");
  }
  return value;
}

/// Equal phi-grid 0 < s_1 < ... < s_n = phi. The last ratio is exactly 1,
/// so the final step hits phi with no rounding.
std::vector<double> step_grid(double phi, std::size_t n) {
  std::vector<double> steps(n);
  for (std::size_t k = 0; k < n; ++k) {
    steps[k] = phi * (static_cast<double>(k + 1) / static_cast<double>(n));
  }
  return steps;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string shots_cell(const std::optional<std::uint64_t>& shots) {
  return shots ? std::to_string(*shots) : std::string("exact");
}

std::string record_fields(const engine::PhaseRecord& r) {
  std::string out;
  out += "\"phi_rad\": " + format_double(r.phi);
  out += ", \"overlap_re\": " + format_double(r.overlap_re);
  out += ", \"overlap_im\": " + format_double(r.overlap_im);
  out += ", \"sigma_x\": " + format_double(r.sigma_x);
  out += ", \"sigma_y\": " + format_double(r.sigma_y);
  out += ", \"phase_arg_rad\": " + format_double(r.phase_arg);
  out += ", \"phase_unwrapped_rad\": " + format_double(r.phase_unwrapped);
  out += ", \"shots\": ";
  out += r.shots ? std::to_string(*r.shots) : std::string("\"exact\"");
  return out;
}

}  // namespace

void RunConfig::validate() const {
  if (!(phi_total > 0.0) || phi_total > kTwoPi) {
    throw std::invalid_argument("phi must lie in (0, 2*pi]");
  }
  if (n_steps == 0) throw std::invalid_argument("steps must be >= 1");
  if (shots && *shots == 0) throw std::invalid_argument("shots must be >= 1");
  if (!(noise_p >= 0.0 && noise_p <= 1.0)) {
    throw std::invalid_argument("noise probability must lie in [0, 1]");
  }
}

double parse_angle(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty angle");
  const auto pos = s.find("pi");
  if (pos == std::string::npos) return parse_strict_double(s, "angle");

  const std::string coef_text = s.substr(0, pos);
  const std::string rest = s.substr(pos + 2);

  double coef = 1.0;
  if (coef_text == "-") {
    coef = -1.0;
  } else if (!coef_text.empty() && coef_text != "+") {
    coef = parse_strict_double(coef_text, "angle");
  }

  double denom = 1.0;
  if (!rest.empty()) {
    if (rest[0] != '/' || rest.size() == 1) {
      throw std::invalid_argument("cannot parse angle '" + text + "'");
    }
    denom = parse_strict_double(rest.substr(1), "angle");
    if (denom == 0.0) throw std::invalid_argument("zero denominator in angle '" + text + "'");
  }
  return coef * kPi / denom;
}

std::vector<double> parse_q_list(const std::string& text) {
  std::vector<double> values;
  std::string remaining = text;
  while (true) {
    const auto comma = remaining.find(',');
    const std::string token = trim(remaining.substr(0, comma));
    if (token.empty()) throw std::invalid_argument("empty entry in displacement list '" + text + "'");
    values.push_back(parse_strict_double(token, "displacement"));
    if (comma == std::string::npos) break;
    remaining = remaining.substr(comma + 1);
  }
  return values;
}

engine::PhaseRecord run_protocol_point(double phi, std::size_t n_steps,
                                       const RunConfig& cfg, std::uint64_t seed) {
  if (n_steps == 0) throw std::invalid_argument("steps must be >= 1");
  if (!(phi > 0.0)) throw std::invalid_argument("phi must be positive");
  const std::vector<double> steps = step_grid(phi, n_steps);

  engine::PhaseRecord rec;
  rec.phi = phi;
  rec.shots = cfg.shots;

  // Interference term <0|M(phi)|0>, straight from the loop operator.
  const numkit::ComplexMatrix loop_op = model::evolution(phi);
  rec.overlap_re = loop_op(0, 0).real();
  rec.overlap_im = loop_op(0, 0).imag();

  // One stream per point; the X basis draws first, then the Y basis, so a
  // (seed, config) pair fixes every count.
  engine::Prng64 rng(seed);
  const auto measure_sigma = [&](circuit::MeasureBasis basis) {
    const circuit::Circuit c = circuit::build_protocol(steps, basis);
    const engine::RunResult r = engine::run(c, engine::StateVector::zero_state(2));
    std::vector<double> probs = engine::marginal_probabilities(r.state, {0});
    if (cfg.noise_p > 0.0) {
      // Probe depolarizing noise pulls both outcomes toward 1/2.
      probs[0] = (1.0 - cfg.noise_p) * probs[0] + cfg.noise_p / 2.0;
      probs[1] = (1.0 - cfg.noise_p) * probs[1] + cfg.noise_p / 2.0;
    }
    if (!cfg.shots) return probs[0] - probs[1];
    const std::vector<std::uint64_t> counts =
        engine::sample_from_probabilities(probs, *cfg.shots, rng);
    return (static_cast<double>(counts[0]) - static_cast<double>(counts[1])) /
           static_cast<double>(*cfg.shots);
  };

  if (cfg.basis_pair != BasisPair::YOnly) {
    rec.sigma_x = measure_sigma(circuit::MeasureBasis::X);
  }
  if (cfg.basis_pair != BasisPair::XOnly) {
    rec.sigma_y = measure_sigma(circuit::MeasureBasis::Y);
  }

  // The interference vanishes at phi = pi, where both expectations can
  // round to exactly zero. The wound angle is genuinely undefined there
  // (atan2's convention value 0 is stored); the unwrapped angle is not:
  // arccos(0) = pi/2 is the exact midpoint value.
  if (rec.sigma_x == 0.0 && rec.sigma_y == 0.0) {
    rec.phase_arg = 0.0;
    rec.phase_unwrapped = std::acos(0.0);
  } else {
    // Shot noise can leave the estimator pair a hair outside the unit
    // disk even though each component is a valid expectation (e.g. an
    // exact -1 along X plus sampled jitter along Y). Project radially
    // back onto the disk before extracting angles: atan2 is unchanged
    // by the rescale, and arccos sees a properly clamped abscissa. The
    // record keeps the raw estimators.
    double sx = rec.sigma_x;
    double sy = rec.sigma_y;
    const double norm2 = sx * sx + sy * sy;
    if (norm2 > 1.0) {
      const double norm = std::sqrt(norm2);
      sx /= norm;
      sy /= norm;
    }
    const engine::PhaseAngles angles = engine::extract_phase(sx, sy);
    rec.phase_arg = angles.arg;
    rec.phase_unwrapped = angles.unwrapped;
  }
  return rec;
}

engine::PhaseRecord cmd_run(const RunConfig& cfg) {
  cfg.validate();
  return run_protocol_point(cfg.phi_total, cfg.n_steps, cfg, cfg.seed);
}

std::vector<engine::PhaseRecord> cmd_sweep(const RunConfig& cfg) {
  cfg.validate();
  std::vector<engine::PhaseRecord> records;
  records.reserve(cfg.n_steps);
  for (std::size_t k = 1; k <= cfg.n_steps; ++k) {
    const double phi_k =
        cfg.phi_total * (static_cast<double>(k) / static_cast<double>(cfg.n_steps));
    records.push_back(run_protocol_point(phi_k, k, cfg, cfg.seed + (k - 1)));
  }
  return records;
}

std::string OracleReport::text() const {
  std::ostringstream os;
  os << (open_path ? "path: open, phi = " : "path: closed loop, phi = ")
     << format_double(phi_total) << " rad, " << loop_points << " points\n";
  os << "gauge: " << (gauge == GaugeChoice::Half ? "f(phi) = phi/2" : "none") << "\n";
  os << "protocol phase_arg: " << format_double(protocol_phase) << "\n";
  if (!open_path) {
    os << "pancharatnam loop phase: " << format_double(pancharatnam) << "\n";
  }
  os << "connection: 64 samples, h = 1e-05, max |A| = " << format_double(max_abs_connection)
     << ", max |A - " << format_double(expected_connection)
     << "| = " << format_double(max_connection_deviation) << "\n";
  os << "parallel transport (bound 1e-06): " << (transport_ok ? "ok" : "FAIL") << "\n";
  if (!open_path) {
    os << "phase agreement: gap = " << format_double(phase_gap) << " (bound 1e-06): "
       << (agree ? "ok" : "FAIL") << "\n";
  }
  os << "verdict: "
     << (open_path ? "open path, no holonomy claim" : (ok() ? "agree" : "disagree")) << "\n";
  return os.str();
}

OracleReport cmd_oracle(const RunConfig& cfg, GaugeChoice gauge) {
  cfg.validate();
  if (cfg.n_steps < 3) throw std::invalid_argument("oracle needs at least 3 loop points");

  OracleReport rep;
  rep.phi_total = cfg.phi_total;
  rep.gauge = gauge;
  rep.loop_points = cfg.n_steps;
  rep.open_path = std::abs(cfg.phi_total - kTwoPi) > 1e-12;

  // The protocol side is compared in exact mode regardless of cfg.shots:
  // shot noise at any practical count dwarfs the 1e-6 agreement bound.
  RunConfig exact_cfg = cfg;
  exact_cfg.shots.reset();
  exact_cfg.noise_p = 0.0;
  exact_cfg.basis_pair = BasisPair::Both;
  rep.protocol_phase =
      run_protocol_point(cfg.phi_total, cfg.n_steps, exact_cfg, cfg.seed).phase_arg;

  berry::Branch branch{
      [](double phi) { return model::eigenbranches(phi).first; }, "upper branch", {}};
  if (gauge == GaugeChoice::Half) {
    branch = berry::gauge_transform(branch, [](double phi) { return 0.5 * phi; });
    rep.expected_connection = 0.5;
  }

  constexpr std::size_t kSamples = 64;
  constexpr double kStep = 1e-5;
  for (std::size_t j = 0; j < kSamples; ++j) {
    const double phi = cfg.phi_total * (static_cast<double>(j) / kSamples);
    const double a = berry::connection(branch, phi, kStep);
    rep.max_abs_connection = std::max(rep.max_abs_connection, std::abs(a));
    rep.max_connection_deviation =
        std::max(rep.max_connection_deviation, std::abs(a - rep.expected_connection));
  }
  rep.transport_ok = rep.max_connection_deviation <= 1e-6;

  if (!rep.open_path) {
    rep.pancharatnam = berry::pancharatnam_phase(branch, cfg.n_steps);
    rep.phase_gap = std::abs(std::remainder(rep.protocol_phase - rep.pancharatnam, kTwoPi));
    rep.agree = rep.phase_gap <= 1e-6;
  }
  return rep;
}

QasmPaths cmd_qasm(const RunConfig& cfg) {
  cfg.validate();
  const std::vector<double> steps = step_grid(cfg.phi_total, cfg.n_steps);
  const std::string base = cfg.output_path.empty() ? "protocol" : cfg.output_path;
  QasmPaths paths{base + "_x.qasm", base + "_y.qasm"};
  write_file(paths.x_path, circuit::to_qasm(circuit::transpile(
                               circuit::build_protocol(steps, circuit::MeasureBasis::X))));
  write_file(paths.y_path, circuit::to_qasm(circuit::transpile(
                               circuit::build_protocol(steps, circuit::MeasureBasis::Y))));
  return paths;
}

std::vector<double> cmd_vibronic(const std::string& model_path,
                                 const std::vector<double>& q) {
  const model::VibronicSystem sys = model::parse_vibronic_file(model_path);
  return model::split_levels(sys, q);
}

std::string to_csv(const std::vector<engine::PhaseRecord>& records) {
  std::string out =
      "phi_rad,overlap_re,overlap_im,sigma_x,sigma_y,phase_arg_rad,phase_unwrapped_rad,shots\n";
  for (const auto& r : records) {
    out += format_double(r.phi) + ',';
    out += format_double(r.overlap_re) + ',';
    out += format_double(r.overlap_im) + ',';
    out += format_double(r.sigma_x) + ',';
    out += format_double(r.sigma_y) + ',';
    out += format_double(r.phase_arg) + ',';
    out += format_double(r.phase_unwrapped) + ',';
    out += shots_cell(r.shots);
    out += '\n';
  }
  return out;
}

std::string to_json(const std::vector<engine::PhaseRecord>& records) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    out += "  {" + record_fields(records[i]) + "}";
    if (i + 1 < records.size()) out += ',';
    out += '\n';
  }
  out += "]\n";
  return out;
}

std::string record_json(const engine::PhaseRecord& record) {
  return "{" + record_fields(record) + "}\n";
}

std::string levels_json(const std::vector<double>& levels) {
  std::string out = "{\"levels\": [";
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_double(levels[i]);
  }
  out += "]}\n";
  return out;
}

}  // namespace gphase::cli
