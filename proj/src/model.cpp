#include "gphase/model.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace gphase::model {

using numkit::ComplexMatrix;
using numkit::ComplexVector;
using numkit::cx;

VibronicSystem::VibronicSystem(std::size_t m,
                               std::vector<ComplexMatrix> couplings,
                               std::vector<std::string> mode_labels)
    : m_(m), couplings_(std::move(couplings)), mode_labels_(std::move(mode_labels)) {
  if (m_ == 0) {
    throw std::invalid_argument("VibronicSystem: level dimension must be positive");
  }
  if (couplings_.empty()) {
    throw std::invalid_argument("VibronicSystem: at least one coupling mode required");
  }
  if (couplings_.size() != mode_labels_.size()) {
    throw std::invalid_argument("VibronicSystem: one label per coupling matrix required");
  }
  for (std::size_t k = 0; k < couplings_.size(); ++k) {
    const ComplexMatrix& c = couplings_[k];
    if (c.rows() != m_ || c.cols() != m_) {
      throw std::invalid_argument("VibronicSystem: coupling '" + mode_labels_[k] +
                                  "' is not " + std::to_string(m_) + "x" +
                                  std::to_string(m_));
    }
    if (!c.is_finite() || !c.is_hermitian()) {
      throw std::invalid_argument("VibronicSystem: coupling '" + mode_labels_[k] +
                                  "' is not Hermitian within 1e-12");
    }
  }
}

ComplexMatrix hamiltonian(const ModelParams& p) {
  if (!(p.K >= 0.0)) {
    throw std::invalid_argument("hamiltonian: K must be non-negative");
  }
  const double c = std::cos(p.phi);
  const double s = std::sin(p.phi);
  return ComplexMatrix(2, 2, {cx{p.K * (1.0 + c), 0.0}, cx{p.K * s, 0.0},
                              cx{p.K * s, 0.0}, cx{p.K * (1.0 - c), 0.0}});
}

ComplexMatrix hamiltonian_traceless(const ModelParams& p) {
  if (!(p.K >= 0.0)) {
    throw std::invalid_argument("hamiltonian_traceless: K must be non-negative");
  }
  const double c = std::cos(p.phi);
  const double s = std::sin(p.phi);
  return ComplexMatrix(2, 2, {cx{p.K * c, 0.0}, cx{p.K * s, 0.0},
                              cx{p.K * s, 0.0}, cx{-p.K * c, 0.0}});
}

std::pair<ComplexVector, ComplexVector> eigenbranches(double phi) {
  const double c = std::cos(0.5 * phi);
  const double s = std::sin(0.5 * phi);
  return {ComplexVector{cx{c, 0.0}, cx{s, 0.0}},
          ComplexVector{cx{-s, 0.0}, cx{c, 0.0}}};
}

std::pair<double, double> cone_energies(const ModelParams& p, double x, double y) {
  const double e = std::hypot(p.alpha * x + p.beta * y, p.b * y);
  return {e, -e};
}

ComplexMatrix evolution(double phi) {
  const double c = std::cos(0.5 * phi);
  const double s = std::sin(0.5 * phi);
  return ComplexMatrix(2, 2, {cx{c, 0.0}, cx{-s, 0.0}, cx{s, 0.0}, cx{c, 0.0}});
}

ComplexMatrix evolution_step(double phi, double dphi) {
  return evolution(phi + dphi);
}

ComplexMatrix outer_product_operator(const std::vector<ComplexVector>& inputs,
                                     const std::vector<ComplexVector>& outputs) {
  if (inputs.empty() || inputs.size() != outputs.size()) {
    throw std::invalid_argument(
        "outer_product_operator: need matching, non-empty input/output lists");
  }
  const std::size_t in_dim = inputs[0].dim();
  const std::size_t out_dim = outputs[0].dim();
  for (const ComplexVector& v : inputs) {
    if (v.dim() != in_dim) {
      throw std::invalid_argument("outer_product_operator: input dimensions differ");
    }
  }
  for (const ComplexVector& v : outputs) {
    if (v.dim() != out_dim) {
      throw std::invalid_argument("outer_product_operator: output dimensions differ");
    }
  }
  constexpr double tol = 1e-10;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    for (std::size_t j = i; j < inputs.size(); ++j) {
      const cx g = numkit::inner(inputs[i], inputs[j]);
      const double expect = (i == j) ? 1.0 : 0.0;
      if (std::abs(g - expect) > tol) {
        throw std::invalid_argument(
            "outer_product_operator: inputs are not orthonormal within 1e-10");
      }
    }
  }
  ComplexMatrix op(out_dim, in_dim);
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    op = op + numkit::outer(outputs[k], inputs[k]);
  }
  return op;
}

ComplexMatrix vibronic_secular(const VibronicSystem& sys, const std::vector<double>& q) {
  if (q.size() != sys.mode_count()) {
    throw std::invalid_argument("vibronic_secular: expected " +
                                std::to_string(sys.mode_count()) +
                                " displacements, got " + std::to_string(q.size()));
  }
  ComplexMatrix v(sys.m(), sys.m());
  for (std::size_t k = 0; k < q.size(); ++k) {
    const ComplexMatrix& c = sys.couplings()[k];
    for (std::size_t i = 0; i < sys.m(); ++i) {
      for (std::size_t j = 0; j < sys.m(); ++j) v(i, j) += q[k] * c(i, j);
    }
  }
  return v;
}

std::vector<double> split_levels(const VibronicSystem& sys, const std::vector<double>& q) {
  return numkit::eig_hermitian(vibronic_secular(sys, q)).eigenvalues;
}

namespace {

[[noreturn]] void parse_fail(const std::string& name, std::size_t line,
                             const std::string& msg) {
  throw std::runtime_error(name + ":" + std::to_string(line) + ": " + msg);
}

// Strip comments and surrounding whitespace; empty result means skip.
std::string clean_line(const std::string& raw) {
  std::string s = raw;
  if (auto pos = s.find('#'); pos != std::string::npos) s.erase(pos);
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

bool parse_complex_token(const std::string& tok, cx& out) {
  auto comma = tok.find(',');
  if (comma == std::string::npos) return false;
  const std::string re = tok.substr(0, comma);
  const std::string im = tok.substr(comma + 1);
  try {
    std::size_t used = 0;
    double r = std::stod(re, &used);
    if (used != re.size()) return false;
    double i = std::stod(im, &used);
    if (used != im.size()) return false;
    out = cx{r, i};
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

}  // namespace

VibronicSystem parse_vibronic(std::istream& in, const std::string& name) {
  std::string raw;
  std::size_t line_no = 0;

  std::size_t m = 0;
  bool have_m = false;
  std::vector<ComplexMatrix> couplings;
  std::vector<std::string> labels;

  ComplexMatrix current;
  std::size_t rows_read = 0;
  std::size_t mode_start_line = 0;
  bool in_mode = false;

  auto finish_mode = [&](std::size_t at_line) {
    if (!in_mode) return;
    if (rows_read != m) {
      parse_fail(name, at_line, "mode '" + labels.back() + "' has " +
                 std::to_string(rows_read) + " rows, expected " + std::to_string(m));
    }
    if (!current.is_finite() || !current.is_hermitian()) {
      parse_fail(name, mode_start_line,
                 "coupling for mode '" + labels.back() + "' is not Hermitian within 1e-12");
    }
    couplings.push_back(current);
    in_mode = false;
  };

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = clean_line(raw);
    if (line.empty()) continue;

    std::istringstream ls(line);
    std::string head;
    ls >> head;

    if (!have_m) {
      if (head != "m") parse_fail(name, line_no, "expected 'm <int>' header");
      long long value = 0;
      if (!(ls >> value) || value <= 0) {
        parse_fail(name, line_no, "level dimension must be a positive integer");
      }
      std::string trailing;
      if (ls >> trailing) parse_fail(name, line_no, "unexpected text after dimension");
      m = static_cast<std::size_t>(value);
      have_m = true;
      continue;
    }

    if (head == "mode") {
      finish_mode(line_no);
      std::string label;
      if (!(ls >> label)) parse_fail(name, line_no, "mode line is missing a label");
      std::string trailing;
      if (ls >> trailing) parse_fail(name, line_no, "unexpected text after mode label");
      labels.push_back(label);
      current = ComplexMatrix(m, m);
      rows_read = 0;
      mode_start_line = line_no;
      in_mode = true;
      continue;
    }

    if (!in_mode) parse_fail(name, line_no, "expected 'mode <label>' before matrix rows");
    if (rows_read >= m) {
      parse_fail(name, line_no, "mode '" + labels.back() + "' has more than " +
                 std::to_string(m) + " rows");
    }

    std::istringstream row(line);
    std::string tok;
    std::size_t col = 0;
    while (row >> tok) {
      if (col >= m) parse_fail(name, line_no, "expected " + std::to_string(m) +
                               " entries per row");
      cx value;
      if (!parse_complex_token(tok, value)) {
        parse_fail(name, line_no, "bad complex entry '" + tok + "' (expected re,im)");
      }
      current(rows_read, col++) = value;
    }
    if (col != m) {
      parse_fail(name, line_no, "expected " + std::to_string(m) + " entries, found " +
                 std::to_string(col));
    }
    ++rows_read;
  }

  if (!have_m) parse_fail(name, line_no == 0 ? 1 : line_no, "missing 'm <int>' header");
  finish_mode(line_no == 0 ? 1 : line_no);
  try {
    return VibronicSystem(m, std::move(couplings), std::move(labels));
  } catch (const std::invalid_argument& e) {
    parse_fail(name, line_no == 0 ? 1 : line_no, e.what());
  }
}

VibronicSystem parse_vibronic_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error(path + ": cannot open model file");
  }
  return parse_vibronic(in, path);
}

}  // namespace gphase::model
