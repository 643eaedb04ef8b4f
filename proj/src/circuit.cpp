#include "gphase/circuit.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "gphase/model.hpp"
#include "gphase/numfmt.hpp"

namespace gphase::circuit {

using numkit::ComplexMatrix;
using numkit::cx;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;

double unitarity_error(const ComplexMatrix& u) {
  return (numkit::matmul(u.adjoint(), u) - ComplexMatrix::identity(u.rows()))
      .frobenius_norm();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      m = std::max(m, std::abs(a(i, j) - b(i, j)));
    }
  }
  return m;
}

const ComplexMatrix& pauli_x_matrix() {
  static const ComplexMatrix x(2, 2, {cx{0.0}, cx{1.0}, cx{1.0}, cx{0.0}});
  return x;
}

}  // namespace

Gate Gate::h(std::size_t q) {
  Gate g;
  g.kind = GateKind::H;
  g.targets = {q};
  return g;
}

Gate Gate::x(std::size_t q) {
  Gate g;
  g.kind = GateKind::X;
  g.targets = {q};
  return g;
}

Gate Gate::sdg(std::size_t q) {
  Gate g;
  g.kind = GateKind::SDag;
  g.targets = {q};
  return g;
}

Gate Gate::u3(std::size_t q, double theta, double phi, double lambda) {
  Gate g;
  g.kind = GateKind::U3;
  g.targets = {q};
  g.theta = theta;
  g.phi = phi;
  g.lambda = lambda;
  return g;
}

Gate Gate::controlled_u(std::size_t control, std::size_t target,
                        ComplexMatrix payload, std::string label) {
  if (control == target) {
    throw std::invalid_argument("controlled_u: control and target must differ");
  }
  if (payload.rows() != 2 || payload.cols() != 2) {
    throw std::invalid_argument("controlled_u: payload must be 2x2");
  }
  if (unitarity_error(payload) > 1e-10) {
    throw std::invalid_argument("controlled_u: payload is not unitary within 1e-10");
  }
  Gate g;
  g.kind = GateKind::ControlledU;
  g.targets = {control, target};
  g.payload = std::move(payload);
  g.label = std::move(label);
  return g;
}

Gate Gate::measure(std::size_t q, std::size_t clbit) {
  Gate g;
  g.kind = GateKind::Measure;
  g.targets = {q};
  g.clbit = clbit;
  return g;
}

Circuit::Circuit(std::size_t n_qubits, std::size_t n_clbits)
    : n_qubits_(n_qubits), n_clbits_(n_clbits), measured_(n_qubits, false) {
  if (n_qubits == 0) {
    throw std::invalid_argument("Circuit: need at least one qubit");
  }
}

void Circuit::add(Gate g) {
  const std::size_t expected = (g.kind == GateKind::ControlledU) ? 2 : 1;
  if (g.targets.size() != expected) {
    throw std::invalid_argument("Circuit::add: wrong number of gate qubits");
  }
  for (std::size_t q : g.targets) {
    if (q >= n_qubits_) {
      throw std::invalid_argument("Circuit::add: qubit index out of range");
    }
    if (measured_[q]) {
      throw std::invalid_argument("Circuit::add: qubit was already measured");
    }
  }
  if (g.kind == GateKind::ControlledU && g.targets[0] == g.targets[1]) {
    throw std::invalid_argument("Circuit::add: control and target must differ");
  }
  if (g.kind == GateKind::Measure) {
    if (g.clbit >= n_clbits_) {
      throw std::invalid_argument("Circuit::add: classical bit index out of range");
    }
    measured_[g.targets[0]] = true;
  }
  gates_.push_back(std::move(g));
}

namespace {

void check_steps(const std::vector<double>& steps) {
  if (steps.empty()) {
    throw std::invalid_argument("build_protocol: need at least one step");
  }
  double prev = 0.0;
  for (double s : steps) {
    if (!(s > prev)) {
      throw std::invalid_argument("build_protocol: steps must be strictly increasing and positive");
    }
    if (s > 2.0 * kPi) {
      throw std::invalid_argument("build_protocol: steps must lie in (0, 2*pi]");
    }
    prev = s;
  }
}

}  // namespace

Circuit build_protocol_core(const std::vector<double>& steps) {
  check_steps(steps);
  Circuit c(2, 1);
  c.add(Gate::h(0));
  double prev = 0.0;
  for (double s : steps) {
    const double dphi = s - prev;
    c.add(Gate::controlled_u(0, 1, model::evolution(dphi),
                             "M(" + format_double(dphi) + ")"));
    prev = s;
  }
  return c;
}

Circuit build_protocol(const std::vector<double>& steps, MeasureBasis basis) {
  Circuit c = build_protocol_core(steps);
  if (basis == MeasureBasis::Y) c.add(Gate::sdg(0));
  c.add(Gate::h(0));
  c.add(Gate::measure(0, 0));
  return c;
}

namespace {

// ZYZ angles of a 2x2 unitary: u = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta).
struct Zyz {
  double alpha = 0.0, beta = 0.0, gamma = 0.0, delta = 0.0;
};

Zyz zyz_decompose(const ComplexMatrix& u) {
  Zyz r;
  const cx det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
  r.alpha = 0.5 * std::arg(det);
  const cx phase = std::polar(1.0, -r.alpha);
  const cx a = phase * u(0, 0);
  const cx c = phase * u(1, 0);
  r.gamma = 2.0 * std::atan2(std::abs(c), std::abs(a));
  if (std::abs(a) > 1e-12 && std::abs(c) > 1e-12) {
    r.beta = std::arg(c) - std::arg(a);
    r.delta = -std::arg(c) - std::arg(a);
  } else if (std::abs(a) > 1e-12) {
    r.beta = -2.0 * std::arg(a);  // gamma ~ 0: only beta+delta matters
    r.delta = 0.0;
  } else {
    r.beta = 2.0 * std::arg(c);   // gamma ~ pi: only beta-delta matters
    r.delta = 0.0;
  }
  return r;
}

// Emit a controlled 2x2 unitary with two CX and local u3 rotations.
// With A = Rz(beta)Ry(gamma/2), B = Ry(-gamma/2)Rz(-(delta+beta)/2),
// C = Rz((delta-beta)/2): A B C = I and A X B X C = Rz(beta)Ry(gamma)Rz(delta),
// so the pair of CX gates toggles the payload on and off. The u3 forms of
// A, B, C carry stray global phases that cancel exactly across the product,
// and the remaining e^{i alpha} rides on the control as u3(0,0,alpha).
void emit_controlled_general(Circuit& out, std::size_t control, std::size_t target,
                             const ComplexMatrix& payload) {
  const Zyz z = zyz_decompose(payload);
  out.add(Gate::u3(target, 0.0, 0.0, 0.5 * (z.delta - z.beta)));           // C
  out.add(Gate::controlled_u(control, target, pauli_x_matrix(), "cx"));
  out.add(Gate::u3(target, -0.5 * z.gamma, 0.0, -0.5 * (z.delta + z.beta)));  // B
  out.add(Gate::controlled_u(control, target, pauli_x_matrix(), "cx"));
  out.add(Gate::u3(target, 0.5 * z.gamma, z.beta, 0.0));                   // A
  if (z.alpha != 0.0) out.add(Gate::u3(control, 0.0, 0.0, z.alpha));
}

bool is_real_rotation(const ComplexMatrix& u) {
  double imag = 0.0;
  for (const cx& e : u.entries()) imag = std::max(imag, std::abs(e.imag()));
  return imag <= 1e-12 &&
         std::abs(u(0, 0) - u(1, 1)) <= 1e-12 &&
         std::abs(u(0, 1) + u(1, 0)) <= 1e-12;
}

}  // namespace

Circuit transpile(const Circuit& c) {
  Circuit out(c.n_qubits(), c.n_clbits());
  ComplexMatrix minus_identity(2, 2, {cx{-1.0}, cx{0.0}, cx{0.0}, cx{-1.0}});

  for (const Gate& g : c.gates()) {
    switch (g.kind) {
      case GateKind::H:
        out.add(Gate::u3(g.targets[0], 0.5 * kPi, 0.0, kPi));
        break;
      case GateKind::X:
        out.add(Gate::u3(g.targets[0], kPi, 0.0, kPi));
        break;
      case GateKind::SDag:
        out.add(Gate::u3(g.targets[0], 0.0, 0.0, -0.5 * kPi));
        break;
      case GateKind::U3:
        out.add(g);
        break;
      case GateKind::Measure:
        out.add(g);
        break;
      case GateKind::ControlledU: {
        const std::size_t control = g.targets[0];
        const std::size_t target = g.targets[1];
        if (max_abs_diff(g.payload, minus_identity) <= 1e-12) {
          // controlled(-I) = Z on the control alone.
          out.add(Gate::u3(control, 0.0, 0.0, kPi));
        } else if (max_abs_diff(g.payload, pauli_x_matrix()) <= 1e-12) {
          out.add(Gate::controlled_u(control, target, pauli_x_matrix(), "cx"));
        } else if (is_real_rotation(g.payload)) {
          // Payload is Ry(delta); the standard two-CX echo needs only two u3.
          const double half =
              std::atan2(g.payload(1, 0).real(), g.payload(0, 0).real());
          out.add(Gate::u3(target, half, 0.0, 0.0));
          out.add(Gate::controlled_u(control, target, pauli_x_matrix(), "cx"));
          out.add(Gate::u3(target, -half, 0.0, 0.0));
          out.add(Gate::controlled_u(control, target, pauli_x_matrix(), "cx"));
        } else {
          emit_controlled_general(out, control, target, g.payload);
        }
        break;
      }
    }
  }
  return out;
}

std::string to_qasm(const Circuit& c) {
  std::ostringstream os;
  os << "OPENQASM 2.0;\n";
  os << "include \"qelib1.inc\";\n";
  os << "qreg q[" << c.n_qubits() << "];\n";
  os << "creg c[" << c.n_clbits() << "];\n";
  for (const Gate& g : c.gates()) {
    switch (g.kind) {
      case GateKind::U3:
        os << "u3(" << format_double(g.theta) << "," << format_double(g.phi)
           << "," << format_double(g.lambda) << ") q[" << g.targets[0] << "];\n";
        break;
      case GateKind::ControlledU:
        if (max_abs_diff(g.payload, pauli_x_matrix()) > 1e-12) {
          throw std::invalid_argument(
              "to_qasm: controlled gate '" + g.label + "' is not a CX; transpile first");
        }
        os << "cx q[" << g.targets[0] << "],q[" << g.targets[1] << "];\n";
        break;
      case GateKind::Measure:
        os << "measure q[" << g.targets[0] << "] -> c[" << g.clbit << "];\n";
        break;
      case GateKind::H:
        throw std::invalid_argument("to_qasm: untranspiled gate kind H");
      case GateKind::X:
        throw std::invalid_argument("to_qasm: untranspiled gate kind X");
      case GateKind::SDag:
        throw std::invalid_argument("to_qasm: untranspiled gate kind S_DAG");
    }
  }
  return os.str();
}

ComplexMatrix gate_unitary_1q(const Gate& g) {
  switch (g.kind) {
    case GateKind::H:
      return ComplexMatrix(2, 2, {cx{kInvSqrt2}, cx{kInvSqrt2},
                                  cx{kInvSqrt2}, cx{-kInvSqrt2}});
    case GateKind::X:
      return pauli_x_matrix();
    case GateKind::SDag:
      return ComplexMatrix(2, 2, {cx{1.0}, cx{0.0}, cx{0.0}, cx{0.0, -1.0}});
    case GateKind::U3: {
      const double ch = std::cos(0.5 * g.theta);
      const double sh = std::sin(0.5 * g.theta);
      const cx el{std::cos(g.lambda), std::sin(g.lambda)};
      const cx ep{std::cos(g.phi), std::sin(g.phi)};
      const cx epl{std::cos(g.phi + g.lambda), std::sin(g.phi + g.lambda)};
      return ComplexMatrix(2, 2, {cx{ch, 0.0}, -sh * el, sh * ep, ch * epl});
    }
    default:
      throw std::invalid_argument("gate_unitary_1q: gate is not single-qubit unitary");
  }
}

}  // namespace gphase::circuit
