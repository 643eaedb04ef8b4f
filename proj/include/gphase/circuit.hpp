#pragma once

#include <string>
#include <vector>

#include "gphase/numkit.hpp"

namespace gphase::circuit {

enum class GateKind { H, X, SDag, U3, ControlledU, Measure };

/// Probe measurement axis. X reads the real part of the interference term,
/// Y the imaginary part.
enum class MeasureBasis { X, Y };

struct Gate {
  GateKind kind = GateKind::H;
  /// Gate qubits; ControlledU lists {control, target}.
  std::vector<std::size_t> targets;
  double theta = 0.0, phi = 0.0, lambda = 0.0;  // U3 angles
  numkit::ComplexMatrix payload;                // ControlledU 2x2 unitary
  std::string label;                            // ControlledU display name
  std::size_t clbit = 0;                        // Measure destination

  static Gate h(std::size_t q);
  static Gate x(std::size_t q);
  static Gate sdg(std::size_t q);
  static Gate u3(std::size_t q, double theta, double phi, double lambda);
  /// Payload must be 2x2 and unitary within 1e-10.
  static Gate controlled_u(std::size_t control, std::size_t target,
                           numkit::ComplexMatrix payload, std::string label);
  static Gate measure(std::size_t q, std::size_t clbit);
};

/// Ordered gate list over n qubits and m classical bits. add() validates
/// qubit/clbit ranges and rejects gates on a qubit that was already measured.
class Circuit {
 public:
  Circuit(std::size_t n_qubits, std::size_t n_clbits);

  void add(Gate g);
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t n_clbits() const { return n_clbits_; }

 private:
  std::size_t n_qubits_ = 0;
  std::size_t n_clbits_ = 0;
  std::vector<Gate> gates_;
  std::vector<bool> measured_;
};

/// Probe-qubit interference circuit over qubits {0: probe, 1: system}.
/// steps are cumulative loop angles, strictly increasing in (0, 2*pi]; each
/// consecutive pair contributes a ControlledU carrying
/// evolution(next - prev). After the controlled walk the probe gets the
/// basis change (H for X; S_DAG then H for Y) and is measured into clbit 0.
Circuit build_protocol(const std::vector<double>& steps, MeasureBasis basis);

/// The controlled walk alone: H on the probe plus the ControlledU increments,
/// no basis change and no measurement. Useful for inspecting the
/// pre-measurement joint state.
Circuit build_protocol_core(const std::vector<double>& steps);

/// Rewrite into the {u3, cx} basis (measurements pass through). CX is
/// represented as a ControlledU with payload X and label "cx". The rewritten
/// circuit implements the same total unitary.
Circuit transpile(const Circuit& c);

/// OpenQASM 2.0 text for a transpiled circuit. Accepts only U3, CX and
/// Measure; throws std::invalid_argument on anything else. Angles are
/// printed in shortest round-trip form, so output is byte-deterministic.
std::string to_qasm(const Circuit& c);

/// 2x2 matrix of a single-qubit gate (H, X, SDag, U3).
numkit::ComplexMatrix gate_unitary_1q(const Gate& g);

}  // namespace gphase::circuit
