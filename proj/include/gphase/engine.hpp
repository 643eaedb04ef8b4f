#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gphase/circuit.hpp"
#include "gphase/numkit.hpp"

namespace gphase::engine {

/// Sampling RNG: std::mt19937_64 seeded directly, uniform doubles built from
/// the generator's top 53 bits. The mt19937_64 output sequence is pinned by
/// the C++ standard, so identical (seed, state) pairs reproduce identical
/// counts on every platform.
class Prng64 {
 public:
  explicit Prng64(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t next_u64() { return gen_(); }
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

/// Pure state over n qubits. Qubit 0 owns the most significant bit of the
/// amplitude index (the probe is qubit 0 and sits slowest in the tensor
/// order), so |q0 q1> maps to index q0*2 + q1 for two qubits.
class StateVector {
 public:
  static StateVector zero_state(std::size_t n_qubits);
  /// Amplitudes must have length 2^n_qubits and unit norm within 1e-12.
  StateVector(std::size_t n_qubits, numkit::ComplexVector amplitudes);

  std::size_t n_qubits() const { return n_qubits_; }
  const numkit::ComplexVector& amplitudes() const { return amps_; }

 private:
  std::size_t n_qubits_ = 0;
  numkit::ComplexVector amps_;
};

/// Mixed state: Hermitian within 1e-12, unit trace within 1e-12, smallest
/// eigenvalue >= -1e-10. Checked at construction.
class DensityMatrix {
 public:
  explicit DensityMatrix(numkit::ComplexMatrix m);
  std::size_t dim() const { return m_.rows(); }
  const numkit::ComplexMatrix& matrix() const { return m_; }

 private:
  numkit::ComplexMatrix m_;
};

struct ShotResult {
  std::map<std::string, std::uint64_t> counts;  // outcome bitstring -> count
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

/// One measured point of the interference protocol. overlap_* hold the
/// analytic interference term <psi0|M(phi)|psi0>; sigma_* hold what the
/// simulated circuits produced (exact expectations, or shot estimates when
/// shots is set). phase_arg = atan2(sigma_y, sigma_x) in (-pi, pi];
/// phase_unwrapped = arccos(sigma_x) in [0, pi].
struct PhaseRecord {
  double phi = 0.0;
  double overlap_re = 0.0;
  double overlap_im = 0.0;
  double sigma_x = 0.0;
  double sigma_y = 0.0;
  double phase_arg = 0.0;
  double phase_unwrapped = 0.0;
  std::optional<std::uint64_t> shots;  // nullopt = exact expectations
};

enum class PauliAxis { X, Y, Z };

struct PhaseAngles {
  double arg = 0.0;        // atan2(sigma_y, sigma_x), in (-pi, pi]
  double unwrapped = 0.0;  // arccos(sigma_x), in [0, pi]
};

/// Apply one unitary gate (Measure is rejected).
StateVector apply_gate(const StateVector& s, const circuit::Gate& g);

struct RunResult {
  StateVector state;  // pre-measurement state
  /// (qubit, clbit) pairs in gate order for the deferred measurements.
  std::vector<std::pair<std::size_t, std::size_t>> measurements;
  std::optional<ShotResult> shots;
};

/// Run a circuit. Measurements are deferred: the returned state is the
/// pre-measurement state and the measurement list records what would be
/// sampled.
RunResult run(const circuit::Circuit& c, const StateVector& initial);

/// run() plus a multinomial sample of the measured qubits.
RunResult run_sampled(const circuit::Circuit& c, const StateVector& initial,
                      std::uint64_t shots, std::uint64_t seed);

/// Total unitary of a circuit (measurements ignored), built column by column.
numkit::ComplexMatrix circuit_unitary(const circuit::Circuit& c);

/// Reduced 2x2 state of one qubit of a two-qubit register.
DensityMatrix reduce_probe(const StateVector& s, std::size_t probe_qubit);

/// (1-p) rho + p I/2.
DensityMatrix depolarize(const DensityMatrix& rho, double p);

/// tr(rho sigma_axis); the imaginary residue of the trace is discarded
/// (it is zero within 1e-12 for a valid DensityMatrix).
double pauli_expectation(const DensityMatrix& rho, PauliAxis axis);

/// Interference phase from the two probe expectations. Requires
/// sigma_x^2 + sigma_y^2 <= 1 + 1e-9 and (sigma_x, sigma_y) != (0, 0).
PhaseAngles extract_phase(double sigma_x, double sigma_y);

/// Born-rule marginal over the listed qubits, normalized; outcome index has
/// the first listed qubit as its most significant bit.
std::vector<double> marginal_probabilities(const StateVector& s,
                                           const std::vector<std::size_t>& qubits);

/// Multinomial draw: one inverse-CDF lookup per shot.
std::vector<std::uint64_t> sample_from_probabilities(const std::vector<double>& probs,
                                                     std::uint64_t shots, Prng64& rng);

/// Sample the listed qubits of a state. Deterministic in (state, seed).
ShotResult sample_counts(const StateVector& s, const std::vector<std::size_t>& qubits,
                         std::uint64_t shots, std::uint64_t seed);

/// (count("0") - count("1")) / shots for single-bit results.
double estimate_expectation(const ShotResult& r);

}  // namespace gphase::engine
