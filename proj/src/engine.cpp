#include "gphase/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gphase::engine {

using numkit::ComplexMatrix;
using numkit::ComplexVector;
using numkit::cx;

StateVector StateVector::zero_state(std::size_t n_qubits) {
  if (n_qubits == 0 || n_qubits > 24) {
    throw std::invalid_argument("StateVector: qubit count out of range");
  }
  ComplexVector amps(std::size_t{1} << n_qubits);
  amps[0] = 1.0;
  return StateVector(n_qubits, std::move(amps));
}

StateVector::StateVector(std::size_t n_qubits, ComplexVector amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  if (n_qubits_ == 0 || n_qubits_ > 24) {
    throw std::invalid_argument("StateVector: qubit count out of range");
  }
  if (amps_.dim() != (std::size_t{1} << n_qubits_)) {
    throw std::invalid_argument("StateVector: amplitude count is not 2^n");
  }
  if (!amps_.is_finite()) {
    throw std::invalid_argument("StateVector: non-finite amplitude");
  }
  if (std::abs(amps_.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("StateVector: norm deviates from 1 by more than 1e-12");
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw std::invalid_argument("DensityMatrix: matrix must be square");
  }
  if (!m_.is_finite()) {
    throw std::invalid_argument("DensityMatrix: non-finite entry");
  }
  if (m_.hermiticity_error() > 1e-12 * std::max(1.0, m_.frobenius_norm())) {
    throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-12");
  }
  if (std::abs(m_.trace().real() - 1.0) > 1e-12 || std::abs(m_.trace().imag()) > 1e-12) {
    throw std::invalid_argument("DensityMatrix: trace deviates from 1 by more than 1e-12");
  }
  const auto eig = (m_.rows() == 2) ? numkit::eig_hermitian_2x2(m_)
                                    : numkit::eig_hermitian(m_);
  if (eig.eigenvalues.front() < -1e-10) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue below -1e-10");
  }
}

namespace {

// Stride of a qubit: qubit 0 is the most significant index bit.
std::size_t qubit_stride(std::size_t n_qubits, std::size_t q) {
  return std::size_t{1} << (n_qubits - 1 - q);
}

void apply_1q_inplace(std::vector<cx>& a, std::size_t n_qubits, std::size_t target,
                      const ComplexMatrix& u) {
  const std::size_t stride = qubit_stride(n_qubits, target);
  for (std::size_t base = 0; base < a.size(); base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const cx lo = a[i];
      const cx hi = a[i + stride];
      a[i] = u(0, 0) * lo + u(0, 1) * hi;
      a[i + stride] = u(1, 0) * lo + u(1, 1) * hi;
    }
  }
}

void apply_controlled_inplace(std::vector<cx>& a, std::size_t n_qubits,
                              std::size_t control, std::size_t target,
                              const ComplexMatrix& u) {
  const std::size_t cstride = qubit_stride(n_qubits, control);
  const std::size_t tstride = qubit_stride(n_qubits, target);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((i & cstride) == 0) continue;   // control bit clear
    if ((i & tstride) != 0) continue;   // visit each target pair once, from the low half
    const cx lo = a[i];
    const cx hi = a[i + tstride];
    a[i] = u(0, 0) * lo + u(0, 1) * hi;
    a[i + tstride] = u(1, 0) * lo + u(1, 1) * hi;
  }
}

}  // namespace

StateVector apply_gate(const StateVector& s, const circuit::Gate& g) {
  if (g.kind == circuit::GateKind::Measure) {
    throw std::invalid_argument("apply_gate: Measure is not a unitary gate");
  }
  for (std::size_t q : g.targets) {
    if (q >= s.n_qubits()) {
      throw std::invalid_argument("apply_gate: qubit index out of range");
    }
  }
  std::vector<cx> a = s.amplitudes().entries();
  if (g.kind == circuit::GateKind::ControlledU) {
    apply_controlled_inplace(a, s.n_qubits(), g.targets[0], g.targets[1], g.payload);
  } else {
    apply_1q_inplace(a, s.n_qubits(), g.targets[0], circuit::gate_unitary_1q(g));
  }
  return StateVector(s.n_qubits(), ComplexVector(std::move(a)));
}

RunResult run(const circuit::Circuit& c, const StateVector& initial) {
  if (initial.n_qubits() != c.n_qubits()) {
    throw std::invalid_argument("run: initial state size does not match circuit");
  }
  StateVector s = initial;
  std::vector<std::pair<std::size_t, std::size_t>> measurements;
  for (const circuit::Gate& g : c.gates()) {
    if (g.kind == circuit::GateKind::Measure) {
      measurements.emplace_back(g.targets[0], g.clbit);
      continue;  // deferred; sampling happens on the final state
    }
    s = apply_gate(s, g);
  }
  return RunResult{std::move(s), std::move(measurements), std::nullopt};
}

RunResult run_sampled(const circuit::Circuit& c, const StateVector& initial,
                      std::uint64_t shots, std::uint64_t seed) {
  RunResult r = run(c, initial);
  std::vector<std::size_t> qubits;
  qubits.reserve(r.measurements.size());
  for (const auto& m : r.measurements) qubits.push_back(m.first);
  if (qubits.empty()) {
    throw std::invalid_argument("run_sampled: circuit has no measurements");
  }
  r.shots = sample_counts(r.state, qubits, shots, seed);
  return r;
}

ComplexMatrix circuit_unitary(const circuit::Circuit& c) {
  const std::size_t dim = std::size_t{1} << c.n_qubits();
  ComplexMatrix u(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    ComplexVector basis(dim);
    basis[col] = 1.0;
    StateVector s(c.n_qubits(), std::move(basis));
    for (const circuit::Gate& g : c.gates()) {
      if (g.kind == circuit::GateKind::Measure) continue;
      s = apply_gate(s, g);
    }
    for (std::size_t row = 0; row < dim; ++row) u(row, col) = s.amplitudes()[row];
  }
  return u;
}

DensityMatrix reduce_probe(const StateVector& s, std::size_t probe_qubit) {
  if (s.n_qubits() != 2) {
    throw std::invalid_argument("reduce_probe: state must have exactly two qubits");
  }
  if (probe_qubit > 1) {
    throw std::invalid_argument("reduce_probe: probe qubit must be 0 or 1");
  }
  const auto& a = s.amplitudes();
  auto idx = [&](std::size_t p, std::size_t other) {
    return probe_qubit == 0 ? (p << 1) | other : (other << 1) | p;
  };
  ComplexMatrix rho(2, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      cx sum = 0.0;
      for (std::size_t k = 0; k < 2; ++k) {
        sum += a[idx(i, k)] * std::conj(a[idx(j, k)]);
      }
      rho(i, j) = sum;
    }
  }
  return DensityMatrix(std::move(rho));
}

DensityMatrix depolarize(const DensityMatrix& rho, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("depolarize: p must lie in [0, 1]");
  }
  const std::size_t n = rho.dim();
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = (1.0 - p) * rho.matrix()(i, j);
    out(i, i) += p / static_cast<double>(n);
  }
  return DensityMatrix(std::move(out));
}

double pauli_expectation(const DensityMatrix& rho, PauliAxis axis) {
  if (rho.dim() != 2) {
    throw std::invalid_argument("pauli_expectation: need a single-qubit state");
  }
  const ComplexMatrix& m = rho.matrix();
  cx t;
  switch (axis) {
    case PauliAxis::X: t = m(0, 1) + m(1, 0); break;
    case PauliAxis::Y: t = cx{0.0, 1.0} * (m(0, 1) - m(1, 0)); break;
    case PauliAxis::Z: t = m(0, 0) - m(1, 1); break;
  }
  return t.real();
}

PhaseAngles extract_phase(double sigma_x, double sigma_y) {
  if (sigma_x == 0.0 && sigma_y == 0.0) {
    throw std::invalid_argument("extract_phase: phase undefined at sigma_x = sigma_y = 0");
  }
  if (sigma_x * sigma_x + sigma_y * sigma_y > 1.0 + 1e-9) {
    throw std::invalid_argument("extract_phase: expectations lie outside the unit disk");
  }
  if (sigma_y == 0.0) sigma_y = 0.0;  // collapse -0.0 so the branch cut lands on +pi
  PhaseAngles out;
  out.arg = std::atan2(sigma_y, sigma_x);
  out.unwrapped = std::acos(std::clamp(sigma_x, -1.0, 1.0));
  return out;
}

std::vector<double> marginal_probabilities(const StateVector& s,
                                           const std::vector<std::size_t>& qubits) {
  if (qubits.empty()) {
    throw std::invalid_argument("marginal_probabilities: no qubits listed");
  }
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] >= s.n_qubits()) {
      throw std::invalid_argument("marginal_probabilities: qubit index out of range");
    }
    for (std::size_t j = i + 1; j < qubits.size(); ++j) {
      if (qubits[i] == qubits[j]) {
        throw std::invalid_argument("marginal_probabilities: repeated qubit");
      }
    }
  }
  const std::size_t m = qubits.size();
  std::vector<double> probs(std::size_t{1} << m, 0.0);
  const auto& a = s.amplitudes();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    std::size_t outcome = 0;
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t bit = (i >> (s.n_qubits() - 1 - qubits[j])) & 1u;
      outcome |= bit << (m - 1 - j);
    }
    probs[outcome] += std::norm(a[i]);
  }
  double total = 0.0;
  for (double p : probs) total += p;
  for (double& p : probs) p /= total;
  return probs;
}

std::vector<std::uint64_t> sample_from_probabilities(const std::vector<double>& probs,
                                                     std::uint64_t shots, Prng64& rng) {
  if (probs.empty()) {
    throw std::invalid_argument("sample_from_probabilities: empty distribution");
  }
  std::vector<double> cum(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!(probs[i] >= 0.0)) {
      throw std::invalid_argument("sample_from_probabilities: negative probability");
    }
    acc += probs[i];
    cum[i] = acc;
  }
  std::vector<std::uint64_t> counts(probs.size(), 0);
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    const double u = rng.uniform01() * acc;
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    std::size_t k = static_cast<std::size_t>(it - cum.begin());
    if (k >= counts.size()) k = counts.size() - 1;  // u == acc edge
    ++counts[k];
  }
  return counts;
}

ShotResult sample_counts(const StateVector& s, const std::vector<std::size_t>& qubits,
                         std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) {
    throw std::invalid_argument("sample_counts: need at least one shot");
  }
  const std::vector<double> probs = marginal_probabilities(s, qubits);
  Prng64 rng(seed);
  const std::vector<std::uint64_t> raw = sample_from_probabilities(probs, shots, rng);
  ShotResult result;
  result.shots = shots;
  result.seed = seed;
  const std::size_t m = qubits.size();
  for (std::size_t o = 0; o < raw.size(); ++o) {
    if (raw[o] == 0) continue;
    std::string key(m, '0');
    for (std::size_t j = 0; j < m; ++j) {
      if ((o >> (m - 1 - j)) & 1u) key[j] = '1';
    }
    result.counts.emplace(std::move(key), raw[o]);
  }
  return result;
}

double estimate_expectation(const ShotResult& r) {
  if (r.shots == 0) {
    throw std::invalid_argument("estimate_expectation: empty result");
  }
  std::uint64_t zeros = 0, ones = 0;
  for (const auto& [key, count] : r.counts) {
    if (key.size() != 1) {
      throw std::invalid_argument(
          "estimate_expectation: defined only for single-bit outcomes");
    }
    (key[0] == '0' ? zeros : ones) += count;
  }
  return (static_cast<double>(zeros) - static_cast<double>(ones)) /
         static_cast<double>(r.shots);
}

}  // namespace gphase::engine
