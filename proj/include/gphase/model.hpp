#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "gphase/numkit.hpp"

namespace gphase::model {

/// Parameters of the two-level conical-intersection model.
///   K           coupling strength (>= 0)
///   phi         loop angle in radians (unwrapped; multiples of 2*pi are distinct)
///   alpha, beta, b   coefficients of the double-cone energy surfaces
struct ModelParams {
  double K = 1.0;
  double phi = 0.0;
  double alpha = 1.0;
  double beta = 0.0;
  double b = 1.0;
};

/// A set of vibrational modes coupled to an m-fold degenerate electronic
/// level. Each mode contributes one m x m Hermitian coupling matrix; the
/// secular matrix at displacement q is the q-weighted sum of them.
class VibronicSystem {
 public:
  VibronicSystem(std::size_t m, std::vector<numkit::ComplexMatrix> couplings,
                 std::vector<std::string> mode_labels);

  std::size_t m() const { return m_; }
  std::size_t mode_count() const { return couplings_.size(); }
  const std::vector<numkit::ComplexMatrix>& couplings() const { return couplings_; }
  const std::vector<std::string>& mode_labels() const { return mode_labels_; }

 private:
  std::size_t m_ = 0;
  std::vector<numkit::ComplexMatrix> couplings_;
  std::vector<std::string> mode_labels_;
};

/// Full 2x2 Hamiltonian: K*I + K*[[cos phi, sin phi], [sin phi, -cos phi]].
numkit::ComplexMatrix hamiltonian(const ModelParams& p);

/// The traceless coupling term K*[[cos phi, sin phi], [sin phi, -cos phi]]
/// alone; its spectrum is {-K, +K}, while the full Hamiltonian's is {0, 2K}.
numkit::ComplexMatrix hamiltonian_traceless(const ModelParams& p);

/// The two real eigenbranches, literally
///   [cos(phi/2), sin(phi/2)]  and  [-sin(phi/2), cos(phi/2)].
/// No re-phasing: following phi -> phi + 2*pi flips the sign of both.
std::pair<numkit::ComplexVector, numkit::ComplexVector> eigenbranches(double phi);

/// Double-cone energies +/- sqrt((alpha*x + beta*y)^2 + (b*y)^2) at (x, y).
/// Returned as (upper, lower).
std::pair<double, double> cone_energies(const ModelParams& p, double x, double y);

/// Rotation carried by one loop step:
///   [[cos(phi/2), -sin(phi/2)], [sin(phi/2), cos(phi/2)]].
/// evolution(2*pi) = -I, the sign flip collected around the full loop.
numkit::ComplexMatrix evolution(double phi);

/// Step operator from phi to phi + dphi; equals evolution(phi + dphi).
numkit::ComplexMatrix evolution_step(double phi, double dphi);

/// Sum of |outputs[k]><inputs[k]|. The inputs must be orthonormal within
/// 1e-10 (pairwise checked); throws std::invalid_argument otherwise.
numkit::ComplexMatrix outer_product_operator(
    const std::vector<numkit::ComplexVector>& inputs,
    const std::vector<numkit::ComplexVector>& outputs);

/// Secular matrix sum_k q[k] * coupling[k]; q must have one entry per mode.
numkit::ComplexMatrix vibronic_secular(const VibronicSystem& sys,
                                       const std::vector<double>& q);

/// Split level energies at displacement q, ascending.
std::vector<double> split_levels(const VibronicSystem& sys,
                                 const std::vector<double>& q);

/// Parse a vibronic model file. Line-oriented format ('#' starts a comment,
/// blank lines are skipped):
///
///   m <int>              dimension of the degenerate level
///   mode <label>         one block per mode, followed by
///   <re,im> ... <re,im>  m rows of m whitespace-separated complex entries
///
/// Every coupling matrix must be Hermitian within 1e-12. Errors carry
/// "<name>:<line>:" prefixes.
VibronicSystem parse_vibronic(std::istream& in, const std::string& name);
VibronicSystem parse_vibronic_file(const std::string& path);

}  // namespace gphase::model
