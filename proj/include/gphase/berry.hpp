#pragma once

#include <functional>
#include <string>

#include "gphase/numkit.hpp"

namespace gphase::berry {

/// A one-parameter family of unit vectors phi -> chi(phi). The evaluator is
/// an arbitrary callable; gauge optionally records a global-phase function
/// f(phi) that has been applied on top of some reference branch.
struct Branch {
  std::function<numkit::ComplexVector(double)> evaluator;
  std::string label;
  std::function<double(double)> gauge;  // may be empty
};

/// Central-difference estimate of the connection (1/i)<chi|d chi/d phi> at
/// phi. h must lie in [1e-8, 1e-3]. Throws if the branch norm drifts from 1
/// by more than 1e-10 at the sample points, or if the estimate's imaginary
/// residue exceeds 10*h (both signal a non-unit branch).
double connection(const Branch& b, double phi, double h);

/// Branch with evaluator e^{i f(phi)} chi(phi); composes with any existing
/// gauge. Shifts the connection by f'(phi).
Branch gauge_transform(const Branch& b, std::function<double(double)> f);

/// Discrete loop phase -arg prod_k <chi(phi_k)|chi(phi_{k+1})> over the
/// closed grid phi_k = 2 pi k / n_steps, k = 0..n_steps-1, with the last
/// overlap closing onto chi(phi_0) evaluated at 0 again. n_steps >= 3.
/// Result normalized to (-pi, pi], preferring +pi at the cut. Throws when
/// any overlap magnitude falls below 1e-9.
double pancharatnam_phase(const Branch& b, std::size_t n_steps);

/// Sign of cos(phi_total/2): +1 when the transported frame returns aligned,
/// -1 when it returns flipped, 0 at the orthogonality crossing (phi = pi).
int holonomy_check(double phi_total);

/// Wrap an angle to (-pi, pi], mapping the -pi edge to +pi.
double wrap_angle(double a);

}  // namespace gphase::berry
