#include "gphase/berry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gphase::berry {

using numkit::ComplexVector;
using numkit::cx;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexVector eval_unit(const Branch& b, double phi, double tol) {
  ComplexVector v = b.evaluator(phi);
  if (!v.is_finite()) {
    throw std::runtime_error("branch evaluator returned a non-finite vector");
  }
  if (std::abs(v.norm() - 1.0) > tol) {
    throw std::runtime_error("branch norm deviates from 1 beyond tolerance");
  }
  return v;
}

}  // namespace

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * kPi);  // lands in [-pi, pi]
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

double connection(const Branch& b, double phi, double h) {
  if (!b.evaluator) {
    throw std::invalid_argument("connection: branch has no evaluator");
  }
  if (!(h >= 1e-8 && h <= 1e-3)) {
    throw std::invalid_argument("connection: h must lie in [1e-8, 1e-3]");
  }
  const ComplexVector mid = eval_unit(b, phi, 1e-10);
  const ComplexVector fwd = eval_unit(b, phi + h, 1e-10);
  const ComplexVector bwd = eval_unit(b, phi - h, 1e-10);
  const cx deriv_overlap = (1.0 / (2.0 * h)) * numkit::inner(mid, fwd - bwd);
  // <chi|chi'> must be purely imaginary on a unit branch; the real part is
  // the finite-difference residue of d||chi||^2/dphi.
  if (std::abs(deriv_overlap.real()) > 10.0 * h) {
    throw std::runtime_error("connection: branch norm varies along phi");
  }
  return deriv_overlap.imag();
}

Branch gauge_transform(const Branch& b, std::function<double(double)> f) {
  if (!b.evaluator) {
    throw std::invalid_argument("gauge_transform: branch has no evaluator");
  }
  if (!f) {
    throw std::invalid_argument("gauge_transform: gauge function is empty");
  }
  Branch out;
  auto base = b.evaluator;
  out.evaluator = [base, f](double phi) {
    const double g = f(phi);
    const cx phase{std::cos(g), std::sin(g)};
    return phase * base(phi);
  };
  out.label = b.label.empty() ? "gauged" : b.label + "+gauge";
  if (b.gauge) {
    auto prev = b.gauge;
    out.gauge = [prev, f](double phi) { return prev(phi) + f(phi); };
  } else {
    out.gauge = f;
  }
  return out;
}

double pancharatnam_phase(const Branch& b, std::size_t n_steps) {
  if (!b.evaluator) {
    throw std::invalid_argument("pancharatnam_phase: branch has no evaluator");
  }
  if (n_steps < 3) {
    throw std::invalid_argument("pancharatnam_phase: need at least 3 loop points");
  }
  std::vector<ComplexVector> pts;
  pts.reserve(n_steps + 1);
  for (std::size_t k = 0; k < n_steps; ++k) {
    const double phi = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n_steps);
    pts.push_back(eval_unit(b, phi, 1e-10));
  }
  pts.push_back(eval_unit(b, 0.0, 1e-10));  // close the loop at the start point

  cx product{1.0, 0.0};
  for (std::size_t k = 0; k < n_steps; ++k) {
    const cx overlap = numkit::inner(pts[k], pts[k + 1]);
    if (std::abs(overlap) < 1e-9) {
      throw std::runtime_error(
          "pancharatnam_phase: consecutive loop points are orthogonal; refine the grid");
    }
    product *= overlap;
  }
  return wrap_angle(-std::arg(product));
}

int holonomy_check(double phi_total) {
  const double c = std::cos(0.5 * phi_total);
  if (c > 1e-12) return 1;
  if (c < -1e-12) return -1;
  return 0;
}

}  // namespace gphase::berry
