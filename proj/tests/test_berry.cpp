#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "gphase/berry.hpp"
#include "gphase/model.hpp"
#include "gphase/numkit.hpp"

using gphase::berry::Branch;
using gphase::numkit::ComplexVector;
using gphase::numkit::cx;
namespace berry = gphase::berry;
namespace model = gphase::model;

namespace {

constexpr double kPi = 3.14159265358979323846;

Branch upper_branch() {
  Branch b;
  b.evaluator = [](double phi) { return model::eigenbranches(phi).first; };
  b.label = "upper";
  return b;
}

Branch lower_branch() {
  Branch b;
  b.evaluator = [](double phi) { return model::eigenbranches(phi).second; };
  b.label = "lower";
  return b;
}

// Cone state tilted away from the pole: [cos(t/2), sin(t/2) e^{i phi}].
// Its loop holonomy is the classic solid-angle value -2 pi sin^2(t/2).
Branch tilted_branch(double tilt) {
  Branch b;
  const double c = std::cos(tilt / 2.0);
  const double s = std::sin(tilt / 2.0);
  b.evaluator = [c, s](double phi) {
    return ComplexVector{cx{c, 0.0}, s * cx{std::cos(phi), std::sin(phi)}};
  };
  b.label = "tilted";
  return b;
}

double max_abs_diff(const ComplexVector& a, const ComplexVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("the eigenbranch is parallel-transported: its connection vanishes") {
  const Branch b = upper_branch();
  double worst = 0.0;
  for (int j = 0; j < 64; ++j) {
    const double phi = 2.0 * kPi * static_cast<double>(j) / 64.0;
    const double a = berry::connection(b, phi, 1e-5);
    worst = std::max(worst, std::abs(a));
  }
  CHECK(worst <= 1e-6);

  // The branch is real, so the overlap has no imaginary part at all.
  CHECK(berry::connection(b, 1.0, 1e-5) == 0.0);

  // Both admissible step-size extremes agree.
  CHECK(std::abs(berry::connection(b, 2.0, 1e-8)) <= 1e-6);
  CHECK(std::abs(berry::connection(b, 2.0, 1e-3)) <= 1e-6);
}

TEST_CASE("a constant branch has zero connection everywhere") {
  Branch b;
  b.evaluator = [](double) { return ComplexVector{0.6, 0.8}; };
  for (double phi : {0.1, 1.0, 3.0, 6.0}) {
    CHECK(berry::connection(b, phi, 1e-5) == 0.0);
  }
}

TEST_CASE("a linear gauge shifts the connection by its slope") {
  const Branch gauged =
      berry::gauge_transform(upper_branch(), [](double phi) { return 0.5 * phi; });

  double worst = 0.0;
  for (int j = 0; j < 64; ++j) {
    const double phi = 2.0 * kPi * static_cast<double>(j) / 64.0;
    worst = std::max(worst, std::abs(berry::connection(gauged, phi, 1e-5) - 0.5));
  }
  CHECK(worst <= 1e-9);

  // The gauge function is recorded on the transformed branch.
  REQUIRE(static_cast<bool>(gauged.gauge));
  CHECK(gauged.gauge(1.0) == 0.5);
  CHECK(gauged.gauge(2.0) == 1.0);

  // e^{i phi/2} exactly cancels the branch's sign flip: single-valued now.
  CHECK(max_abs_diff(gauged.evaluator(2.0 * kPi), gauged.evaluator(0.0)) <= 1e-15);

  // The discrete loop phase is gauge-invariant, so it stays at pi.
  CHECK(std::abs(berry::pancharatnam_phase(gauged, 12) - kPi) <= 1e-12);
}

TEST_CASE("the identity gauge leaves the connection untouched") {
  const Branch base = upper_branch();
  const Branch same = berry::gauge_transform(base, [](double) { return 0.0; });
  for (double phi : {0.3, 1.7, 4.4}) {
    CHECK(berry::connection(same, phi, 1e-5) == berry::connection(base, phi, 1e-5));
  }
}

TEST_CASE("smooth gauges shift the connection by their derivative") {
  const Branch base = upper_branch();
  const Branch gauged =
      berry::gauge_transform(base, [](double phi) { return std::sin(phi); });
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 20; ++trial) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    const double phi = 0.1 + u * (2.0 * kPi - 0.2);
    const double shift =
        berry::connection(gauged, phi, 1e-5) - berry::connection(base, phi, 1e-5);
    CHECK(shift == doctest::Approx(std::cos(phi)).epsilon(1e-8));
  }

  // Gauges compose: the recorded phase and the shift both add up.
  const Branch twice =
      berry::gauge_transform(gauged, [](double phi) { return 0.5 * phi; });
  REQUIRE(static_cast<bool>(twice.gauge));
  CHECK(twice.gauge(2.0) == doctest::Approx(std::sin(2.0) + 1.0).epsilon(1e-15));
  CHECK(berry::connection(twice, 1.3, 1e-5) ==
        doctest::Approx(std::cos(1.3) + 0.5).epsilon(1e-8));
}

TEST_CASE("the loop phase of either eigenbranch is exactly pi") {
  CHECK(berry::pancharatnam_phase(upper_branch(), 12) == kPi);
  CHECK(berry::pancharatnam_phase(lower_branch(), 12) == kPi);

  // Any loop refinement gives the same answer: the sign flip is topological.
  for (std::size_t n = 4; n <= 16; ++n) {
    CHECK(std::abs(berry::pancharatnam_phase(upper_branch(), n) - kPi) <= 1e-9);
  }
}

TEST_CASE("the loop phase is invariant under single-valued gauges") {
  const Branch base = upper_branch();
  const Branch gauged =
      berry::gauge_transform(base, [](double phi) { return std::sin(phi); });
  CHECK(std::abs(berry::pancharatnam_phase(gauged, 12) - kPi) <= 1e-12);
  CHECK(std::abs(berry::pancharatnam_phase(gauged, 7) - kPi) <= 1e-12);
}

TEST_CASE("a constant branch accumulates no loop phase") {
  Branch b;
  b.evaluator = [](double) { return ComplexVector{0.6, cx{0.0, 0.8}}; };
  CHECK(berry::pancharatnam_phase(b, 12) == 0.0);
}

TEST_CASE("the discrete loop converges quadratically to the solid angle") {
  const double tilt = kPi / 3.0;
  const Branch b = tilted_branch(tilt);
  const double s2 = std::sin(tilt / 2.0) * std::sin(tilt / 2.0);
  const double limit = berry::wrap_angle(-2.0 * kPi * s2);  // = -pi/2 here

  const double e24 = std::abs(berry::pancharatnam_phase(b, 24) - limit);
  const double e48 = std::abs(berry::pancharatnam_phase(b, 48) - limit);
  const double e96 = std::abs(berry::pancharatnam_phase(b, 96) - limit);
  CHECK(e24 > e48);
  CHECK(e48 > e96);
  // Halving the step divides the error by about four.
  CHECK(e24 / e48 == doctest::Approx(4.0).epsilon(0.3));
  CHECK(e48 / e96 == doctest::Approx(4.0).epsilon(0.3));
  CHECK(e96 <= 1e-3);

  // The connection of this branch is constant: sin^2(tilt/2).
  for (double phi : {0.5, 2.0, 5.0}) {
    CHECK(berry::connection(b, phi, 1e-5) == doctest::Approx(s2).epsilon(1e-9));
  }
}

TEST_CASE("holonomy check signs the transported frame") {
  CHECK(berry::holonomy_check(2.0 * kPi) == -1);
  CHECK(berry::holonomy_check(0.0) == 1);
  CHECK(berry::holonomy_check(4.0 * kPi) == 1);
  CHECK(berry::holonomy_check(kPi) == 0);
  CHECK(berry::holonomy_check(3.0 * kPi) == 0);
  CHECK(berry::holonomy_check(kPi / 3.0) == 1);
}

TEST_CASE("wrap_angle lands in the half-open interval with the cut at +pi") {
  CHECK(berry::wrap_angle(kPi) == kPi);
  CHECK(berry::wrap_angle(-kPi) == kPi);
  CHECK(berry::wrap_angle(3.0 * kPi) == kPi);
  CHECK(berry::wrap_angle(2.0 * kPi) == 0.0);
  CHECK(berry::wrap_angle(0.0) == 0.0);
  CHECK(berry::wrap_angle(kPi + 0.1) == doctest::Approx(-kPi + 0.1).epsilon(1e-14));
  CHECK(berry::wrap_angle(-1.5 * kPi) == doctest::Approx(0.5 * kPi).epsilon(1e-14));

  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 100; ++trial) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    const double a = -20.0 + 40.0 * u;
    const double w = berry::wrap_angle(a);
    CHECK(w > -kPi);
    CHECK(w <= kPi);
    CHECK(std::cos(w) == doctest::Approx(std::cos(a)).epsilon(1e-12));
    CHECK(std::sin(w) == doctest::Approx(std::sin(a)).epsilon(1e-12));
  }
}

TEST_CASE("the eigenbranches are unit, orthogonal, and antiperiodic") {
  for (int j = 0; j < 16; ++j) {
    const double phi = 2.0 * kPi * static_cast<double>(j) / 16.0;
    const auto [up, down] = model::eigenbranches(phi);
    CHECK(up.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(down.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(gphase::numkit::inner(up, down)) <= 1e-15);
  }
  // One full turn returns the branch with its sign flipped.
  const auto start = model::eigenbranches(0.0).first;
  const auto finish = model::eigenbranches(2.0 * kPi).first;
  ComplexVector negated{-finish[0], -finish[1]};
  CHECK(max_abs_diff(start, negated) <= 1e-15);
}

TEST_CASE("connection rejects bad branches and step sizes") {
  CHECK_THROWS_WITH_AS(berry::connection(Branch{}, 1.0, 1e-5),
                       "connection: branch has no evaluator", std::invalid_argument);

  const Branch b = upper_branch();
  CHECK_THROWS_WITH_AS(berry::connection(b, 1.0, 1e-9),
                       "connection: h must lie in [1e-8, 1e-3]", std::invalid_argument);
  CHECK_THROWS_WITH_AS(berry::connection(b, 1.0, 2e-3),
                       "connection: h must lie in [1e-8, 1e-3]", std::invalid_argument);
  CHECK_THROWS_WITH_AS(berry::connection(b, 1.0, 0.0),
                       "connection: h must lie in [1e-8, 1e-3]", std::invalid_argument);

  Branch stretched;
  stretched.evaluator = [](double) { return ComplexVector{2.0, 0.0}; };
  CHECK_THROWS_WITH_AS(berry::connection(stretched, 1.0, 1e-5),
                       "branch norm deviates from 1 beyond tolerance", std::runtime_error);

  // A jump in the branch shows up as a spurious norm derivative.
  Branch jumpy;
  jumpy.evaluator = [](double phi) {
    if (phi > 1.0) return ComplexVector{std::cos(1.0), std::sin(1.0)};
    return ComplexVector{1.0, 0.0};
  };
  CHECK_THROWS_WITH_AS(berry::connection(jumpy, 1.0, 1e-5),
                       "connection: branch norm varies along phi", std::runtime_error);
}

TEST_CASE("gauge_transform rejects missing pieces") {
  CHECK_THROWS_WITH_AS(berry::gauge_transform(Branch{}, [](double) { return 0.0; }),
                       "gauge_transform: branch has no evaluator", std::invalid_argument);
  CHECK_THROWS_WITH_AS(berry::gauge_transform(upper_branch(), {}),
                       "gauge_transform: gauge function is empty", std::invalid_argument);
}

TEST_CASE("pancharatnam_phase rejects degenerate loops") {
  CHECK_THROWS_WITH_AS(berry::pancharatnam_phase(Branch{}, 12),
                       "pancharatnam_phase: branch has no evaluator", std::invalid_argument);
  CHECK_THROWS_WITH_AS(berry::pancharatnam_phase(upper_branch(), 2),
                       "pancharatnam_phase: need at least 3 loop points",
                       std::invalid_argument);

  Branch orthogonal;
  orthogonal.evaluator = [](double phi) {
    if (phi == 0.0) return ComplexVector{1.0, 0.0};
    return ComplexVector{0.0, 1.0};
  };
  CHECK_THROWS_WITH_AS(
      berry::pancharatnam_phase(orthogonal, 4),
      "pancharatnam_phase: consecutive loop points are orthogonal; refine the grid",
      std::runtime_error);
}
