#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "gphase/numkit.hpp"

using gphase::numkit::ComplexMatrix;
using gphase::numkit::ComplexVector;
using gphase::numkit::cx;

namespace {

// Deterministic value stream for property tests.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  cx complex_unit_box() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

 private:
  std::mt19937_64 gen_;
};

ComplexMatrix random_hermitian(std::size_t n, TestRng& rng) {
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = cx{rng.uniform(-1.0, 1.0), 0.0};
    for (std::size_t j = i + 1; j < n; ++j) {
      const cx v = rng.complex_unit_box();
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }
  return a;
}

ComplexMatrix random_complex(std::size_t n, TestRng& rng) {
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.complex_unit_box();
  return a;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  REQUIRE(a.rows() == b.rows());
  REQUIRE(a.cols() == b.cols());
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

ComplexMatrix reconstruct(const std::vector<double>& vals,
                          const std::vector<ComplexVector>& vecs) {
  const std::size_t n = vecs.front().dim();
  ComplexMatrix sum(n, n);
  for (std::size_t k = 0; k < vals.size(); ++k) {
    const ComplexMatrix term = gphase::numkit::outer(vecs[k], vecs[k]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sum(i, j) += vals[k] * term(i, j);
  }
  return sum;
}

cx det2(const ComplexMatrix& a) { return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0); }

cx det3(const ComplexMatrix& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

}  // namespace

TEST_CASE("vectors and matrices validate their shapes") {
  CHECK_THROWS_AS(ComplexVector(0), std::invalid_argument);
  CHECK_THROWS_AS(ComplexMatrix(2, 2, {cx{1.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(ComplexMatrix(0, 1), std::invalid_argument);

  const ComplexMatrix a(2, 3);
  const ComplexMatrix b(2, 2);
  CHECK_THROWS_AS(gphase::numkit::matmul(a, a), std::invalid_argument);
  CHECK_THROWS_AS(gphase::numkit::matvec(b, ComplexVector(3)), std::invalid_argument);
}

TEST_CASE("identity, adjoint and trace behave") {
  const ComplexMatrix id = ComplexMatrix::identity(3);
  CHECK(id(0, 0) == cx{1.0, 0.0});
  CHECK(id(0, 1) == cx{0.0, 0.0});
  CHECK(id.trace() == cx{3.0, 0.0});

  const ComplexMatrix m(2, 2, {cx{1.0, 2.0}, cx{3.0, -1.0}, cx{0.0, 4.0}, cx{5.0, 0.0}});
  const ComplexMatrix md = m.adjoint();
  CHECK(md(0, 0) == std::conj(m(0, 0)));
  CHECK(md(1, 0) == std::conj(m(0, 1)));
  CHECK(md(0, 1) == std::conj(m(1, 0)));
}

TEST_CASE("inner product conjugates its first argument") {
  ComplexVector u(2), v(2);
  u[0] = cx{0.0, 1.0};
  u[1] = cx{1.0, 0.0};
  v[0] = cx{1.0, 0.0};
  v[1] = cx{0.0, 0.0};
  // <u|v> = conj(i)*1 + 0 = -i
  CHECK(gphase::numkit::inner(u, v) == cx{0.0, -1.0});
  CHECK(gphase::numkit::inner(v, u) == cx{0.0, 1.0});
}

TEST_CASE("hermiticity check measures the defect") {
  ComplexMatrix h(2, 2, {cx{1.0, 0.0}, cx{0.0, 1.0}, cx{0.0, -1.0}, cx{2.0, 0.0}});
  CHECK(h.is_hermitian());
  h(1, 0) = cx{0.5, -1.0};
  CHECK(!h.is_hermitian());
  // Defect matrix has entries -0.5 and +0.5, so its Frobenius norm is
  // sqrt(0.5).
  CHECK(h.hermiticity_error() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("closed-form 2x2: diagonal input") {
  // [[1,0],[0,-1]] -> ascending {-1,+1}; eigenvectors [0,1] and [1,0].
  const ComplexMatrix m(2, 2, {cx{1.0, 0.0}, cx{0.0, 0.0}, cx{0.0, 0.0}, cx{-1.0, 0.0}});
  const auto eig = gphase::numkit::eig_hermitian_2x2(m);
  REQUIRE(eig.eigenvalues.size() == 2);
  CHECK(eig.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(eig.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(eig.eigenvectors[0][0]) < 1e-14);
  CHECK(std::abs(eig.eigenvectors[0][1] - cx{1.0, 0.0}) < 1e-14);
  CHECK(std::abs(eig.eigenvectors[1][0] - cx{1.0, 0.0}) < 1e-14);
  CHECK(std::abs(eig.eigenvectors[1][1]) < 1e-14);
}

TEST_CASE("closed-form 2x2: symmetric off-diagonal input") {
  // [[0,1],[1,0]] -> {-1,+1}. The deterministic phase convention makes the
  // largest-magnitude entry (ties: lowest index) real and positive, so the
  // lambda = -1 eigenvector comes out as [1,-1]/sqrt(2).
  const ComplexMatrix m(2, 2, {cx{0.0, 0.0}, cx{1.0, 0.0}, cx{1.0, 0.0}, cx{0.0, 0.0}});
  const auto eig = gphase::numkit::eig_hermitian_2x2(m);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(eig.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(eig.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(eig.eigenvectors[0][0] - cx{s, 0.0}) < 1e-12);
  CHECK(std::abs(eig.eigenvectors[0][1] - cx{-s, 0.0}) < 1e-12);
  CHECK(std::abs(eig.eigenvectors[1][0] - cx{s, 0.0}) < 1e-12);
  CHECK(std::abs(eig.eigenvectors[1][1] - cx{s, 0.0}) < 1e-12);
}

TEST_CASE("jacobi solver: diagonal input is already done") {
  const ComplexMatrix m(3, 3,
                        {cx{3.0, 0.0}, cx{0.0, 0.0}, cx{0.0, 0.0},
                         cx{0.0, 0.0}, cx{1.0, 0.0}, cx{0.0, 0.0},
                         cx{0.0, 0.0}, cx{0.0, 0.0}, cx{2.0, 0.0}});
  const auto eig = gphase::numkit::eig_hermitian(m);
  REQUIRE(eig.eigenvalues.size() == 3);
  CHECK(eig.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eig.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(eig.eigenvalues[2] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("jacobi solver rejects non-hermitian input") {
  ComplexMatrix m(2, 2, {cx{0.0, 0.0}, cx{1.0, 0.0}, cx{2.0, 0.0}, cx{0.0, 0.0}});
  CHECK_THROWS_AS(gphase::numkit::eig_hermitian(m), std::invalid_argument);
  CHECK_THROWS_AS(gphase::numkit::eig_hermitian_2x2(m), std::invalid_argument);
}

TEST_CASE("jacobi solver agrees with the 2x2 closed form") {
  TestRng rng(101);
  for (int trial = 0; trial < 1000; ++trial) {
    const ComplexMatrix a = random_hermitian(2, rng);
    const auto closed = gphase::numkit::eig_hermitian_2x2(a);
    const auto iter = gphase::numkit::eig_hermitian(a);
    for (int k = 0; k < 2; ++k) {
      REQUIRE(std::abs(closed.eigenvalues[k] - iter.eigenvalues[k]) <= 1e-10);
    }
  }
}

TEST_CASE("spectra are similarity invariant") {
  TestRng rng(202);
  for (int trial = 0; trial < 200; ++trial) {
    const ComplexMatrix a = random_hermitian(3, rng);
    // Unitary from the eigenvectors of another random Hermitian matrix.
    const ComplexMatrix h = random_hermitian(3, rng);
    const auto basis = gphase::numkit::eig_hermitian(h);
    ComplexMatrix u(3, 3);
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t i = 0; i < 3; ++i) u(i, j) = basis.eigenvectors[j][i];
    const ComplexMatrix rotated =
        gphase::numkit::matmul(u.adjoint(), gphase::numkit::matmul(a, u));
    const auto ea = gphase::numkit::eig_hermitian(a);
    const auto er = gphase::numkit::eig_hermitian(rotated);
    for (std::size_t k = 0; k < 3; ++k) {
      REQUIRE(std::abs(ea.eigenvalues[k] - er.eigenvalues[k]) <= 1e-10);
    }
  }
}

TEST_CASE("eigendecomposition reconstructs the input") {
  TestRng rng(303);
  for (std::size_t n : {2u, 3u, 4u, 6u}) {
    for (int trial = 0; trial < 50; ++trial) {
      const ComplexMatrix a = random_hermitian(n, rng);
      const auto eig = gphase::numkit::eig_hermitian(a);
      const ComplexMatrix back = reconstruct(eig.eigenvalues, eig.eigenvectors);
      REQUIRE(max_abs_diff(a, back) <= 1e-10 * std::max(1.0, a.frobenius_norm()));
    }
  }
}

TEST_CASE("eigenvalue sum matches trace, product matches determinant") {
  TestRng rng(404);
  for (int trial = 0; trial < 200; ++trial) {
    const ComplexMatrix a2 = random_hermitian(2, rng);
    const ComplexMatrix a3 = random_hermitian(3, rng);
    const auto e2 = gphase::numkit::eig_hermitian(a2);
    const auto e3 = gphase::numkit::eig_hermitian(a3);

    double sum2 = 0.0, sum3 = 0.0;
    double prod2 = 1.0, prod3 = 1.0;
    for (double v : e2.eigenvalues) sum2 += v, prod2 *= v;
    for (double v : e3.eigenvalues) sum3 += v, prod3 *= v;

    REQUIRE(std::abs(sum2 - a2.trace().real()) <= 1e-10);
    REQUIRE(std::abs(sum3 - a3.trace().real()) <= 1e-10);
    REQUIRE(std::abs(prod2 - det2(a2).real()) <= 1e-10);
    REQUIRE(std::abs(prod3 - det3(a3).real()) <= 1e-10);
  }
}

TEST_CASE("eigenvectors come back orthonormal with the pinned phase") {
  TestRng rng(505);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix a = random_hermitian(4, rng);
    const auto eig = gphase::numkit::eig_hermitian(a);
    for (std::size_t i = 0; i < 4; ++i) {
      REQUIRE(std::abs(eig.eigenvectors[i].norm() - 1.0) <= 1e-10);
      for (std::size_t j = i + 1; j < 4; ++j) {
        REQUIRE(std::abs(gphase::numkit::inner(eig.eigenvectors[i], eig.eigenvectors[j])) <=
                1e-10);
      }
      // Phase convention: the largest-magnitude entry is real and positive.
      std::size_t best = 0;
      for (std::size_t k = 1; k < 4; ++k) {
        if (std::abs(eig.eigenvectors[i][k]) > std::abs(eig.eigenvectors[i][best])) best = k;
      }
      REQUIRE(eig.eigenvectors[i][best].real() > 0.0);
      REQUIRE(std::abs(eig.eigenvectors[i][best].imag()) <= 1e-10);
    }
  }
}

TEST_CASE("matmul is associative on random triples") {
  TestRng rng(606);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix a = random_complex(4, rng);
    const ComplexMatrix b = random_complex(4, rng);
    const ComplexMatrix c = random_complex(4, rng);
    const ComplexMatrix left = gphase::numkit::matmul(gphase::numkit::matmul(a, b), c);
    const ComplexMatrix right = gphase::numkit::matmul(a, gphase::numkit::matmul(b, c));
    REQUIRE(max_abs_diff(left, right) <= 1e-12 * std::max(1.0, left.frobenius_norm()));
  }
}

TEST_CASE("eigenvalues come out ascending") {
  TestRng rng(707);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix a = random_hermitian(5, rng);
    const auto eig = gphase::numkit::eig_hermitian(a);
    for (std::size_t k = 1; k < eig.eigenvalues.size(); ++k) {
      REQUIRE(eig.eigenvalues[k - 1] <= eig.eigenvalues[k]);
    }
  }
}
