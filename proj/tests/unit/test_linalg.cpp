#include <Eigen/Dense>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hhl_lab/linalg.hpp"
#include "support.hpp"

using namespace hhl_lab;

namespace {

Matrix random_hermitian(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = rng.gaussian();
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = rng.complex_gaussian();
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

Eigen::MatrixXcd to_eigen(const Matrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

double unitarity_defect(const Matrix& u) {
  return (u.adjoint() * u - Matrix::identity(u.rows())).max_abs();
}

}  // namespace

TEST(StateDistance, IdenticalStatesAreZero) {
  Rng rng(3);
  const auto a = random_state(6, rng);
  EXPECT_NEAR(state_distance(a, a), 0.0, 1e-7);
}

TEST(StateDistance, OrthogonalStatesAreSqrt2) {
  const ComplexVector a{1.0, 0.0};
  const ComplexVector b{0.0, 1.0};
  EXPECT_NEAR(state_distance(a, b), std::numbers::sqrt2, 1e-15);
}

TEST(StateDistance, GlobalPhaseSixtyDegreesGivesOne) {
  const ComplexVector a{1.0, 0.0};
  const ComplexVector b{std::polar(1.0, std::numbers::pi / 3.0), 0.0};
  EXPECT_NEAR(state_distance(a, b), 1.0, 1e-12);
  EXPECT_NEAR(distance(a, b), 1.0, 1e-12);
}

TEST(StateDistance, SquaredMatchesEuclideanForRandomPairs) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_state(8, rng);
    const auto b = random_state(8, rng);
    const double d1 = state_distance(a, b);
    const double d2 = distance(a, b);
    EXPECT_NEAR(d1 * d1, d2 * d2, 1e-12);
  }
}

TEST(StateDistance, RejectsBadInputs) {
  const ComplexVector a{1.0, 0.0};
  const ComplexVector b{1.0, 0.0, 0.0};
  const ComplexVector c{2.0, 0.0};
  EXPECT_THROW_KIND(state_distance(a, b), DimensionMismatch);
  EXPECT_THROW_KIND(state_distance(a, c), NotNormalized);
}

TEST(HermitianMatrix, RejectsNonHermitian) {
  Matrix m(2, 2);
  m(0, 1) = Complex{1.0, 1.0};
  m(1, 0) = Complex{1.0, 1.0};
  EXPECT_THROW_KIND(HermitianMatrix{m}, NotHermitian);
  EXPECT_THROW_KIND(HermitianMatrix{Matrix(2, 3)}, NotHermitian);
}

TEST(HermitianMatrix, PerturbationBelowToleranceLeavesSpectrum) {
  Matrix m = random_hermitian(5, 4);
  Matrix perturbed = m;
  perturbed(1, 3) += Complex{3e-13, -2e-13};
  const auto a = eigh(HermitianMatrix(m));
  const auto b = eigh(HermitianMatrix(perturbed));
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(a.eigenvalues[i], b.eigenvalues[i], 1e-12);
}

TEST(Eigh, IdentityReconstructs) {
  const auto dec = eigh(HermitianMatrix(Matrix::identity(4)));
  for (double l : dec.eigenvalues) EXPECT_NEAR(l, 1.0, 1e-15);
  EXPECT_LT(unitarity_defect(dec.eigenvectors), 1e-12);
  EXPECT_LT((reconstruct(dec.eigenvalues, dec.eigenvectors) - Matrix::identity(4)).frobenius_norm(), 1e-12);
}

TEST(Eigh, DiagonalGivesIdentityEigenvectors) {
  const double d[2] = {1.0, 0.25};
  const auto dec = eigh(HermitianMatrix(Matrix::diagonal(d)));
  EXPECT_DOUBLE_EQ(dec.eigenvalues[0], 0.25);
  EXPECT_DOUBLE_EQ(dec.eigenvalues[1], 1.0);
  EXPECT_NEAR(std::abs(dec.eigenvectors(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(dec.eigenvectors(0, 1)), 1.0, 1e-15);
}

TEST(Eigh, MatchesEigenOracleOnRandomMatrices) {
  for (std::size_t n : {2u, 3u, 5u, 8u, 16u, 32u}) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const Matrix m = random_hermitian(n, seed * 100 + n);
      const auto dec = eigh(HermitianMatrix(m));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> oracle(to_eigen(m));
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_NEAR(dec.eigenvalues[i], oracle.eigenvalues()(static_cast<Eigen::Index>(i)), 1e-10) << "n=" << n;
      }
      EXPECT_LT(unitarity_defect(dec.eigenvectors), 1e-10);
      const double residual = (reconstruct(dec.eigenvalues, dec.eigenvectors) - m).frobenius_norm();
      EXPECT_LE(residual, 1e-10 * m.frobenius_norm()) << "n=" << n;
    }
  }
}

TEST(Eigh, PhaseConventionLargestEntryRealPositive) {
  const auto dec = eigh(HermitianMatrix(random_hermitian(6, 9)));
  for (std::size_t c = 0; c < 6; ++c) {
    std::size_t best = 0;
    for (std::size_t r = 1; r < 6; ++r)
      if (std::abs(dec.eigenvectors(r, c)) > std::abs(dec.eigenvectors(best, c))) best = r;
    EXPECT_NEAR(dec.eigenvectors(best, c).imag(), 0.0, 1e-14);
    EXPECT_GT(dec.eigenvectors(best, c).real(), 0.0);
  }
}

TEST(Eigh, DegenerateSpectrum) {
  Rng rng(5);
  const Matrix u = random_unitary(4, rng);
  const double eigs[4] = {0.5, 0.5, 0.5, 1.0};
  const Matrix m = HermitianMatrix(reconstruct(eigs, u)).matrix();
  const auto dec = eigh(HermitianMatrix(m));
  EXPECT_NEAR(dec.eigenvalues[0], 0.5, 1e-12);
  EXPECT_NEAR(dec.eigenvalues[2], 0.5, 1e-12);
  EXPECT_NEAR(dec.eigenvalues[3], 1.0, 1e-12);
  EXPECT_LT((reconstruct(dec.eigenvalues, dec.eigenvectors) - m).frobenius_norm(), 1e-10);
}

TEST(Solve, MatchesEigenLu) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Rng rng(seed);
    Matrix a(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) a(i, j) = rng.complex_gaussian();
    const auto b = random_state(6, rng);
    const auto x = solve(a, b);
    Eigen::VectorXcd eb(6);
    for (int i = 0; i < 6; ++i) eb(i) = b[static_cast<std::size_t>(i)];
    const Eigen::VectorXcd ex = to_eigen(a).partialPivLu().solve(eb);
    for (int i = 0; i < 6; ++i) EXPECT_LT(std::abs(x[static_cast<std::size_t>(i)] - ex(i)), 1e-10);
  }
}

TEST(Rng, Deterministic) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(a.next_u64(), b.next_u64());
    EXPECT_EQ(a.gaussian(), b.gaussian());
  }
}

TEST(Rng, UniformInUnitInterval) {
  Rng rng(1);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000.0, 0.5, 0.01);
}

TEST(RandomUnitary, IsUnitary) {
  Rng rng(8);
  for (std::size_t n : {1u, 2u, 7u, 32u}) EXPECT_LT(unitarity_defect(random_unitary(n, rng)), 1e-12);
}

TEST(RandomSystem, EndpointsForced) {
  const auto sys = random_system(1, 4.0, 64, 7);
  ASSERT_EQ(sys.size(), 2u);
  EXPECT_DOUBLE_EQ(sys.eigenvalues()[0], 63.0 / (64.0 * 4.0));
  EXPECT_DOUBLE_EQ(sys.eigenvalues()[1], 63.0 / 64.0);
}

TEST(RandomSystem, DeterministicBitForBit) {
  const auto a = random_system(3, 10.0, 128, 1);
  const auto b = random_system(3, 10.0, 128, 1);
  EXPECT_EQ(a.eigenvalues(), b.eigenvalues());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) EXPECT_EQ(a.matrix()(i, j), b.matrix()(i, j));
}

TEST(RandomSystem, WindowAndConditionNumber) {
  const auto sys = random_system(3, 10.0, 128, 1);
  ASSERT_EQ(sys.size(), 8u);
  for (double l : sys.eigenvalues()) {
    EXPECT_GE(l, 127.0 / 1280.0);
    EXPECT_LE(l, 127.0 / 128.0);
  }
  EXPECT_NEAR(sys.kappa(), 10.0, 1e-10);
}

TEST(RandomSystem, EigenpairsAndUnitarity) {
  for (int n = 1; n <= 5; ++n) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto sys = random_system(n, 8.0, 256, seed);
      EXPECT_LT(unitarity_defect(sys.eigenvectors()), 1e-10);
      for (std::size_t j = 0; j < sys.size(); ++j) {
        const auto u = sys.eigenvectors().column(j);
        auto au = sys.matrix() * u;
        for (std::size_t i = 0; i < u.size(); ++i) au[i] -= sys.eigenvalues()[j] * u[i];
        EXPECT_LT(norm(au), 1e-10);
      }
    }
  }
}

TEST(RandomSystem, RejectsBadParameters) {
  EXPECT_THROW_KIND(random_system(1, 1.0, 64, 1), BadParameter);
  EXPECT_THROW_KIND(random_system(0, 4.0, 64, 1), BadParameter);
  EXPECT_THROW_KIND(random_system(1, 4.0, 1, 1), BadParameter);
}

TEST(HermitianSystem, FromMatrixRecoversSpectrum) {
  const auto sys = random_system(2, 5.0, 64, 3);
  const auto again = HermitianSystem::from_matrix(HermitianMatrix(sys.matrix()));
  for (std::size_t j = 0; j < sys.size(); ++j) EXPECT_NEAR(again.eigenvalues()[j], sys.eigenvalues()[j], 1e-12);
  EXPECT_NEAR(again.kappa(), sys.kappa(), 1e-10);
}

TEST(HermitianSystem, BasisRoundTrip) {
  const auto sys = random_system(2, 5.0, 64, 3);
  Rng rng(4);
  const auto v = random_state(4, rng);
  const auto back = sys.to_eigenbasis(sys.to_computational(v));
  EXPECT_LT(distance(back, v), 1e-12);
}

TEST(HermitianSystem, FromSpectrumValidates) {
  EXPECT_THROW_KIND(HermitianSystem::from_spectrum({1.0, 0.5}, Matrix::identity(2)), BadParameter);
  EXPECT_THROW_KIND(HermitianSystem::from_spectrum({-0.5, 0.5}, Matrix::identity(2)), BadParameter);
  EXPECT_THROW_KIND(HermitianSystem::from_spectrum({0.5}, Matrix::identity(2)), DimensionMismatch);
}
