#include <gtest/gtest.h>

#include <random>

#include "cdft/spinor_algebra.hpp"
#include "oracles.hpp"

using namespace cdft;

namespace {

Vec3 random_momentum(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  return {g(rng), g(rng), g(rng)};
}

}  // namespace

TEST(Gamma, MatchesExplicitDiracRepresentation) {
  const GammaSet g = gamma_matrices();
  const auto ref = oracle::gammas();
  for (int mu = 0; mu < 4; ++mu)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) EXPECT_EQ(g[mu](i, j), ref[mu][i][j]) << mu << " " << i << " " << j;
}

TEST(Gamma, CliffordAlgebraExact) {
  const GammaSet g = gamma_matrices();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      const Mat4 expected = (mu == nu ? 2.0 * metric(mu) : 0.0) * Mat4::Identity();
      EXPECT_EQ(anticommutator(g[mu], g[nu]), expected);
    }
}

TEST(Gamma, Hermiticity) {
  const GammaSet g = gamma_matrices();
  EXPECT_EQ(g[0].adjoint(), g[0]);
  for (int i = 1; i < 4; ++i) EXPECT_EQ(g[i].adjoint(), Mat4(-g[i]));
}

TEST(Gamma, AlphaBetaRelations) {
  const Mat4 beta = beta_matrix();
  EXPECT_EQ(beta * beta, Mat4::Identity());
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(alpha_matrix(i) * alpha_matrix(i), Mat4::Identity());
    EXPECT_EQ(anticommutator(alpha_matrix(i), beta), Mat4::Zero());
    for (int j = 0; j < i; ++j) EXPECT_EQ(anticommutator(alpha_matrix(i), alpha_matrix(j)), Mat4::Zero());
  }
}

TEST(Pauli, Algebra) {
  const auto& s = pauli_matrices();
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(s[i] * s[i], Mat2::Identity());
    for (int j = 0; j < 3; ++j) {
      Mat2 expected = Mat2::Zero();
      for (int k = 0; k < 3; ++k) expected += kI * static_cast<double>(levi_civita(i, j, k)) * s[k];
      EXPECT_EQ(Mat2(s[i] * s[j] - s[j] * s[i]), Mat2(2.0 * expected));
    }
  }
}

TEST(Hamiltonian, SquaresToEnergySquared) {
  std::mt19937_64 rng(3);
  const Constants k{1.3, 0.7, 2.1, 1.0};
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 p = random_momentum(rng, 2.0);
    const Mat4 h = dirac_hamiltonian(p, k);
    const double e = on_shell_energy(p, k.mass, k.c);
    EXPECT_LT((h * h - e * e * Mat4::Identity()).cwiseAbs().maxCoeff(), 1e-12 * e * e);
  }
}

TEST(BasisSpinors, MatchExplicitFormula) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 p = random_momentum(rng, 1.5);
    const SpinBasis b = basis_spinors(p, 1.0, 1.0);
    for (int s = 0; s < 2; ++s) {
      const auto ref = oracle::u_spinor(p, s, 1.0, 1.0);
      for (int i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(b.u[s](i) - ref[i]), 0.0, 1e-13);
    }
  }
}

TEST(BasisSpinors, EigenvectorsNormalizationOrthogonality) {
  std::mt19937_64 rng(7);
  const Constants k{1.0, 1.7, 0.6, 1.0};
  for (int trial = 0; trial < 50; ++trial) {
    const Vec3 p = random_momentum(rng, 1.0);
    const Vec3 mp{-p[0], -p[1], -p[2]};
    const SpinBasis b = basis_spinors(p, k.mass, k.c);
    const SpinBasis bm = basis_spinors(mp, k.mass, k.c);
    const double e = b.energy;
    const Mat4 h = dirac_hamiltonian(p, k);
    const Mat4 hm = dirac_hamiltonian(mp, k);
    for (int r = 0; r < 2; ++r) {
      EXPECT_LT((h * b.u[r] - e * b.u[r]).norm(), 1e-12 * e);
      EXPECT_LT((hm * b.v[r] + e * b.v[r]).norm(), 1e-12 * e);
      for (int s = 0; s < 2; ++s) {
        const double delta = r == s ? 2.0 * e : 0.0;
        EXPECT_NEAR(std::abs(b.u[r].dot(b.u[s]) - delta), 0.0, 1e-12 * e);
        EXPECT_NEAR(std::abs(b.v[r].dot(b.v[s]) - delta), 0.0, 1e-12 * e);
        EXPECT_NEAR(std::abs(b.u[r].dot(bm.v[s])), 0.0, 1e-12 * e);
      }
    }
  }
}

TEST(BasisSpinors, RestFrame) {
  const SpinBasis b = basis_spinors({0, 0, 0}, 2.0, 1.0);
  EXPECT_DOUBLE_EQ(b.energy, 2.0);
  EXPECT_EQ(b.u[0](0), cplx(2.0));
  EXPECT_EQ(b.v[0](2), cplx(2.0));
}

TEST(BasisSpinors, RejectsNonPositiveMass) {
  EXPECT_THROW(basis_spinors({0, 0, 0}, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(basis_spinors({0, 0, 0}, -1.0, 1.0), std::invalid_argument);
}

TEST(SpinOne, CommutationAndHelicitySpectrum) {
  const SpinOneSet s = spin1_matrices();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Mat3 expected = Mat3::Zero();
      for (int k = 0; k < 3; ++k) expected += kI * static_cast<double>(levi_civita(i, j, k)) * s[k];
      EXPECT_EQ(Mat3(s[i] * s[j] - s[j] * s[i]), expected);
    }
  const Mat3 sz = s[2];
  Eigen::SelfAdjointEigenSolver<Mat3> solver(sz);
  EXPECT_NEAR(solver.eigenvalues()(0), -1.0, 1e-15);
  EXPECT_NEAR(solver.eigenvalues()(1), 0.0, 1e-15);
  EXPECT_NEAR(solver.eigenvalues()(2), 1.0, 1e-15);
}
