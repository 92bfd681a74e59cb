#pragma once

#include <array>

#include <Eigen/Dense>

#include "cdft/types.hpp"

namespace cdft {

using Mat4 = Eigen::Matrix<cplx, 4, 4>;
using Spinor4 = Eigen::Matrix<cplx, 4, 1>;
using Mat3 = Eigen::Matrix<cplx, 3, 3>;
using Mat2 = Eigen::Matrix<cplx, 2, 2>;

/// Dirac-representation gamma matrices, metric signature (+,-,-,-).
struct GammaSet {
  std::array<Mat4, 4> gamma;

  const Mat4& operator[](int mu) const { return gamma[static_cast<std::size_t>(mu)]; }
};

GammaSet gamma_matrices();

/// Pauli matrices sigma_1..sigma_3 (index 0..2).
const std::array<Mat2, 3>& pauli_matrices();

/// alpha_i = gamma^0 gamma^i and beta = gamma^0.
Mat4 alpha_matrix(int i);
Mat4 beta_matrix();

/// Spin matrix Sigma_i = diag(sigma_i, sigma_i).
Mat4 sigma_matrix(int i);

/// Minkowski metric diagonal entry g^{mu mu}.
inline double metric(int mu) { return mu == 0 ? 1.0 : -1.0; }

Mat4 anticommutator(const Mat4& a, const Mat4& b);

/// Momentum-space free Dirac Hamiltonian c alpha.p + beta m c^2.
Mat4 dirac_hamiltonian(const Vec3& momentum, const Constants& k);

/// Positive on-shell energy sqrt(m^2 c^4 + |p|^2 c^2).
double on_shell_energy(const Vec3& momentum, double mass, double c);

/// Basis spinors at one 3-momentum, normalised to u^dagger u = v^dagger v = 2E.
struct SpinBasis {
  double energy = 0.0;
  std::array<Spinor4, 2> u;
  std::array<Spinor4, 2> v;
};

/// u^s(p) = sqrt(E+mc^2) (xi ; c sigma.p/(E+mc^2) xi),
/// v^s(p) = sqrt(E+mc^2) (c sigma.p/(E+mc^2) eta ; eta), with xi^s = eta^s.
/// Throws std::invalid_argument for mass <= 0.
SpinBasis basis_spinors(const Vec3& momentum, double mass, double c);

/// Spin-1 matrices (s_i)_{jk} = -i epsilon_{ijk}.
struct SpinOneSet {
  std::array<Mat3, 3> s;

  const Mat3& operator[](int i) const { return s[static_cast<std::size_t>(i)]; }
};

SpinOneSet spin1_matrices();

int levi_civita(int i, int j, int k);

}  // namespace cdft
