#include "cdft/spinor_algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace cdft {

const std::array<Mat2, 3>& pauli_matrices() {
  static const std::array<Mat2, 3> sigma = [] {
    std::array<Mat2, 3> s;
    s[0] << 0.0, 1.0, 1.0, 0.0;
    s[1] << 0.0, -kI, kI, 0.0;
    s[2] << 1.0, 0.0, 0.0, -1.0;
    return s;
  }();
  return sigma;
}

GammaSet gamma_matrices() {
  GammaSet g;
  const auto& sigma = pauli_matrices();
  g.gamma[0].setZero();
  g.gamma[0].topLeftCorner<2, 2>() = Mat2::Identity();
  g.gamma[0].bottomRightCorner<2, 2>() = -Mat2::Identity();
  for (int i = 0; i < 3; ++i) {
    Mat4& gi = g.gamma[static_cast<std::size_t>(i + 1)];
    gi.setZero();
    gi.topRightCorner<2, 2>() = sigma[static_cast<std::size_t>(i)];
    gi.bottomLeftCorner<2, 2>() = -sigma[static_cast<std::size_t>(i)];
  }
  return g;
}

Mat4 alpha_matrix(int i) {
  const auto& sigma = pauli_matrices()[static_cast<std::size_t>(i)];
  Mat4 a = Mat4::Zero();
  a.topRightCorner<2, 2>() = sigma;
  a.bottomLeftCorner<2, 2>() = sigma;
  return a;
}

Mat4 beta_matrix() { return gamma_matrices()[0]; }

Mat4 sigma_matrix(int i) {
  const auto& sigma = pauli_matrices()[static_cast<std::size_t>(i)];
  Mat4 s = Mat4::Zero();
  s.topLeftCorner<2, 2>() = sigma;
  s.bottomRightCorner<2, 2>() = sigma;
  return s;
}

Mat4 anticommutator(const Mat4& a, const Mat4& b) { return a * b + b * a; }

Mat4 dirac_hamiltonian(const Vec3& p, const Constants& k) {
  Mat4 h = k.rest_energy() * beta_matrix();
  for (int i = 0; i < 3; ++i) h += (k.c * p[static_cast<std::size_t>(i)]) * alpha_matrix(i);
  return h;
}

double on_shell_energy(const Vec3& p, double mass, double c) {
  const double p2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
  return std::sqrt(mass * mass * c * c * c * c + p2 * c * c);
}

SpinBasis basis_spinors(const Vec3& p, double mass, double c) {
  if (!(mass > 0.0)) throw std::invalid_argument("basis_spinors: mass must be positive");
  SpinBasis basis;
  basis.energy = on_shell_energy(p, mass, c);
  const double ep = basis.energy + mass * c * c;
  const double norm = std::sqrt(ep);

  // c sigma.p / (E + mc^2)
  const auto& sigma = pauli_matrices();
  Mat2 sp = (c / ep) * (p[0] * sigma[0] + p[1] * sigma[1] + p[2] * sigma[2]);

  for (int s = 0; s < 2; ++s) {
    Eigen::Matrix<cplx, 2, 1> seed = Eigen::Matrix<cplx, 2, 1>::Zero();
    seed(s) = 1.0;
    Spinor4 u;
    u.head<2>() = seed;
    u.tail<2>() = sp * seed;
    Spinor4 v;
    v.head<2>() = sp * seed;
    v.tail<2>() = seed;
    basis.u[static_cast<std::size_t>(s)] = norm * u;
    basis.v[static_cast<std::size_t>(s)] = norm * v;
  }
  return basis;
}

int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  // even permutations of (0,1,2)
  if ((i == 0 && j == 1) || (i == 1 && j == 2) || (i == 2 && j == 0)) return 1;
  return -1;
}

SpinOneSet spin1_matrices() {
  SpinOneSet set;
  for (int i = 0; i < 3; ++i) {
    Mat3& s = set.s[static_cast<std::size_t>(i)];
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) s(j, k) = -kI * static_cast<double>(levi_civita(i, j, k));
  }
  return set;
}

}  // namespace cdft
