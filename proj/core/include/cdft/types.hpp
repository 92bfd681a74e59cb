#pragma once

#include <array>
#include <complex>
#include <vector>

namespace cdft {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline constexpr cplx kI{0.0, 1.0};

// Physical constants carried explicitly so every formula keeps its hbar and c.
// Natural units (all ones) are the default.
struct Constants {
  double hbar = 1.0;
  double c = 1.0;
  double mass = 1.0;
  double charge = 1.0;  // e > 0; the electron carries -e

  double rest_energy() const { return mass * c * c; }
  double compton_length() const { return hbar / (mass * c); }
};

// Real scalar per lattice site.
using DensityField = std::vector<double>;

// Real 3-vector per lattice site, stored component-major.
struct VectorDensityField {
  std::array<std::vector<double>, 3> comp;
};

}  // namespace cdft
