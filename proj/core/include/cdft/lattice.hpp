#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "cdft/types.hpp"

namespace cdft {

/// Periodic cubic lattice of n^3 sites with box length L and the matching
/// momentum grid p_n = (2 pi hbar / L) n, n_i in [-n/2, n/2).
///
/// Sites and momentum bins share one flat index, (i * n + j) * n + k, where
/// i, j, k are array indices in [0, n). Array index i maps to wave number
/// i for i < n/2 and i - n otherwise (FFT ordering).
class Lattice {
 public:
  /// Throws std::invalid_argument unless n is even, n >= 4, L > 0, m > 0.
  Lattice(int n, double length, const Constants& constants);

  int n() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return length_ / n_; }
  double cell_volume() const;
  double momentum_step() const;  // 2 pi hbar / L
  std::size_t sites() const { return sites_; }
  const Constants& constants() const { return constants_; }

  std::size_t flat(int i, int j, int k) const;
  std::array<int, 3> indices(std::size_t flat) const;

  int wave_number(int index) const { return index < n_ / 2 ? index : index - n_; }
  std::array<int, 3> wave_numbers(std::size_t flat) const;

  Vec3 momentum(std::size_t flat) const;
  Vec3 wave_vector(std::size_t flat) const;  // momentum / hbar
  double energy(std::size_t flat) const;     // on-shell E_p

  /// Site position a * (i, j, k) in [0, L)^3.
  Vec3 position(std::size_t flat) const;

  /// Flat index of the bin with negated wave numbers.
  std::size_t negated(std::size_t flat) const;

  /// True if any wave number equals -n/2. Those bins have no distinct
  /// partner under negation and carry no mode content.
  bool is_nyquist(std::size_t flat) const;

  /// Largest |n_i| for which products of two fields stay alias-free.
  int dealiased_cutoff() const { return (n_ - 1) / 4; }

  bool operator==(const Lattice& other) const;

 private:
  int n_;
  double length_;
  Constants constants_;
  std::size_t sites_;
};

Lattice make_lattice(int n, double length, const Constants& constants);

/// Complex k-component value per site, component-major.
template <int K>
struct GridField {
  static constexpr int components = K;

  GridField() = default;
  explicit GridField(std::size_t sites) {
    for (auto& c : comp) c.assign(sites, cplx{});
  }

  std::size_t sites() const { return comp[0].size(); }
  std::vector<cplx>& operator[](int i) { return comp[static_cast<std::size_t>(i)]; }
  const std::vector<cplx>& operator[](int i) const { return comp[static_cast<std::size_t>(i)]; }

  std::array<std::vector<cplx>, K> comp;
};

enum class Direction { forward, inverse };

/// Unitary discrete Fourier pair:
///   forward:  f~(n) = L^{-3/2} a^3 sum_x f(x) e^{-i p_n x / hbar}
///   inverse:  f(x)  = L^{-3/2} sum_n f~(n) e^{+i p_n x / hbar}
/// so that a^3 sum_x |f|^2 = sum_n |f~|^2.
void transform(const Lattice& lattice, std::span<const cplx> in, std::span<cplx> out,
               Direction direction);

std::vector<cplx> transform(const Lattice& lattice, std::span<const cplx> in,
                            Direction direction);

template <int K>
GridField<K> transform(const Lattice& lattice, const GridField<K>& field, Direction direction) {
  GridField<K> out(field.sites());
  for (int c = 0; c < K; ++c) transform(lattice, field[c], out[c], direction);
  return out;
}

/// Spectral partial derivative d/dx_axis of a site field (Nyquist bins dropped).
std::vector<cplx> spectral_derivative(const Lattice& lattice, std::span<const cplx> field, int axis);

/// Spectral divergence of a real vector field.
DensityField spectral_divergence(const Lattice& lattice, const VectorDensityField& field);

/// a^3 sum_x f(x), summed in fixed site order.
double integrate(const Lattice& lattice, std::span<const double> density);
cplx integrate(const Lattice& lattice, std::span<const cplx> density);

/// sqrt(a^3 sum_x |f|^2).
double l2_norm(const Lattice& lattice, std::span<const double> field);
double l2_norm(const Lattice& lattice, std::span<const cplx> field);

template <int K>
double l2_norm(const Lattice& lattice, const GridField<K>& field) {
  double s = 0.0;
  for (int c = 0; c < K; ++c) {
    const double n = l2_norm(lattice, field[c]);
    s += n * n;
  }
  return std::sqrt(s);
}

}  // namespace cdft
