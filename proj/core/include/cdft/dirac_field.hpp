#pragma once

#include <array>
#include <random>
#include <vector>

#include "cdft/lattice.hpp"
#include "cdft/spinor_algebra.hpp"

namespace cdft {

/// Discrete plane-wave amplitudes B^s_n = b^s(p_n) dp^{3/2} and
/// D^s_n = d^s(p_n) dp^{3/2}, indexed [spin][flat momentum bin]. The
/// negative-frequency coefficient of the original expansion is c^s = conj(D^s).
/// Amplitudes refer to the t = 0 phase reference. Nyquist bins must be zero.
struct ModeAmplitudes {
  std::array<std::vector<cplx>, 2> b;
  std::array<std::vector<cplx>, 2> d;

  static ModeAmplitudes zeros(const Lattice& lattice);

  std::size_t bins() const { return b[0].size(); }
  double electron_norm() const;  // sum |B|^2
  double positron_norm() const;  // sum |D|^2
};

struct FieldState {
  Lattice lattice;
  GridField<4> psi;
  double t = 0.0;
};

/// Positive/negative frequency parts. The electron field is `plus`; the
/// positron field is the componentwise conjugate of `minus`.
struct FieldSplit {
  Lattice lattice;
  GridField<4> plus;
  GridField<4> minus;
  double t = 0.0;

  const GridField<4>& electron() const { return plus; }
  GridField<4> positron() const;
};

enum class ModeBand {
  full,       // every non-Nyquist bin
  dealiased,  // |n_i| <= lattice.dealiased_cutoff(); bilinears stay alias-free
};

/// Independent complex Gaussian amplitudes on the selected band, scaled so
/// that E[sum |B|^2 + |D|^2] = 2 * scale^2.
ModeAmplitudes random_modes(const Lattice& lattice, std::mt19937_64& rng,
                            ModeBand band = ModeBand::full, double scale = 1.0);

/// psi(x,t) = L^{-3/2} sum_n (2E_n)^{-1/2} sum_s
///            [ B u e^{i(p.x - E t)/hbar} + conj(D) v e^{-i(p.x - E t)/hbar} ].
FieldState synthesize(const Lattice& lattice, const ModeAmplitudes& modes, double t);

/// Exact left inverse of synthesize (Nyquist-bin content is discarded).
ModeAmplitudes decompose(const FieldState& state);

/// Exact phase rotation B -> B e^{-iE dt/hbar}, D -> D e^{-iE dt/hbar}.
ModeAmplitudes evolve(const Lattice& lattice, const ModeAmplitudes& modes, double dt);

/// psi_+ and psi_- synthesised separately from B and D.
FieldSplit split_modes(const Lattice& lattice, const ModeAmplitudes& modes, double t);

/// Decomposes the state then splits it; plus + minus reproduces psi.
FieldSplit split(const FieldState& state);

/// Analytic time derivatives d(psi_+)/dt and d(psi_-)/dt from the mode phases.
FieldSplit time_derivative(const Lattice& lattice, const ModeAmplitudes& modes, double t);

/// L2 norm of i hbar dpsi/dt - H psi with H applied spectrally to `psi`.
double dirac_residual(const Lattice& lattice, const GridField<4>& psi, const GridField<4>& dpsi_dt);

/// Residual of the synthesised field against its analytic time derivative.
double dirac_residual(const Lattice& lattice, const ModeAmplitudes& modes, double t);

/// Throws std::invalid_argument if the amplitude arrays do not fit the lattice
/// or carry Nyquist content.
void validate_modes(const Lattice& lattice, const ModeAmplitudes& modes);

}  // namespace cdft
