#pragma once

#include <utility>
#include <vector>

#include "cdft/dirac_field.hpp"

namespace cdft {

enum class Theory { original, revised };
enum class EnergyDensityForm { canonical, symmetrized };
enum class CurrentKind { original, electron, positron };
enum class PacketKind { electron, positron };

struct ObservableReport {
  double energy_original = 0.0;
  double energy_revised = 0.0;
  double charge_original = 0.0;
  double charge_revised = 0.0;
  double electrons = 0.0;
  double positrons = 0.0;
};

/// All six scalars from mode sums.
ObservableReport observe_modes(const Lattice& lattice, const ModeAmplitudes& modes);

/// All six scalars from spatial integrals of the synthesised fields at time t.
ObservableReport observe_spatial(const Lattice& lattice, const ModeAmplitudes& modes, double t);

/// sum_n sum_s E_n (|B|^2 - |D|^2)
double energy_original(const Lattice& lattice, const ModeAmplitudes& modes);
/// sum_n sum_s E_n (|B|^2 + |D|^2)
double energy_revised(const Lattice& lattice, const ModeAmplitudes& modes);

/// Real part of a^3 sum of the chosen energy density.
double energy_spatial(const Lattice& lattice, const ModeAmplitudes& modes, double t, Theory theory,
                      EnergyDensityForm form = EnergyDensityForm::canonical);

/// Pointwise energy density. The canonical form i hbar psi^dagger dpsi/dt is
/// complex pointwise; the symmetrized form is its real part. Both integrate
/// to the same real total.
std::vector<cplx> energy_density(const Lattice& lattice, const ModeAmplitudes& modes, double t,
                                 Theory theory, EnergyDensityForm form);

struct FourCurrent {
  DensityField rho;
  VectorDensityField j;
  CurrentKind kind = CurrentKind::original;
};

/// rho = -e psi^dagger psi, J = -e c psi^dagger alpha psi.
FourCurrent four_current_original(const FieldState& state);

struct RevisedCurrents {
  FourCurrent electron;  // -e psi_e^dagger psi_e, -e c psi_e^dagger alpha psi_e
  FourCurrent positron;  // +e psi_-^dagger psi_-, +e c psi_-^dagger alpha psi_- (psi_p = conj(psi_-))
};

RevisedCurrents four_current_revised(const FieldSplit& split);

struct ContinuityResidual {
  double absolute = 0.0;  // || d(rho)/dt + div J ||
  double scale = 0.0;     // || d(rho)/dt || + || div J ||

  double relative() const { return scale > 0.0 ? absolute / scale : absolute; }
};

/// d(rho)/dt comes from the mode phases, div J from spectral differentiation
/// of the sampled current. Bilinears of fields restricted to
/// ModeBand::dealiased are represented exactly on the lattice.
ContinuityResidual continuity_residual(const Lattice& lattice, const FourCurrent& current,
                                       const ModeAmplitudes& modes, double t);

struct ParticleNumbers {
  double electrons = 0.0;
  double positrons = 0.0;
};

/// a^3 sum psi_e^dagger psi_e and a^3 sum psi_p^dagger psi_p.
ParticleNumbers particle_numbers(const FieldSplit& split);
/// sum |B|^2 and sum |D|^2.
ParticleNumbers particle_numbers(const ModeAmplitudes& modes);

/// True when the Gaussian envelope is negligible (< 1e-8) at the lattice
/// momentum cutoff, i.e. sigma * pi / a >= sqrt(2 ln 1e8).
bool packet_resolved(const Lattice& lattice, double sigma);

/// Gaussian momentum envelope exp(-sigma^2 |p|^2 / 2 hbar^2) on B^spin (or
/// D^spin), centred at `center`, normalised to one particle.
/// Throws std::invalid_argument for sigma <= 0, spin outside {0,1}, or an
/// unresolved lattice.
ModeAmplitudes build_packet(const Lattice& lattice, const Vec3& center, double sigma, int spin,
                            PacketKind kind);

/// Circular-mean centroid of |weight| per axis.
Vec3 periodic_centroid(const Lattice& lattice, const DensityField& weight);

/// Minimum-image displacement of site `flat` from `origin`.
Vec3 displacement(const Lattice& lattice, std::size_t flat, const Vec3& origin);

/// RMS radius sqrt(sum |r|^2 |rho| / sum |rho|) about the periodic centroid.
/// Throws std::invalid_argument on an all-zero field.
double packet_width(const Lattice& lattice, const DensityField& rho);

struct RadialProfile {
  std::vector<double> radius;  // bin centres
  std::vector<double> density; // mean rho per bin (0 for empty bins)
};

RadialProfile radial_profile(const Lattice& lattice, const DensityField& rho, int bins);

struct SpinReport {
  double magnetic_moment_z = 0.0;   // (1/2c) a^3 sum (r x J_e)_z
  double angular_momentum_z = 0.0;  // a^3 sum (r x g)_z
  double g_ratio = 0.0;             // (mu_z / L_z) (2 m c / -e)
  double rms_radius = 0.0;
};

/// Spin and magnetic moment of a single-electron configuration. The momentum
/// density is the symmetric (energy-flow) one,
///   g = Re(psi^dagger (-i hbar grad) psi) + (hbar/4) curl(psi^dagger Sigma psi).
/// Throws std::invalid_argument if the positron number exceeds 1e-6.
SpinReport spin_diagnostics(const FieldSplit& split);

}  // namespace cdft
