#pragma once

#include <random>

#include "cdft/lattice.hpp"
#include "cdft/spinor_algebra.hpp"

namespace cdft {

/// Free electromagnetic field in Gaussian units.
struct EMState {
  Lattice lattice;
  VectorDensityField e;
  VectorDensityField b;
  double t = 0.0;
};

/// Three-component complex field built from E + iB with the k-space weight
/// (8 pi hbar |k| c)^{-1/2}, together with its helicity (+1 / -1) parts.
/// The photon field is `plus`; the antiphoton field is conj(minus).
struct PhiField {
  Lattice lattice;
  GridField<3> phi;
  GridField<3> plus;
  GridField<3> minus;
  double t = 0.0;

  GridField<3> antiphoton() const;
};

/// Throws std::invalid_argument if E or B has a nonzero spatial mean.
PhiField phi_from_em(const EMState& state);

/// Exact inverse of phi_from_em on zero-mean fields.
EMState em_from_phi(const PhiField& phi);

/// Helicity-lambda content at k picks up exp(-i lambda c |k| dt).
PhiField phi_evolve(const PhiField& phi, double dt);

/// Free Maxwell evolution solved exactly per Fourier mode (transverse content).
EMState maxwell_evolve(const EMState& state, double dt);

struct EMEnergies {
  double standard = 0.0;       // a^3 sum (E^2 + B^2) / 8 pi
  double phi = 0.0;            // i hbar a^3 sum (phi_+^dagger dphi_+/dt - phi_-^dagger dphi_-/dt)
  double particle_form = 0.0;  // i hbar a^3 sum (phi_g^dagger dphi_g/dt + phi_gbar^dagger dphi_gbar/dt)
};

EMEnergies em_energies(const EMState& state);

/// Time derivatives of the helicity parts, d(phi_+)/dt and d(phi_-)/dt.
std::pair<GridField<3>, GridField<3>> phi_time_derivative(const PhiField& phi);

struct PhotonNumbers {
  double photons = 0.0;      // a^3 sum |phi_+|^2
  double antiphotons = 0.0;  // a^3 sum |phi_-|^2
};

PhotonNumbers photon_number(const PhiField& phi);

/// Spectral divergence norms of E and B.
double em_divergence(const EMState& state);

/// Random transverse zero-mean field with no Nyquist-plane content.
EMState random_free_em(const Lattice& lattice, std::mt19937_64& rng, double amplitude = 1.0);

/// E = A (cos th, -sin th, 0), B = A (sin th, cos th, 0), th = k z, with k = 2 pi nz / L.
/// Positive-helicity, purely positive frequency.
EMState circular_wave(const Lattice& lattice, int nz, double amplitude);

/// E = A cos(k z) x, B = A cos(k z) y.
EMState linear_wave(const Lattice& lattice, int nz, double amplitude);

/// Projector onto eigenvalue lambda of s.khat.
Mat3 helicity_projector(const Vec3& khat, int lambda);

}  // namespace cdft
