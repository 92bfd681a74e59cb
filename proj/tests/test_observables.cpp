#include <gtest/gtest.h>

#include <random>

#include "cdft/observables.hpp"
#include "oracles.hpp"

using namespace cdft;

namespace {

ModeAmplitudes only_b(ModeAmplitudes m) {
  for (auto& d : m.d) std::fill(d.begin(), d.end(), cplx{});
  return m;
}

ModeAmplitudes only_d(ModeAmplitudes m) {
  for (auto& b : m.b) std::fill(b.begin(), b.end(), cplx{});
  return m;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(Energy, SignStructureOfOriginalTheory) {
  const Lattice l(8, 6.0, {});
  std::mt19937_64 rng(21);
  for (int i = 0; i < 10; ++i) {
    const ModeAmplitudes m = random_modes(l, rng);
    EXPECT_GT(energy_original(l, only_b(m)), 0.0);
    EXPECT_LT(energy_original(l, only_d(m)), 0.0);
    EXPECT_GT(energy_revised(l, only_d(m)), 0.0);
  }
}

TEST(Energy, RestModeGivesRestEnergy) {
  const Constants k{1.0, 2.0, 0.5, 1.0};
  const Lattice l(4, 3.0, k);
  ModeAmplitudes m = ModeAmplitudes::zeros(l);
  m.b[1][0] = 1.0;
  EXPECT_NEAR(energy_spatial(l, m, 0.3, Theory::original), k.rest_energy(), 1e-12);
  ModeAmplitudes d = ModeAmplitudes::zeros(l);
  d.d[0][0] = 1.0;
  EXPECT_NEAR(energy_spatial(l, d, 0.3, Theory::original), -k.rest_energy(), 1e-12);
  EXPECT_NEAR(energy_spatial(l, d, 0.3, Theory::revised), k.rest_energy(), 1e-12);
}

TEST(Energy, RevisedIdentity) {
  const Lattice l(8, 6.0, {});
  std::mt19937_64 rng(22);
  const ModeAmplitudes m = random_modes(l, rng);
  double dsum = 0.0;
  for (int s = 0; s < 2; ++s)
    for (std::size_t f = 0; f < m.bins(); ++f) dsum += l.energy(f) * std::norm(m.d[s][f]);
  EXPECT_NEAR(energy_original(l, m), energy_revised(l, m) - 2.0 * dsum, 1e-12 * energy_revised(l, m));
}

TEST(Energy, DensityFormsIntegrateEqually) {
  const Lattice l(8, 6.0, {});
  std::mt19937_64 rng(23);
  const ModeAmplitudes m = random_modes(l, rng);
  for (Theory th : {Theory::original, Theory::revised}) {
    const double a = energy_spatial(l, m, 0.4, th, EnergyDensityForm::canonical);
    const double b = energy_spatial(l, m, 0.4, th, EnergyDensityForm::symmetrized);
    EXPECT_NEAR(a, b, 1e-12 * std::abs(a));
    const auto dens = energy_density(l, m, 0.4, th, EnergyDensityForm::symmetrized);
    for (const cplx& v : dens) EXPECT_EQ(v.imag(), 0.0);
  }
}

TEST(Duality, ModeSumsEqualSpatialIntegrals) {
  const Lattice l(8, 6.0, {1.0, 1.0, 1.4, 0.8});
  std::mt19937_64 rng(24);
  const ModeAmplitudes m = random_modes(l, rng);
  const ObservableReport a = observe_modes(l, m);
  const ObservableReport b = observe_spatial(l, m, 0.9);
  EXPECT_LT(rel(b.energy_original, a.energy_original), 1e-10);
  EXPECT_LT(rel(b.energy_revised, a.energy_revised), 1e-10);
  EXPECT_LT(rel(b.charge_original, a.charge_original), 1e-10);
  EXPECT_LT(rel(b.charge_revised, a.charge_revised), 1e-10);
  EXPECT_LT(rel(b.electrons, a.electrons), 1e-10);
  EXPECT_LT(rel(b.positrons, a.positrons), 1e-10);
  EXPECT_NEAR(a.charge_revised, -0.8 * a.electrons + 0.8 * a.positrons, 1e-12);
  EXPECT_NEAR(a.charge_original, -0.8 * (a.electrons + a.positrons), 1e-12);
}

TEST(Continuity, AllThreeCurrentsConserved) {
  const Lattice l(16, 10.0, {});
  std::mt19937_64 rng(25);
  const ModeAmplitudes m = random_modes(l, rng, ModeBand::dealiased);
  for (double t : {0.0, 1.3}) {
    const FieldSplit s = split_modes(l, m, t);
    const RevisedCurrents rc = four_current_revised(s);
    EXPECT_LT(continuity_residual(l, four_current_original(synthesize(l, m, t)), m, t).relative(), 1e-12);
    EXPECT_LT(continuity_residual(l, rc.electron, m, t).relative(), 1e-12);
    EXPECT_LT(continuity_residual(l, rc.positron, m, t).relative(), 1e-12);
  }
}

TEST(Continuity, FiniteDifferenceOracle) {
  const Lattice l(8, 6.0, {});
  std::mt19937_64 rng(26);
  const ModeAmplitudes m = random_modes(l, rng, ModeBand::dealiased);
  const double t = 0.5, h = 1e-5;
  const auto rho_p = four_current_revised(split_modes(l, m, t + h)).positron.rho;
  const auto rho_m = four_current_revised(split_modes(l, m, t - h)).positron.rho;
  const DensityField div = spectral_divergence(l, four_current_revised(split_modes(l, m, t)).positron.j);
  double err = 0.0, scale = 0.0;
  for (std::size_t f = 0; f < l.sites(); ++f) {
    const double drho = (rho_p[f] - rho_m[f]) / (2 * h);
    err = std::max(err, std::abs(drho + div[f]));
    scale = std::max(scale, std::abs(drho));
  }
  EXPECT_LT(err, 1e-7 * std::max(scale, 1.0));
}

TEST(Packet, RejectsBadRequests) {
  const Lattice l(16, 8.0, {});
  EXPECT_THROW(build_packet(l, {}, 0.0, 0, PacketKind::electron), std::invalid_argument);
  EXPECT_THROW(build_packet(l, {}, -1.0, 0, PacketKind::electron), std::invalid_argument);
  EXPECT_THROW(build_packet(l, {}, 2.0, 2, PacketKind::electron), std::invalid_argument);
  EXPECT_FALSE(packet_resolved(l, 0.5));
  EXPECT_THROW(build_packet(l, {}, 0.5, 0, PacketKind::electron), std::invalid_argument);
}

TEST(Packet, NormalizedSingleParticle) {
  const Lattice l(16, 12.0, {});
  const ModeAmplitudes m = build_packet(l, {6, 6, 6}, 2.0, 0, PacketKind::electron);
  EXPECT_NEAR(m.electron_norm(), 1.0, 1e-14);
  EXPECT_EQ(m.positron_norm(), 0.0);
  const ModeAmplitudes p = build_packet(l, {6, 6, 6}, 2.0, 1, PacketKind::positron);
  EXPECT_NEAR(p.positron_norm(), 1.0, 1e-14);
  EXPECT_EQ(p.electron_norm(), 0.0);
}

TEST(Packet, CentroidFollowsCentre) {
  const Lattice l(16, 16.0, {});
  const ModeAmplitudes m = build_packet(l, {3.0, 12.5, 8.0}, 2.0, 0, PacketKind::electron);
  const auto rho = four_current_revised(split_modes(l, m, 0.0)).electron.rho;
  const Vec3 c = periodic_centroid(l, rho);
  EXPECT_NEAR(c[0], 3.0, 1e-6);
  EXPECT_NEAR(c[1], 12.5, 1e-6);
  EXPECT_NEAR(c[2], 8.0, 1e-6);
}

TEST(Packet, WidthMatchesMomentumQuadrature) {
  const Lattice l(24, 24.0, {});
  const ModeAmplitudes m = build_packet(l, {12, 12, 12}, 2.0, 0, PacketKind::electron);
  const auto rho = four_current_revised(split_modes(l, m, 0.0)).electron.rho;
  const oracle::PacketMoments ref = oracle::packet_moments(2.0, 1.0, 1.0, 1.0, 1.0, 61);
  EXPECT_NEAR(packet_width(l, rho), ref.rms_radius, 1e-4 * ref.rms_radius);
  EXPECT_GT(ref.rms_radius, std::sqrt(1.5) * 2.0);
  // wide packets approach the nonrelativistic sqrt(3/2) sigma
  const double wide = oracle::packet_moments(12.0, 1.0, 1.0, 1.0, 1.0, 61).rms_radius;
  EXPECT_NEAR(wide, std::sqrt(1.5) * 12.0, 0.01 * wide);
}

TEST(Packet, WidthRejectsZeroField) {
  const Lattice l(4, 4.0, {});
  EXPECT_THROW(packet_width(l, DensityField(l.sites(), 0.0)), std::invalid_argument);
}

TEST(Packet, RadialProfileIntegratesToCharge) {
  const Lattice l(16, 12.0, {});
  const ModeAmplitudes m = build_packet(l, {6, 6, 6}, 1.5, 0, PacketKind::electron);
  const auto rho = four_current_revised(split_modes(l, m, 0.0)).electron.rho;
  const RadialProfile p = radial_profile(l, rho, 12);
  ASSERT_EQ(p.radius.size(), 12u);
  for (std::size_t i = 1; i < p.radius.size(); ++i) EXPECT_GT(p.radius[i], p.radius[i - 1]);
  EXPECT_LT(p.density.front(), 0.0);
  EXPECT_LT(std::abs(p.density.back()), std::abs(p.density.front()));
  EXPECT_NEAR(integrate(l, rho), -1.0, 1e-12);
}

TEST(Spin, MatchesMomentumQuadrature) {
  const Lattice l(24, 24.0, {});
  const ModeAmplitudes m = build_packet(l, {12, 12, 12}, 2.0, 0, PacketKind::electron);
  const SpinReport r = spin_diagnostics(split_modes(l, m, 0.0));
  const oracle::PacketMoments ref = oracle::packet_moments(2.0, 1.0, 1.0, 1.0, 1.0, 61);
  EXPECT_NEAR(r.angular_momentum_z, ref.angular_momentum_z, 1e-4);
  EXPECT_NEAR(ref.angular_momentum_z, 0.5, 1e-6);
  EXPECT_NEAR(r.magnetic_moment_z, ref.magnetic_moment_z, 1e-4 * std::abs(ref.magnetic_moment_z));
  EXPECT_NEAR(r.g_ratio, ref.magnetic_moment_z / ref.angular_momentum_z * (-2.0), 1e-3);
}

TEST(Spin, SpinDownFlipsSigns) {
  const Lattice l(16, 16.0, {});
  const SpinReport up = spin_diagnostics(split_modes(l, build_packet(l, {8, 8, 8}, 2.0, 0, PacketKind::electron), 0.0));
  const SpinReport down =
      spin_diagnostics(split_modes(l, build_packet(l, {8, 8, 8}, 2.0, 1, PacketKind::electron), 0.0));
  EXPECT_NEAR(up.angular_momentum_z, -down.angular_momentum_z, 1e-10);
  EXPECT_NEAR(up.magnetic_moment_z, -down.magnetic_moment_z, 1e-10);
}

TEST(Spin, RejectsPositronContent) {
  const Lattice l(16, 16.0, {});
  const ModeAmplitudes m = build_packet(l, {8, 8, 8}, 2.0, 0, PacketKind::positron);
  EXPECT_THROW(spin_diagnostics(split_modes(l, m, 0.0)), std::invalid_argument);
}
