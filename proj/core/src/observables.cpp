#include "cdft/observables.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cdft {

namespace {

GridField<4> sum_fields(const GridField<4>& a, const GridField<4>& b) {
  GridField<4> out(a.sites());
  for (int c = 0; c < 4; ++c)
    for (std::size_t f = 0; f < a.sites(); ++f) out[c][f] = a[c][f] + b[c][f];
  return out;
}

GridField<4> conjugated(const GridField<4>& a) {
  GridField<4> out(a.sites());
  for (int c = 0; c < 4; ++c)
    for (std::size_t f = 0; f < a.sites(); ++f) out[c][f] = std::conj(a[c][f]);
  return out;
}

// psi^dagger chi at one site.
cplx inner(const GridField<4>& psi, const GridField<4>& chi, std::size_t f) {
  cplx s{};
  for (int c = 0; c < 4; ++c) s += std::conj(psi[c][f]) * chi[c][f];
  return s;
}

double density(const GridField<4>& psi, std::size_t f) {
  double s = 0.0;
  for (int c = 0; c < 4; ++c) s += std::norm(psi[c][f]);
  return s;
}

// psi^dagger alpha_i psi for i = 0..2 at one site.
Vec3 alpha_bilinear(const GridField<4>& psi, std::size_t f) {
  // alpha_i = [[0, sigma_i], [sigma_i, 0]]: psi^dagger alpha_i psi = 2 Re(upper^dagger sigma_i lower)
  const cplx u0 = psi[0][f], u1 = psi[1][f], l0 = psi[2][f], l1 = psi[3][f];
  const cplx sx = std::conj(u0) * l1 + std::conj(u1) * l0;
  const cplx sy = -kI * std::conj(u0) * l1 + kI * std::conj(u1) * l0;
  const cplx sz = std::conj(u0) * l0 - std::conj(u1) * l1;
  return {2.0 * sx.real(), 2.0 * sy.real(), 2.0 * sz.real()};
}

// psi^dagger Sigma_i psi.
Vec3 spin_bilinear(const GridField<4>& psi, std::size_t f) {
  Vec3 s{0.0, 0.0, 0.0};
  for (int block = 0; block < 2; ++block) {
    const cplx a = psi[2 * block][f], b = psi[2 * block + 1][f];
    s[0] += 2.0 * (std::conj(a) * b).real();
    s[1] += 2.0 * (std::conj(a) * b).imag();
    s[2] += std::norm(a) - std::norm(b);
  }
  return s;
}

FourCurrent current_of(const Lattice& lattice, const GridField<4>& psi, double sign, CurrentKind kind) {
  const auto& k = lattice.constants();
  FourCurrent cur;
  cur.kind = kind;
  cur.rho.assign(lattice.sites(), 0.0);
  for (auto& c : cur.j.comp) c.assign(lattice.sites(), 0.0);
  for (std::size_t f = 0; f < lattice.sites(); ++f) {
    cur.rho[f] = sign * k.charge * density(psi, f);
    const Vec3 a = alpha_bilinear(psi, f);
    for (int i = 0; i < 3; ++i) cur.j.comp[i][f] = sign * k.charge * k.c * a[i];
  }
  return cur;
}

std::vector<cplx> canonical_density(double hbar, const GridField<4>& psi, const GridField<4>& dpsi) {
  std::vector<cplx> out(psi.sites());
  for (std::size_t f = 0; f < out.size(); ++f) out[f] = kI * hbar * inner(psi, dpsi, f);
  return out;
}

std::vector<cplx> symmetrized_density(double hbar, const GridField<4>& psi, const GridField<4>& dpsi) {
  std::vector<cplx> out(psi.sites());
  for (std::size_t f = 0; f < out.size(); ++f) {
    const cplx z = inner(psi, dpsi, f);
    out[f] = (kI * hbar / 2.0) * (z - std::conj(z));
  }
  return out;
}

}  // namespace

double energy_original(const Lattice& lattice, const ModeAmplitudes& modes) {
  double s = 0.0;
  for (std::size_t f = 0; f < lattice.sites(); ++f) {
    if (lattice.is_nyquist(f)) continue;
    double w = 0.0;
    for (int sp = 0; sp < 2; ++sp) w += std::norm(modes.b[sp][f]) - std::norm(modes.d[sp][f]);
    s += lattice.energy(f) * w;
  }
  return s;
}

double energy_revised(const Lattice& lattice, const ModeAmplitudes& modes) {
  double s = 0.0;
  for (std::size_t f = 0; f < lattice.sites(); ++f) {
    if (lattice.is_nyquist(f)) continue;
    double w = 0.0;
    for (int sp = 0; sp < 2; ++sp) w += std::norm(modes.b[sp][f]) + std::norm(modes.d[sp][f]);
    s += lattice.energy(f) * w;
  }
  return s;
}

std::vector<cplx> energy_density(const Lattice& lattice, const ModeAmplitudes& modes, double t,
                                 Theory theory, EnergyDensityForm form) {
  const double hbar = lattice.constants().hbar;
  const FieldSplit fields = split_modes(lattice, modes, t);
  const FieldSplit rates = time_derivative(lattice, modes, t);
  auto density_of = [&](const GridField<4>& psi, const GridField<4>& dpsi) {
    return form == EnergyDensityForm::canonical ? canonical_density(hbar, psi, dpsi)
                                                : symmetrized_density(hbar, psi, dpsi);
  };
  if (theory == Theory::original) {
    return density_of(sum_fields(fields.plus, fields.minus), sum_fields(rates.plus, rates.minus));
  }
  auto electron = density_of(fields.plus, rates.plus);
  const auto positron = density_of(conjugated(fields.minus), conjugated(rates.minus));
  for (std::size_t f = 0; f < electron.size(); ++f) electron[f] += positron[f];
  return electron;
}

double energy_spatial(const Lattice& lattice, const ModeAmplitudes& modes, double t, Theory theory,
                      EnergyDensityForm form) {
  return integrate(lattice, energy_density(lattice, modes, t, theory, form)).real();
}

ObservableReport observe_modes(const Lattice& lattice, const ModeAmplitudes& modes) {
  const double e = lattice.constants().charge;
  ObservableReport r;
  r.energy_original = energy_original(lattice, modes);
  r.energy_revised = energy_revised(lattice, modes);
  r.electrons = modes.electron_norm();
  r.positrons = modes.positron_norm();
  r.charge_original = -e * (r.electrons + r.positrons);
  r.charge_revised = -e * r.electrons + e * r.positrons;
  return r;
}

ObservableReport observe_spatial(const Lattice& lattice, const ModeAmplitudes& modes, double t) {
  const FieldSplit s = split_modes(lattice, modes, t);
  const FieldState state{lattice, sum_fields(s.plus, s.minus), t};
  ObservableReport r;
  r.energy_original = energy_spatial(lattice, modes, t, Theory::original);
  r.energy_revised = energy_spatial(lattice, modes, t, Theory::revised);
  r.charge_original = integrate(lattice, four_current_original(state).rho);
  const RevisedCurrents rc = four_current_revised(s);
  r.charge_revised = integrate(lattice, rc.electron.rho) + integrate(lattice, rc.positron.rho);
  const ParticleNumbers n = particle_numbers(s);
  r.electrons = n.electrons;
  r.positrons = n.positrons;
  return r;
}

FourCurrent four_current_original(const FieldState& state) {
  return current_of(state.lattice, state.psi, -1.0, CurrentKind::original);
}

RevisedCurrents four_current_revised(const FieldSplit& split) {
  // psi_p^dagger alpha psi_p read with psi_p = conj(psi_-) as the row that
  // contracts against alpha, i.e. psi_-^dagger alpha psi_-.
  return {current_of(split.lattice, split.plus, -1.0, CurrentKind::electron),
          current_of(split.lattice, split.minus, +1.0, CurrentKind::positron)};
}

ContinuityResidual continuity_residual(const Lattice& lattice, const FourCurrent& current,
                                       const ModeAmplitudes& modes, double t) {
  const double e = lattice.constants().charge;
  const FieldSplit fields = split_modes(lattice, modes, t);
  const FieldSplit rates = time_derivative(lattice, modes, t);

  GridField<4> psi;
  GridField<4> dpsi;
  double sign = -1.0;
  switch (current.kind) {
    case CurrentKind::original:
      psi = sum_fields(fields.plus, fields.minus);
      dpsi = sum_fields(rates.plus, rates.minus);
      break;
    case CurrentKind::electron:
      psi = fields.plus;
      dpsi = rates.plus;
      break;
    case CurrentKind::positron:
      psi = fields.minus;
      dpsi = rates.minus;
      sign = 1.0;
      break;
  }

  const DensityField div = spectral_divergence(lattice, current.j);
  DensityField drho(lattice.sites());
  DensityField res(lattice.sites());
  for (std::size_t f = 0; f < lattice.sites(); ++f) {
    drho[f] = sign * e * 2.0 * inner(psi, dpsi, f).real();
    res[f] = drho[f] + div[f];
  }
  ContinuityResidual out;
  out.absolute = l2_norm(lattice, res);
  out.scale = l2_norm(lattice, drho) + l2_norm(lattice, div);
  return out;
}

ParticleNumbers particle_numbers(const FieldSplit& split) {
  ParticleNumbers n;
  DensityField pe(split.lattice.sites());
  DensityField pp(split.lattice.sites());
  for (std::size_t f = 0; f < pe.size(); ++f) {
    pe[f] = density(split.plus, f);
    pp[f] = density(split.minus, f);  // |conj(psi_-)|^2 = |psi_-|^2
  }
  n.electrons = integrate(split.lattice, pe);
  n.positrons = integrate(split.lattice, pp);
  return n;
}

ParticleNumbers particle_numbers(const ModeAmplitudes& modes) {
  return {modes.electron_norm(), modes.positron_norm()};
}

bool packet_resolved(const Lattice& lattice, double sigma) {
  const double cutoff = std::numbers::pi * lattice.constants().hbar / lattice.spacing();
  const double exponent = sigma * sigma * cutoff * cutoff /
                          (2.0 * lattice.constants().hbar * lattice.constants().hbar);
  return exponent >= std::log(1e8);
}

ModeAmplitudes build_packet(const Lattice& lattice, const Vec3& center, double sigma, int spin,
                            PacketKind kind) {
  if (!(sigma > 0.0)) throw std::invalid_argument("build_packet: sigma must be positive");
  if (spin != 0 && spin != 1) throw std::invalid_argument("build_packet: spin index must be 0 or 1");
  if (!packet_resolved(lattice, sigma))
    throw std::invalid_argument("build_packet: lattice spacing does not resolve the packet envelope");
  const double hbar = lattice.constants().hbar;
  ModeAmplitudes m = ModeAmplitudes::zeros(lattice);
  auto& target = kind == PacketKind::electron ? m.b[spin] : m.d[spin];
  double norm = 0.0;
  for (std::size_t f = 0; f < lattice.sites(); ++f) {
    if (lattice.is_nyquist(f)) continue;
    const Vec3 p = lattice.momentum(f);
    const double p2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    const double px0 = p[0] * center[0] + p[1] * center[1] + p[2] * center[2];
    const double env = std::exp(-sigma * sigma * p2 / (2.0 * hbar * hbar));
    target[f] = std::polar(env, -px0 / hbar);
    norm += env * env;
  }
  const double s = 1.0 / std::sqrt(norm);
  for (auto& v : target) v *= s;
  return m;
}

Vec3 periodic_centroid(const Lattice& lattice, const DensityField& weight) {
  Vec3 centroid{};
  const double two_pi_over_l = 2.0 * std::numbers::pi / lattice.length();
  for (int axis = 0; axis < 3; ++axis) {
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t f = 0; f < weight.size(); ++f) {
      const double theta = two_pi_over_l * lattice.position(f)[axis];
      const double w = std::abs(weight[f]);
      sx += w * std::cos(theta);
      sy += w * std::sin(theta);
    }
    double theta = std::atan2(sy, sx);
    if (theta < 0.0) theta += 2.0 * std::numbers::pi;
    centroid[axis] = theta / two_pi_over_l;
  }
  return centroid;
}

Vec3 displacement(const Lattice& lattice, std::size_t flat, const Vec3& origin) {
  const Vec3 x = lattice.position(flat);
  const double l = lattice.length();
  Vec3 d{};
  for (int i = 0; i < 3; ++i) {
    double v = x[i] - origin[i];
    v -= l * std::round(v / l);
    d[i] = v;
  }
  return d;
}

double packet_width(const Lattice& lattice, const DensityField& rho) {
  double total = 0.0;
  for (double v : rho) total += std::abs(v);
  if (!(total > 0.0)) throw std::invalid_argument("packet_width: density is identically zero");
  const Vec3 c = periodic_centroid(lattice, rho);
  double second = 0.0;
  for (std::size_t f = 0; f < rho.size(); ++f) {
    const Vec3 d = displacement(lattice, f, c);
    second += (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]) * std::abs(rho[f]);
  }
  return std::sqrt(second / total);
}

RadialProfile radial_profile(const Lattice& lattice, const DensityField& rho, int bins) {
  if (bins <= 0) throw std::invalid_argument("radial_profile: bins must be positive");
  const Vec3 c = periodic_centroid(lattice, rho);
  const double r_max = lattice.length() / 2.0;
  const double dr = r_max / bins;
  std::vector<double> sum(static_cast<std::size_t>(bins), 0.0);
  std::vector<int> count(static_cast<std::size_t>(bins), 0);
  for (std::size_t f = 0; f < rho.size(); ++f) {
    const Vec3 d = displacement(lattice, f, c);
    const double r = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    const auto b = static_cast<std::size_t>(r / dr);
    if (b >= sum.size()) continue;
    sum[b] += rho[f];
    ++count[b];
  }
  RadialProfile p;
  for (std::size_t b = 0; b < sum.size(); ++b) {
    p.radius.push_back((static_cast<double>(b) + 0.5) * dr);
    p.density.push_back(count[b] > 0 ? sum[b] / count[b] : 0.0);
  }
  return p;
}

SpinReport spin_diagnostics(const FieldSplit& split) {
  const Lattice& lattice = split.lattice;
  const auto& k = lattice.constants();
  const ParticleNumbers n = particle_numbers(split);
  if (n.positrons > 1e-6)
    throw std::invalid_argument("spin_diagnostics: state carries positron content");

  const GridField<4>& psi = split.plus;
  const FourCurrent cur = current_of(lattice, psi, -1.0, CurrentKind::electron);
  const Vec3 origin = periodic_centroid(lattice, cur.rho);

  // grad psi per component and axis
  std::array<std::array<std::vector<cplx>, 3>, 4> grad;
  for (int c = 0; c < 4; ++c)
    for (int axis = 0; axis < 3; ++axis) grad[c][axis] = spectral_derivative(lattice, psi[c], axis);

  // spin density psi^dagger Sigma psi and its curl
  std::array<std::vector<cplx>, 3> spin;
  for (auto& s : spin) s.assign(lattice.sites(), cplx{});
  for (std::size_t f = 0; f < lattice.sites(); ++f) {
    const Vec3 s = spin_bilinear(psi, f);
    for (int i = 0; i < 3; ++i) spin[i][f] = s[i];
  }
  auto d = [&](int comp, int axis) { return spectral_derivative(lattice, spin[comp], axis); };
  const auto dz_sy = d(1, 2), dy_sz = d(2, 1), dx_sz = d(2, 0), dz_sx = d(0, 2), dy_sx = d(0, 1),
             dx_sy = d(1, 0);

  double mu = 0.0;
  double lz = 0.0;
  for (std::size_t f = 0; f < lattice.sites(); ++f) {
    const Vec3 r = displacement(lattice, f, origin);
    mu += r[0] * cur.j.comp[1][f] - r[1] * cur.j.comp[0][f];

    Vec3 g{};
    for (int axis = 0; axis < 3; ++axis) {
      cplx z{};
      for (int c = 0; c < 4; ++c) z += std::conj(psi[c][f]) * grad[c][axis][f];
      g[axis] = k.hbar * z.imag();  // Re(psi^dagger (-i hbar d) psi)
    }
    const Vec3 curl{(dy_sz[f] - dz_sy[f]).real(), (dz_sx[f] - dx_sz[f]).real(),
                    (dx_sy[f] - dy_sx[f]).real()};
    for (int i = 0; i < 3; ++i) g[i] += 0.25 * k.hbar * curl[i];
    lz += r[0] * g[1] - r[1] * g[0];
  }
  SpinReport rep;
  rep.magnetic_moment_z = mu * lattice.cell_volume() / (2.0 * k.c);
  rep.angular_momentum_z = lz * lattice.cell_volume();
  rep.g_ratio = rep.magnetic_moment_z / rep.angular_momentum_z * (2.0 * k.mass * k.c / -k.charge);
  rep.rms_radius = packet_width(lattice, cur.rho);
  return rep;
}

}  // namespace cdft
