#include "cdft/em_analog.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cdft {

namespace {

using Vec3c = Eigen::Matrix<cplx, 3, 1>;

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

// Plain cross product; Eigen's cross() conjugates complex results.
Vec3c cross(const Eigen::Vector3d& a, const Vec3c& b) {
  return {a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0)};
}

Vec3c at(const GridField<3>& f, std::size_t i) { return {f[0][i], f[1][i], f[2][i]}; }

void put(GridField<3>& f, std::size_t i, const Vec3c& v) {
  for (int c = 0; c < 3; ++c) f[c][i] = v(c);
}

GridField<3> complex_combination(const VectorDensityField& re, const VectorDensityField& im) {
  GridField<3> out(re.comp[0].size());
  for (int c = 0; c < 3; ++c)
    for (std::size_t f = 0; f < out.sites(); ++f) out[c][f] = cplx{re.comp[c][f], im.comp[c][f]};
  return out;
}

// Builds phi, plus and minus from the spectrum of phi.
PhiField from_phi_spectrum(const Lattice& lattice, const GridField<3>& spec, double t) {
  GridField<3> sp(lattice.sites());
  GridField<3> sm(lattice.sites());
  for (std::size_t f = 0; f < lattice.sites(); ++f) {
    const Vec3 k = lattice.wave_vector(f);
    const double kn = norm3(k);
    if (kn == 0.0) continue;
    const Vec3 khat{k[0] / kn, k[1] / kn, k[2] / kn};
    const Vec3c v = at(spec, f);
    put(sp, f, helicity_projector(khat, 1) * v);
    put(sm, f, helicity_projector(khat, -1) * v);
  }
  return PhiField{lattice, transform(lattice, spec, Direction::inverse),
                  transform(lattice, sp, Direction::inverse), transform(lattice, sm, Direction::inverse), t};
}

double sum_sq(const GridField<3>& f) {
  double s = 0.0;
  for (const auto& c : f.comp)
    for (const cplx& v : c) s += std::norm(v);
  return s;
}

double sum_sq(const VectorDensityField& f) {
  double s = 0.0;
  for (const auto& c : f.comp)
    for (double v : c) s += v * v;
  return s;
}

}  // namespace

Mat3 helicity_projector(const Vec3& khat, int lambda) {
  const SpinOneSet s = spin1_matrices();
  const Mat3 sk = khat[0] * s[0] + khat[1] * s[1] + khat[2] * s[2];
  Mat3 kk;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) kk(i, j) = khat[i] * khat[j];
  if (lambda == 0) return kk;
  const Mat3 transverse = Mat3::Identity() - kk;  // equals (s.khat)^2
  return 0.5 * (transverse + static_cast<double>(lambda) * sk);
}

GridField<3> PhiField::antiphoton() const {
  GridField<3> out(minus.sites());
  for (int c = 0; c < 3; ++c)
    for (std::size_t f = 0; f < minus.sites(); ++f) out[c][f] = std::conj(minus[c][f]);
  return out;
}

PhiField phi_from_em(const EMState& state) {
  const Lattice& lattice = state.lattice;
  const auto& k = lattice.constants();
  GridField<3> spec = transform(lattice, complex_combination(state.e, state.b), Direction::forward);

  double total = 0.0;
  for (const auto& c : spec.comp)
    for (const cplx& v : c) total += std::norm(v);
  double mean = 0.0;
  for (int c = 0; c < 3; ++c) mean += std::norm(spec[c][0]);
  if (mean > 1e-20 * total)
    throw std::invalid_argument("phi_from_em: E and B must have zero spatial mean");

  for (std::size_t f = 0; f < lattice.sites(); ++f) {
    const double kn = norm3(lattice.wave_vector(f));
    const double w = kn == 0.0 ? 0.0 : 1.0 / std::sqrt(8.0 * std::numbers::pi * k.hbar * kn * k.c);
    for (int c = 0; c < 3; ++c) spec[c][f] *= w;
  }
  return from_phi_spectrum(lattice, spec, state.t);
}

EMState em_from_phi(const PhiField& phi) {
  const Lattice& lattice = phi.lattice;
  const auto& k = lattice.constants();
  GridField<3> spec = transform(lattice, phi.phi, Direction::forward);
  for (std::size_t f = 0; f < lattice.sites(); ++f) {
    const double kn = norm3(lattice.wave_vector(f));
    const double w = std::sqrt(8.0 * std::numbers::pi * k.hbar * kn * k.c);
    for (int c = 0; c < 3; ++c) spec[c][f] *= w;
  }
  const GridField<3> field = transform(lattice, spec, Direction::inverse);
  EMState out{lattice, {}, {}, phi.t};
  for (int c = 0; c < 3; ++c) {
    out.e.comp[c].resize(lattice.sites());
    out.b.comp[c].resize(lattice.sites());
    for (std::size_t f = 0; f < lattice.sites(); ++f) {
      out.e.comp[c][f] = field[c][f].real();
      out.b.comp[c][f] = field[c][f].imag();
    }
  }
  return out;
}

PhiField phi_evolve(const PhiField& phi, double dt) {
  const Lattice& lattice = phi.lattice;
  const double c = lattice.constants().c;
  GridField<3> spec = transform(lattice, phi.phi, Direction::forward);
  for (std::size_t f = 0; f < lattice.sites(); ++f) {
    const Vec3 k = lattice.wave_vector(f);
    const double kn = norm3(k);
    if (kn == 0.0) continue;
    const Vec3 khat{k[0] / kn, k[1] / kn, k[2] / kn};
    const Vec3c v = at(spec, f);
    const Vec3c out = std::polar(1.0, -c * kn * dt) * (helicity_projector(khat, 1) * v) +
                      std::polar(1.0, c * kn * dt) * (helicity_projector(khat, -1) * v) +
                      helicity_projector(khat, 0) * v;
    put(spec, f, out);
  }
  return from_phi_spectrum(lattice, spec, phi.t + dt);
}

EMState maxwell_evolve(const EMState& state, double dt) {
  const Lattice& lattice = state.lattice;
  const double c = lattice.constants().c;
  auto to_spec = [&](const VectorDensityField& v) {
    GridField<3> g(lattice.sites());
    for (int i = 0; i < 3; ++i)
      for (std::size_t f = 0; f < lattice.sites(); ++f) g[i][f] = v.comp[i][f];
    return transform(lattice, g, Direction::forward);
  };
  GridField<3> es = to_spec(state.e);
  GridField<3> bs = to_spec(state.b);
  for (std::size_t f = 0; f < lattice.sites(); ++f) {
    const Vec3 k = lattice.wave_vector(f);
    const double kn = norm3(k);
    if (kn == 0.0) continue;
    const Eigen::Vector3d khat(k[0] / kn, k[1] / kn, k[2] / kn);
    const Vec3c e0 = at(es, f);
    const Vec3c b0 = at(bs, f);
    const double w = c * kn * dt;
    // dE/dt = c curl B, dB/dt = -c curl E with curl -> i k x
    const Vec3c kxb = cross(khat, b0);
    const Vec3c kxe = cross(khat, e0);
    put(es, f, std::cos(w) * e0 + kI * std::sin(w) * kxb);
    put(bs, f, std::cos(w) * b0 - kI * std::sin(w) * kxe);
  }
  const GridField<3> e1 = transform(lattice, es, Direction::inverse);
  const GridField<3> b1 = transform(lattice, bs, Direction::inverse);
  EMState out{lattice, {}, {}, state.t + dt};
  for (int i = 0; i < 3; ++i) {
    out.e.comp[i].resize(lattice.sites());
    out.b.comp[i].resize(lattice.sites());
    for (std::size_t f = 0; f < lattice.sites(); ++f) {
      out.e.comp[i][f] = e1[i][f].real();
      out.b.comp[i][f] = b1[i][f].real();
    }
  }
  return out;
}

std::pair<GridField<3>, GridField<3>> phi_time_derivative(const PhiField& phi) {
  const Lattice& lattice = phi.lattice;
  const double c = lattice.constants().c;
  GridField<3> sp = transform(lattice, phi.plus, Direction::forward);
  GridField<3> sm = transform(lattice, phi.minus, Direction::forward);
  for (std::size_t f = 0; f < lattice.sites(); ++f) {
    const double w = c * norm3(lattice.wave_vector(f));
    for (int i = 0; i < 3; ++i) {
      sp[i][f] *= -kI * w;
      sm[i][f] *= kI * w;
    }
  }
  return {transform(lattice, sp, Direction::inverse), transform(lattice, sm, Direction::inverse)};
}

EMEnergies em_energies(const EMState& state) {
  const Lattice& lattice = state.lattice;
  const double hbar = lattice.constants().hbar;
  EMEnergies out;
  out.standard = (sum_sq(state.e) + sum_sq(state.b)) * lattice.cell_volume() / (8.0 * std::numbers::pi);

  const PhiField phi = phi_from_em(state);
  const auto [dp, dm] = phi_time_derivative(phi);
  cplx plus{};
  cplx minus{};
  cplx antiphoton{};
  for (int i = 0; i < 3; ++i) {
    for (std::size_t f = 0; f < lattice.sites(); ++f) {
      plus += std::conj(phi.plus[i][f]) * dp[i][f];
      minus += std::conj(phi.minus[i][f]) * dm[i][f];
      // phi_gbar = conj(phi_-): phi_gbar^dagger d(phi_gbar)/dt = phi_- conj(d phi_-/dt)
      antiphoton += phi.minus[i][f] * std::conj(dm[i][f]);
    }
  }
  const double dv = lattice.cell_volume();
  out.phi = (kI * hbar * (plus - minus) * dv).real();
  out.particle_form = (kI * hbar * (plus + antiphoton) * dv).real();
  return out;
}

PhotonNumbers photon_number(const PhiField& phi) {
  const double dv = phi.lattice.cell_volume();
  return {sum_sq(phi.plus) * dv, sum_sq(phi.minus) * dv};
}

double em_divergence(const EMState& state) {
  const DensityField de = spectral_divergence(state.lattice, state.e);
  const DensityField db = spectral_divergence(state.lattice, state.b);
  return l2_norm(state.lattice, de) + l2_norm(state.lattice, db);
}

EMState random_free_em(const Lattice& lattice, std::mt19937_64& rng, double amplitude) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  GridField<3> es(lattice.sites());
  GridField<3> bs(lattice.sites());
  for (int i = 0; i < 3; ++i) {
    for (std::size_t f = 0; f < lattice.sites(); ++f) {
      es[i][f] = gauss(rng);
      bs[i][f] = gauss(rng);
    }
  }
  es = transform(lattice, es, Direction::forward);
  bs = transform(lattice, bs, Direction::forward);
  for (std::size_t f = 0; f < lattice.sites(); ++f) {
    const Vec3 k = lattice.wave_vector(f);
    const double kn = norm3(k);
    if (kn == 0.0 || lattice.is_nyquist(f)) {
      put(es, f, Vec3c::Zero());
      put(bs, f, Vec3c::Zero());
      continue;
    }
    const Mat3 pt = helicity_projector({k[0] / kn, k[1] / kn, k[2] / kn}, 0);
    put(es, f, at(es, f) - pt * at(es, f));
    put(bs, f, at(bs, f) - pt * at(bs, f));
  }
  const GridField<3> e = transform(lattice, es, Direction::inverse);
  const GridField<3> b = transform(lattice, bs, Direction::inverse);
  EMState out{lattice, {}, {}, 0.0};
  for (int i = 0; i < 3; ++i) {
    out.e.comp[i].resize(lattice.sites());
    out.b.comp[i].resize(lattice.sites());
    for (std::size_t f = 0; f < lattice.sites(); ++f) {
      out.e.comp[i][f] = amplitude * e[i][f].real();
      out.b.comp[i][f] = amplitude * b[i][f].real();
    }
  }
  return out;
}

namespace {

EMState wave(const Lattice& lattice, int nz, double amplitude, bool circular) {
  const double k = 2.0 * std::numbers::pi * nz / lattice.length();
  EMState s{lattice, {}, {}, 0.0};
  for (int i = 0; i < 3; ++i) {
    s.e.comp[i].assign(lattice.sites(), 0.0);
    s.b.comp[i].assign(lattice.sites(), 0.0);
  }
  for (std::size_t f = 0; f < lattice.sites(); ++f) {
    const double th = k * lattice.position(f)[2];
    if (circular) {
      s.e.comp[0][f] = amplitude * std::cos(th);
      s.e.comp[1][f] = -amplitude * std::sin(th);
      s.b.comp[0][f] = amplitude * std::sin(th);
      s.b.comp[1][f] = amplitude * std::cos(th);
    } else {
      s.e.comp[0][f] = amplitude * std::cos(th);
      s.b.comp[1][f] = amplitude * std::cos(th);
    }
  }
  return s;
}

}  // namespace

EMState circular_wave(const Lattice& lattice, int nz, double amplitude) {
  return wave(lattice, nz, amplitude, true);
}

EMState linear_wave(const Lattice& lattice, int nz, double amplitude) {
  return wave(lattice, nz, amplitude, false);
}

}  // namespace cdft
