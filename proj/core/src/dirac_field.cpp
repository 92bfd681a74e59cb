#include "cdft/dirac_field.hpp"

#include <cmath>
#include <stdexcept>

namespace cdft {

namespace {

enum class Part { plus, minus, both };

// Momentum-space spinor of the chosen frequency part at every bin, with an
// optional factor (-i E/hbar or +i E/hbar) for the time derivative.
GridField<4> spectrum(const Lattice& lattice, const ModeAmplitudes& modes, double t, Part part,
                      bool derivative) {
  const auto& k = lattice.constants();
  GridField<4> spec(lattice.sites());
  for (std::size_t f = 0; f < lattice.sites(); ++f) {
    if (lattice.is_nyquist(f)) continue;
    const std::size_t g = lattice.negated(f);
    const SpinBasis at_p = basis_spinors(lattice.momentum(f), k.mass, k.c);
    const double e = at_p.energy;
    const double w = 1.0 / std::sqrt(2.0 * e);
    const double phase = e * t / k.hbar;
    const cplx down = std::polar(1.0, -phase);
    const cplx up = std::polar(1.0, phase);

    Spinor4 acc = Spinor4::Zero();
    if (part != Part::minus) {
      Spinor4 s = Spinor4::Zero();
      for (int sp = 0; sp < 2; ++sp) s += modes.b[sp][f] * at_p.u[sp];
      s *= w * down;
      if (derivative) s *= -kI * e / k.hbar;
      acc += s;
    }
    if (part != Part::plus) {
      // D at label -p lands in bin p through its e^{-i(-p).x} plane wave.
      const SpinBasis at_mp = basis_spinors(lattice.momentum(g), k.mass, k.c);
      Spinor4 s = Spinor4::Zero();
      for (int sp = 0; sp < 2; ++sp) s += std::conj(modes.d[sp][g]) * at_mp.v[sp];
      s *= w * up;
      if (derivative) s *= kI * e / k.hbar;
      acc += s;
    }
    for (int c = 0; c < 4; ++c) spec[c][f] = acc(c);
  }
  return spec;
}

GridField<4> to_sites(const Lattice& lattice, const GridField<4>& spec) {
  return transform(lattice, spec, Direction::inverse);
}

}  // namespace

ModeAmplitudes ModeAmplitudes::zeros(const Lattice& lattice) {
  ModeAmplitudes m;
  for (int s = 0; s < 2; ++s) {
    m.b[s].assign(lattice.sites(), cplx{});
    m.d[s].assign(lattice.sites(), cplx{});
  }
  return m;
}

double ModeAmplitudes::electron_norm() const {
  double s = 0.0;
  for (const auto& spin : b)
    for (const cplx& v : spin) s += std::norm(v);
  return s;
}

double ModeAmplitudes::positron_norm() const {
  double s = 0.0;
  for (const auto& spin : d)
    for (const cplx& v : spin) s += std::norm(v);
  return s;
}

GridField<4> FieldSplit::positron() const {
  GridField<4> p(minus.sites());
  for (int c = 0; c < 4; ++c)
    for (std::size_t f = 0; f < minus.sites(); ++f) p[c][f] = std::conj(minus[c][f]);
  return p;
}

void validate_modes(const Lattice& lattice, const ModeAmplitudes& modes) {
  for (int s = 0; s < 2; ++s) {
    if (modes.b[s].size() != lattice.sites() || modes.d[s].size() != lattice.sites())
      throw std::invalid_argument("mode amplitudes: array shape does not match lattice");
  }
  for (std::size_t f = 0; f < lattice.sites(); ++f) {
    if (!lattice.is_nyquist(f)) continue;
    for (int s = 0; s < 2; ++s) {
      if (modes.b[s][f] != cplx{} || modes.d[s][f] != cplx{})
        throw std::invalid_argument("mode amplitudes: Nyquist bins must be empty");
    }
  }
}

ModeAmplitudes random_modes(const Lattice& lattice, std::mt19937_64& rng, ModeBand band, double scale) {
  ModeAmplitudes m = ModeAmplitudes::zeros(lattice);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int cutoff = lattice.dealiased_cutoff();
  std::size_t active = 0;
  for (std::size_t f = 0; f < lattice.sites(); ++f) {
    if (lattice.is_nyquist(f)) continue;
    if (band == ModeBand::dealiased) {
      const auto w = lattice.wave_numbers(f);
      if (std::abs(w[0]) > cutoff || std::abs(w[1]) > cutoff || std::abs(w[2]) > cutoff) continue;
    }
    ++active;
    for (int s = 0; s < 2; ++s) {
      m.b[s][f] = {gauss(rng), gauss(rng)};
      m.d[s][f] = {gauss(rng), gauss(rng)};
    }
  }
  // Each complex entry has E|z|^2 = 2; 2 spins per family.
  const double norm = scale / std::sqrt(4.0 * static_cast<double>(active));
  for (int s = 0; s < 2; ++s) {
    for (auto& v : m.b[s]) v *= norm;
    for (auto& v : m.d[s]) v *= norm;
  }
  return m;
}

FieldState synthesize(const Lattice& lattice, const ModeAmplitudes& modes, double t) {
  validate_modes(lattice, modes);
  return FieldState{lattice, to_sites(lattice, spectrum(lattice, modes, t, Part::both, false)), t};
}

ModeAmplitudes decompose(const FieldState& state) {
  const Lattice& lattice = state.lattice;
  const auto& k = lattice.constants();
  const GridField<4> spec = transform(lattice, state.psi, Direction::forward);
  ModeAmplitudes m = ModeAmplitudes::zeros(lattice);
  for (std::size_t f = 0; f < lattice.sites(); ++f) {
    if (lattice.is_nyquist(f)) continue;
    Spinor4 chi;
    for (int c = 0; c < 4; ++c) chi(c) = spec[c][f];
    const std::size_t g = lattice.negated(f);
    const SpinBasis at_p = basis_spinors(lattice.momentum(f), k.mass, k.c);
    const SpinBasis at_mp = basis_spinors(lattice.momentum(g), k.mass, k.c);
    const double e = at_p.energy;
    const double w = 1.0 / std::sqrt(2.0 * e);
    const double phase = e * state.t / k.hbar;
    for (int s = 0; s < 2; ++s) {
      const cplx bu = at_p.u[s].dot(chi);  // u^dagger chi
      const cplx vd = at_mp.v[s].dot(chi);
      m.b[s][f] = std::polar(1.0, phase) * bu * w;
      m.d[s][g] = std::conj(std::polar(1.0, -phase) * vd * w);
    }
  }
  return m;
}

ModeAmplitudes evolve(const Lattice& lattice, const ModeAmplitudes& modes, double dt) {
  validate_modes(lattice, modes);
  const auto& k = lattice.constants();
  ModeAmplitudes out = modes;
  for (std::size_t f = 0; f < lattice.sites(); ++f) {
    if (lattice.is_nyquist(f)) continue;
    const cplx rot = std::polar(1.0, -lattice.energy(f) * dt / k.hbar);
    for (int s = 0; s < 2; ++s) {
      out.b[s][f] *= rot;
      out.d[s][f] *= rot;
    }
  }
  return out;
}

FieldSplit split_modes(const Lattice& lattice, const ModeAmplitudes& modes, double t) {
  validate_modes(lattice, modes);
  return FieldSplit{lattice, to_sites(lattice, spectrum(lattice, modes, t, Part::plus, false)),
                    to_sites(lattice, spectrum(lattice, modes, t, Part::minus, false)), t};
}

FieldSplit split(const FieldState& state) {
  return split_modes(state.lattice, decompose(state), state.t);
}

FieldSplit time_derivative(const Lattice& lattice, const ModeAmplitudes& modes, double t) {
  validate_modes(lattice, modes);
  return FieldSplit{lattice, to_sites(lattice, spectrum(lattice, modes, t, Part::plus, true)),
                    to_sites(lattice, spectrum(lattice, modes, t, Part::minus, true)), t};
}

double dirac_residual(const Lattice& lattice, const GridField<4>& psi, const GridField<4>& dpsi_dt) {
  const auto& k = lattice.constants();
  const GridField<4> spec = transform(lattice, psi, Direction::forward);
  const GridField<4> dspec = transform(lattice, dpsi_dt, Direction::forward);
  double sum = 0.0;
  for (std::size_t f = 0; f < lattice.sites(); ++f) {
    Spinor4 chi;
    Spinor4 dchi;
    for (int c = 0; c < 4; ++c) {
      chi(c) = spec[c][f];
      dchi(c) = dspec[c][f];
    }
    const Spinor4 r = (kI * k.hbar) * dchi - dirac_hamiltonian(lattice.momentum(f), k) * chi;
    sum += r.squaredNorm();
  }
  return std::sqrt(sum);
}

double dirac_residual(const Lattice& lattice, const ModeAmplitudes& modes, double t) {
  const FieldState state = synthesize(lattice, modes, t);
  const FieldSplit d = time_derivative(lattice, modes, t);
  GridField<4> dpsi(lattice.sites());
  for (int c = 0; c < 4; ++c)
    for (std::size_t f = 0; f < lattice.sites(); ++f) dpsi[c][f] = d.plus[c][f] + d.minus[c][f];
  return dirac_residual(lattice, state.psi, dpsi);
}

}  // namespace cdft
