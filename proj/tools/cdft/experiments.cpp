#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include "cdft/dirac_field.hpp"
#include "cdft/em_analog.hpp"
#include "cdft/fock.hpp"
#include "cdft/grassmann.hpp"
#include "cdft/observables.hpp"
#include "output.hpp"

namespace cdft::cli {

namespace {

Constants physics(const Config& cfg) {
  Constants k;
  k.hbar = cfg.number("physics.hbar", 1.0);
  k.c = cfg.number("physics.c", 1.0);
  k.mass = cfg.number("physics.m", 1.0);
  k.charge = cfg.number("physics.e", 1.0);
  if (!(k.hbar > 0.0) || !(k.c > 0.0) || !(k.mass > 0.0) || !(k.charge > 0.0))
    throw ConfigError("physics.hbar, physics.c, physics.m and physics.e must be positive");
  return k;
}

Lattice lattice_from(const Config& cfg, const std::string& prefix, const Constants& k) {
  const long long n = cfg.integer(prefix + ".N");
  const double length = cfg.number(prefix + ".L");
  if (n < 4 || n > 512 || n % 2 != 0) throw ConfigError(prefix + ".N must be an even integer in [4, 512]");
  if (!(length > 0.0)) throw ConfigError(prefix + ".L must be positive");
  return Lattice(static_cast<int>(n), length, k);
}

std::uint64_t seed_of(const Config& cfg, const RunOptions& options) {
  if (options.seed) return *options.seed;
  const long long s = cfg.integer("seed", 0);
  if (s < 0) throw ConfigError("seed must be non-negative");
  return static_cast<std::uint64_t>(s);
}

Metadata metadata(const std::string& experiment, const Config& cfg, std::uint64_t seed) {
  return {experiment, cfg.hash(), seed};
}

int finish(const std::vector<std::pair<std::string, const CsvTable*>>& tables, const Metadata& meta,
           const std::vector<std::string>& breaches, const RunOptions& options, std::ostream& log) {
  bool finite = true;
  for (const auto& [name, table] : tables) {
    table->write(options.out / name, meta);
    finite = finite && table->finite();
  }
  if (!finite) {
    log << meta.experiment << ": non-finite value in output\n";
    return kNumericalFailure;
  }
  for (const auto& b : breaches) log << meta.experiment << ": " << b << "\n";
  if (options.assert_tolerances && !breaches.empty()) return kAssertionBreach;
  return kOk;
}

std::string fmt(double v) { return format_double(v); }

}  // namespace

int run_evolve(const Config& cfg, const RunOptions& options, std::ostream& log) {
  cfg.require({"lattice.N", "lattice.L", "time.dt", "time.steps"});
  const Constants k = physics(cfg);
  const Lattice lattice = lattice_from(cfg, "lattice", k);
  const double t0 = cfg.number("time.t0", 0.0);
  const double dt = cfg.number("time.dt");
  const long long steps = cfg.integer("time.steps");
  if (steps < 0) throw ConfigError("time.steps must be non-negative");
  const std::string band_name = cfg.text("modes.band", "dealiased");
  if (band_name != "full" && band_name != "dealiased") throw ConfigError("modes.band must be 'full' or 'dealiased'");
  const ModeBand band = band_name == "full" ? ModeBand::full : ModeBand::dealiased;
  const double scale = cfg.number("modes.scale", 1.0);
  const long long corrupt = cfg.integer("debug.corrupt_step", -1);
  const double tol_conserved = cfg.number("tolerance.conservation", 1e-10);
  const double tol_continuity = cfg.number("tolerance.continuity", 1e-9);
  const std::uint64_t seed = seed_of(cfg, options);

  std::mt19937_64 rng(seed);
  const ModeAmplitudes reference = random_modes(lattice, rng, band, scale);

  CsvTable table({"step", "t", "energy_original", "energy_revised", "charge_original", "charge_revised", "electrons",
                  "positrons", "continuity_original", "continuity_electron", "continuity_positron", "dirac_residual"});
  std::vector<std::array<double, 6>> conserved;
  double worst_continuity = 0.0;
  std::vector<double> ts, e_orig, e_rev;
  for (long long step = 0; step <= steps; ++step) {
    const double t = t0 + static_cast<double>(step) * dt;
    ModeAmplitudes modes = reference;
    if (corrupt >= 0 && step >= corrupt)
      for (auto& spin : modes.b)
        for (cplx& v : spin) v *= 1.01;
    const ObservableReport obs = observe_spatial(lattice, modes, t);
    const FieldState state = synthesize(lattice, modes, t);
    const FieldSplit parts = split_modes(lattice, modes, t);
    const RevisedCurrents revised = four_current_revised(parts);
    const double r_orig = continuity_residual(lattice, four_current_original(state), modes, t).relative();
    const double r_e = continuity_residual(lattice, revised.electron, modes, t).relative();
    const double r_p = continuity_residual(lattice, revised.positron, modes, t).relative();
    const double dres = dirac_residual(lattice, modes, t);
    worst_continuity = std::max({worst_continuity, r_orig, r_e, r_p});
    conserved.push_back({obs.energy_original, obs.energy_revised, obs.charge_original, obs.charge_revised,
                         obs.electrons, obs.positrons});
    table.add_row({step, t, obs.energy_original, obs.energy_revised, obs.charge_original, obs.charge_revised,
                   obs.electrons, obs.positrons, r_orig, r_e, r_p, dres});
    ts.push_back(t);
    e_orig.push_back(obs.energy_original);
    e_rev.push_back(obs.energy_revised);
  }

  static const char* names[] = {"energy_original", "energy_revised", "charge_original", "charge_revised",
                                "electrons", "positrons"};
  std::vector<std::string> breaches;
  for (std::size_t q = 0; q < 6; ++q) {
    double drift = 0.0;
    for (const auto& row : conserved) drift = std::max(drift, std::abs(row[q] - conserved.front()[q]));
    const double ref = std::max(std::abs(conserved.front()[q]), 1.0);
    if (drift > tol_conserved * ref) breaches.push_back(std::string(names[q]) + " drifted by " + fmt(drift));
  }
  if (worst_continuity > tol_continuity) breaches.push_back("continuity residual " + fmt(worst_continuity));

  if (cfg.boolean("plot", false))
    write_svg_plot(options.out / "energy.svg", "Energy versus time", "t", "E",
                   {{"original", ts, e_orig}, {"revised", ts, e_rev}});
  log << "evolve: " << table.rows() << " rows, worst continuity " << fmt(worst_continuity) << "\n";
  return finish({{"report.csv", &table}}, metadata("evolve", cfg, seed), breaches, options, log);
}

int run_packet(const Config& cfg, const RunOptions& options, std::ostream& log) {
  cfg.require({"lattice.N", "lattice.L", "packet.sweep", "spin.N", "spin.L", "spin.sigma"});
  const Constants k = physics(cfg);
  const Lattice base = lattice_from(cfg, "lattice", k);
  const std::vector<double> sweep = cfg.list("packet.sweep");
  for (double s : sweep)
    if (!(s > 0.0)) throw ConfigError("packet.sweep: packet widths must be positive, got " + fmt(s));
  if (std::none_of(sweep.begin(), sweep.end(), [&](double s) { return packet_resolved(base, s); }))
    throw ConfigError("packet.sweep: no width is resolved by lattice spacing " + fmt(base.spacing()));
  const bool refine = cfg.boolean("packet.refine", false);
  const double profile_sigma = cfg.number("packet.profile_sigma", sweep.empty() ? 1.0 : sweep.back());
  const long long profile_bins = cfg.integer("packet.profile_bins", 24);
  if (profile_bins < 1) throw ConfigError("packet.profile_bins must be positive");
  const Lattice spin_lattice = lattice_from(cfg, "spin", k);
  const double spin_sigma = cfg.number("spin.sigma");
  if (!(spin_sigma > 0.0)) throw ConfigError("spin.sigma must be positive");
  const double l_band = cfg.number("spin.l_band", 0.02);
  const double band = cfg.number("spin.band", 0.05);
  const double w_low = cfg.number("packet.w_low", 0.3) * k.compton_length();
  const double w_high = cfg.number("packet.w_high", 1.5) * k.compton_length();
  const double stability = cfg.number("packet.stability", 0.05);
  const std::uint64_t seed = seed_of(cfg, options);

  auto centre = [](const Lattice& l) { return Vec3{l.length() / 2, l.length() / 2, l.length() / 2}; };
  auto electron_density = [&](const Lattice& l, double sigma) {
    const ModeAmplitudes modes = build_packet(l, centre(l), sigma, 0, PacketKind::electron);
    return four_current_revised(split_modes(l, modes, 0.0)).electron.rho;
  };

  CsvTable table({"kind", "n", "spacing", "sigma", "rms_radius", "angular_momentum_z", "magnetic_moment_z", "g_ratio"});
  std::vector<Lattice> lattices{base};
  if (refine) lattices.push_back(Lattice(2 * base.n(), base.length(), k));
  std::vector<double> w_min;
  std::vector<Series> curves;
  for (const Lattice& l : lattices) {
    Series curve{"N=" + std::to_string(l.n()), {}, {}};
    double smallest = std::numeric_limits<double>::infinity();
    for (double s : sweep) {
      if (!packet_resolved(l, s)) {
        log << "packet: sigma " << fmt(s) << " not resolved at N=" << l.n() << ", skipped\n";
        continue;
      }
      const double w = packet_width(l, electron_density(l, s));
      smallest = std::min(smallest, w);
      table.add_row({std::string("sweep"), static_cast<long long>(l.n()), l.spacing(), s, w, {}, {}, {}});
      curve.x.push_back(s);
      curve.y.push_back(w);
    }
    w_min.push_back(smallest);
    table.add_row({std::string("w_min"), static_cast<long long>(l.n()), l.spacing(), {}, smallest, {}, {}, {}});
    curves.push_back(std::move(curve));
  }

  if (!packet_resolved(base, profile_sigma)) throw ConfigError("packet.profile_sigma is not resolved by the lattice");
  const RadialProfile profile = radial_profile(base, electron_density(base, profile_sigma), static_cast<int>(profile_bins));
  CsvTable profile_table({"radius", "density"});
  for (std::size_t i = 0; i < profile.radius.size(); ++i) profile_table.add_row({profile.radius[i], profile.density[i]});

  const ModeAmplitudes spin_modes =
      build_packet(spin_lattice, centre(spin_lattice), spin_sigma, 0, PacketKind::electron);
  const SpinReport spin = spin_diagnostics(split_modes(spin_lattice, spin_modes, 0.0));
  table.add_row({std::string("spin"), static_cast<long long>(spin_lattice.n()), spin_lattice.spacing(), spin_sigma,
                 spin.rms_radius, spin.angular_momentum_z, spin.magnetic_moment_z, spin.g_ratio});

  std::vector<std::string> breaches;
  const double half = k.hbar / 2.0;
  const double magneton = k.charge * k.hbar / (2.0 * k.mass * k.c);
  if (std::abs(spin.angular_momentum_z - half) > l_band * half)
    breaches.push_back("L_z = " + fmt(spin.angular_momentum_z) + " outside hbar/2 band");
  if (std::abs(spin.magnetic_moment_z + magneton) > band * magneton)
    breaches.push_back("mu_z = " + fmt(spin.magnetic_moment_z) + " outside -e hbar/2mc band");
  if (std::abs(spin.g_ratio - 2.0) > band * 2.0) breaches.push_back("g = " + fmt(spin.g_ratio) + " outside band");
  if (w_min.front() < w_low || w_min.front() > w_high)
    breaches.push_back("w_min = " + fmt(w_min.front()) + " outside the Compton band");
  for (const Series& curve : curves) {
    const auto n = curve.y.size();
    if (n >= 2 && std::abs(curve.y[n - 1] - curve.y[n - 2]) > stability * std::abs(curve.y[n - 2]))
      breaches.push_back("no plateau at " + curve.name + ": last two sweep widths " + fmt(curve.y[n - 2]) + ", " +
                         fmt(curve.y[n - 1]));
  }
  if (w_min.size() == 2 && std::abs(w_min[1] - w_min[0]) > stability * w_min[0])
    breaches.push_back("w_min changes from " + fmt(w_min[0]) + " to " + fmt(w_min[1]) + " under refinement");

  if (cfg.boolean("plot", false)) {
    write_svg_plot(options.out / "sweep.svg", "RMS charge radius versus target width", "sigma", "rms radius", curves);
    write_svg_plot(options.out / "profile.svg", "Radial charge density", "r", "rho",
                   {{"sigma=" + fmt(profile_sigma), profile.radius, profile.density}});
  }
  log << "packet: g = " << fmt(spin.g_ratio) << ", L_z = " << fmt(spin.angular_momentum_z) << "\n";
  return finish({{"report.csv", &table}, {"profile.csv", &profile_table}}, metadata("packet", cfg, seed), breaches,
                options, log);
}

namespace {

double max_field_difference(const EMState& a, const EMState& b) {
  double diff = 0.0;
  double scale = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (std::size_t f = 0; f < a.e.comp[i].size(); ++f) {
      diff = std::max({diff, std::abs(a.e.comp[i][f] - b.e.comp[i][f]), std::abs(a.b.comp[i][f] - b.b.comp[i][f])});
      scale = std::max({scale, std::abs(a.e.comp[i][f]), std::abs(a.b.comp[i][f])});
    }
  }
  return scale > 0.0 ? diff / scale : diff;
}

}  // namespace

int run_em(const Config& cfg, const RunOptions& options, std::ostream& log) {
  cfg.require({"lattice.N", "lattice.L", "em.samples", "em.wave_nz"});
  const Constants k = physics(cfg);
  const Lattice lattice = lattice_from(cfg, "lattice", k);
  const long long samples = cfg.integer("em.samples");
  const long long nz = cfg.integer("em.wave_nz");
  const double amplitude = cfg.number("em.amplitude", 1.0);
  const double evolve_time = cfg.number("em.evolve_time", 0.7);
  const double tol = cfg.number("tolerance.energy", 1e-10);
  if (samples < 0) throw ConfigError("em.samples must be non-negative");
  if (nz <= 0 || nz >= lattice.n() / 2) throw ConfigError("em.wave_nz must lie in [1, N/2)");
  const std::uint64_t seed = seed_of(cfg, options);

  CsvTable table({"kind", "index", "energy_standard", "energy_phi", "energy_particle", "residual",
                  "evolution_residual", "photons", "antiphotons", "photon_target"});
  std::vector<std::string> breaches;
  std::mt19937_64 rng(seed);
  for (long long s = 0; s < samples; ++s) {
    const EMState state = random_free_em(lattice, rng, amplitude);
    const EMEnergies en = em_energies(state);
    const double residual =
        std::max(std::abs(en.standard - en.phi), std::abs(en.standard - en.particle_form)) / en.standard;
    const PhiField phi = phi_from_em(state);
    const double evo =
        max_field_difference(em_from_phi(phi_evolve(phi, evolve_time)), maxwell_evolve(state, evolve_time));
    const PhotonNumbers n = photon_number(phi);
    table.add_row({std::string("random"), s, en.standard, en.phi, en.particle_form, residual, evo, n.photons,
                   n.antiphotons, {}});
    if (residual > tol) breaches.push_back("energy identity residual " + fmt(residual) + " on sample " + std::to_string(s));
    if (evo > tol) breaches.push_back("evolution residual " + fmt(evo) + " on sample " + std::to_string(s));
  }

  const double wave_k = 2.0 * std::numbers::pi * static_cast<double>(nz) / lattice.length();
  {
    const EMState wave = circular_wave(lattice, static_cast<int>(nz), amplitude);
    const EMEnergies en = em_energies(wave);
    const PhotonNumbers n = photon_number(phi_from_em(wave));
    const double target = en.standard / (k.hbar * k.c * wave_k);
    const double residual = std::abs(n.photons - target) / target;
    table.add_row({std::string("circular"), 0LL, en.standard, en.phi, en.particle_form, residual, {}, n.photons,
                   n.antiphotons, target});
    if (residual > tol) breaches.push_back("circular wave photon number residual " + fmt(residual));
  }
  {
    const EMState wave = linear_wave(lattice, static_cast<int>(nz), amplitude);
    const EMEnergies en = em_energies(wave);
    const PhotonNumbers n = photon_number(phi_from_em(wave));
    const double residual = std::abs(n.photons - n.antiphotons) / (n.photons + n.antiphotons);
    table.add_row({std::string("linear"), 0LL, en.standard, en.phi, en.particle_form, residual, {}, n.photons,
                   n.antiphotons, en.standard / (k.hbar * k.c * wave_k)});
    if (residual > tol) breaches.push_back("linear wave photon balance residual " + fmt(residual));
  }
  log << "em: " << table.rows() << " rows\n";
  return finish({{"report.csv", &table}}, metadata("em", cfg, seed), breaches, options, log);
}

int run_fock(const Config& cfg, const RunOptions& options, std::ostream& log) {
  cfg.require({"fock.energies_b", "fock.energies_c"});
  const Constants k = physics(cfg);
  const double tol = cfg.number("tolerance.fock", 0.0);
  ModeSpec spec;
  int spin = 0;
  for (double e : cfg.list("fock.energies_b")) spec.b_modes.push_back({{}, spin++ % 2, e});
  spin = 0;
  for (double e : cfg.list("fock.energies_c")) spec.c_modes.push_back({{}, spin++ % 2, e});
  try {
    spec.validate();
  } catch (const std::invalid_argument& err) {
    throw ConfigError(err.what());
  }
  const std::uint64_t seed = seed_of(cfg, options);
  const FockSpace space(spec);
  const double e = k.charge;

  std::vector<FockOperator> ops;
  std::vector<std::pair<int, int>> tags;  // (slot, raises)
  for (int m = 0; m < spec.mb(); ++m) {
    ops.push_back(space.b(m));
    tags.emplace_back(m, 0);
    ops.push_back(space.b_dag(m));
    tags.emplace_back(m, 1);
  }
  for (int m = 0; m < spec.mc(); ++m) {
    ops.push_back(space.d(m));
    tags.emplace_back(spec.mb() + m, 0);
    ops.push_back(space.d_dag(m));
    tags.emplace_back(spec.mb() + m, 1);
  }
  const FockOperator id = space.identity();
  double anti = 0.0;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::size_t j = 0; j < ops.size(); ++j) {
      const bool pair = tags[i].first == tags[j].first && tags[i].second != tags[j].second;
      const FockOperator expected = pair ? id : FockOperator(id * cplx{});
      anti = std::max(anti, max_abs(anticommutator(ops[i], ops[j]) - expected));
    }
  }

  double sum_c = 0.0;
  for (const ModeSlot& s : spec.c_modes) sum_c += s.energy;
  const FockOperator h_naive = hamiltonian_naive(space);
  const FockOperator h_normal = hamiltonian_normal(space);
  const FockOperator q_naive = charge_naive(space, e);
  const FockOperator q_normal = charge_normal(space, e);
  const double h_shift = max_abs(h_naive - (h_normal - sum_c * id));
  const double q_shift = max_abs(q_naive - (q_normal - e * spec.mc() * id));
  const bool h_route = identical(hamiltonian_via_swap(space), h_normal);
  const bool q_route = identical(charge_via_swap(space, e), q_normal);
  const double comm = std::max({max_abs(commutator(q_normal, h_normal)), max_abs(commutator(q_naive, h_naive)),
                                max_abs(commutator(q_normal, h_naive)), max_abs(commutator(q_naive, h_normal))});
  const FockState vac = space.vacuum();
  double vac_annihilated = 0.0;
  for (int m = 0; m < spec.mb(); ++m) vac_annihilated = std::max(vac_annihilated, (space.b(m) * vac).cwiseAbs().maxCoeff());
  for (int m = 0; m < spec.mc(); ++m) vac_annihilated = std::max(vac_annihilated, (space.d(m) * vac).cwiseAbs().maxCoeff());
  const double vac_energy = vac.dot(h_normal * vac).real();
  const std::vector<double> spec_naive = spectrum(h_naive);
  const std::vector<double> spec_normal = spectrum(h_normal);
  const std::vector<double> spec_charge = spectrum(q_normal);

  CsvTable table({"check", "value"});
  table.add_row({std::string("modes"), static_cast<long long>(spec.total())});
  table.add_row({std::string("anticommutator_max_error"), anti});
  table.add_row({std::string("hamiltonian_shift_error"), h_shift});
  table.add_row({std::string("charge_shift_error"), q_shift});
  table.add_row({std::string("hamiltonian_routes_identical"), static_cast<long long>(h_route)});
  table.add_row({std::string("charge_routes_identical"), static_cast<long long>(q_route)});
  table.add_row({std::string("charge_hamiltonian_commutator"), comm});
  table.add_row({std::string("vacuum_annihilation"), vac_annihilated});
  table.add_row({std::string("vacuum_energy_normal"), vac_energy});
  table.add_row({std::string("naive_ground_energy"), spec_naive.front()});
  table.add_row({std::string("normal_ground_energy"), spec_normal.front()});

  CsvTable spectra({"operator", "index", "eigenvalue"});
  auto emit = [&](const std::string& name, const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) spectra.add_row({name, static_cast<long long>(i), values[i]});
  };
  emit("hamiltonian_naive", spec_naive);
  emit("hamiltonian_normal", spec_normal);
  emit("charge_normal", spec_charge);

  std::vector<std::string> breaches;
  if (anti > tol) breaches.push_back("anticommutator error " + fmt(anti));
  if (h_shift > tol) breaches.push_back("hamiltonian shift error " + fmt(h_shift));
  if (q_shift > tol) breaches.push_back("charge shift error " + fmt(q_shift));
  if (!h_route || !q_route) breaches.push_back("swap route and direct route differ");
  if (comm > tol) breaches.push_back("charge does not commute with the Hamiltonian: " + fmt(comm));
  if (vac_annihilated != 0.0 || vac_energy != 0.0) breaches.push_back("vacuum is not annihilated");
  if (std::abs(spec_naive.front() + sum_c) > tol) breaches.push_back("naive ground energy " + fmt(spec_naive.front()));
  if (spec_normal.front() < -tol) breaches.push_back("normal Hamiltonian not positive");
  log << "fock: " << spec.total() << " slots, dimension " << space.dimension() << "\n";
  return finish({{"report.csv", &table}, {"spectrum.csv", &spectra}}, metadata("fock", cfg, seed), breaches, options,
                log);
}

namespace {

cplx dyadic(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> exponent(-3, 3);
  std::uniform_int_distribution<int> phase(0, 3);
  static const cplx units[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return std::ldexp(1.0, exponent(rng)) * units[phase(rng)];
}

GrassmannElement random_element(int pairs, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 6);
  const GrassmannElement::Mask all = (GrassmannElement::Mask{1} << (2 * pairs)) - 1;
  GrassmannElement x(pairs);
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    // sparse-ish masks keep element sizes moderate
    const GrassmannElement::Mask m = rng() & rng() & rng() & all;
    x.add(m, dyadic(rng));
  }
  return x;
}

double max_coeff(const GrassmannElement& x) {
  double m = 0.0;
  for (const auto& [mask, c] : x.terms()) m = std::max(m, std::abs(c));
  return m;
}

GrassmannField random_lift(std::size_t sites, std::mt19937_64& rng) {
  std::vector<std::array<cplx, 4>> values(sites);
  for (auto& v : values)
    for (cplx& c : v) c = dyadic(rng);
  return GrassmannField(std::move(values), 1.0);
}

}  // namespace

int run_grassmann(const Config& cfg, const RunOptions& options, std::ostream& log) {
  const long long sites = cfg.integer("grassmann.sites", 2);
  const long long samples = cfg.integer("grassmann.samples", 16);
  const Constants k = physics(cfg);
  if (sites < 1 || 8 * sites > GrassmannElement::max_generators)
    throw ConfigError("grassmann.sites must lie in [1, " + std::to_string(GrassmannElement::max_generators / 8) + "]");
  if (samples < 1) throw ConfigError("grassmann.samples must be positive");
  const std::uint64_t seed = seed_of(cfg, options);
  std::mt19937_64 rng(seed);
  const int pairs = static_cast<int>(4 * sites);
  const int gens = 2 * pairs;

  std::vector<GrassmannElement> generators;
  for (int g = 0; g < gens; ++g)
    generators.push_back(GrassmannElement::monomial(pairs, GrassmannElement::Mask{1} << g));

  double gen_anti = 0.0;
  for (const auto& a : generators)
    for (const auto& b : generators) gen_anti = std::max(gen_anti, max_coeff(a * b + b * a));

  double pair_nil = 0.0;
  for (int p = 0; p < pairs; ++p) {
    const GrassmannElement x = GrassmannElement::alpha_star(pairs, p) * GrassmannElement::alpha(pairs, p);
    pair_nil = std::max(pair_nil, max_coeff(x * x));
  }

  double deriv_anti = 0.0;
  double field_anti = 0.0;
  double charge_nil = 0.0;
  double energy_diff = 0.0;
  for (long long s = 0; s < samples; ++s) {
    const GrassmannElement x = random_element(pairs, rng);
    for (int kk = 0; kk < gens; ++kk) {
      for (int j = 0; j < gens; ++j) {
        GrassmannElement r = functional_derivative(generators[static_cast<std::size_t>(j)] * x, kk) +
                             generators[static_cast<std::size_t>(j)] * functional_derivative(x, kk);
        if (kk == j) r -= x;
        deriv_anti = std::max(deriv_anti, max_coeff(r));
      }
    }

    const GrassmannField field = random_lift(static_cast<std::size_t>(sites), rng);
    for (std::size_t xs = 0; xs < field.sites(); ++xs) {
      for (std::size_t ys = 0; ys < field.sites(); ++ys) {
        for (int i = 0; i < 4; ++i) {
          for (int j = 0; j < 4; ++j) {
            GrassmannElement mixed = field.apply_field(xs, i, field.apply_adjoint(ys, j, x)) +
                                     field.apply_adjoint(ys, j, field.apply_field(xs, i, x));
            if (xs == ys && i == j) mixed -= (1.0 / field.cell_volume()) * x;
            const GrassmannElement ff = field.apply_field(xs, i, field.apply_field(ys, j, x)) +
                                        field.apply_field(ys, j, field.apply_field(xs, i, x));
            const GrassmannElement aa = field.apply_adjoint(xs, i, field.apply_adjoint(ys, j, x)) +
                                        field.apply_adjoint(ys, j, field.apply_adjoint(xs, i, x));
            field_anti = std::max({field_anti, max_coeff(mixed), max_coeff(ff), max_coeff(aa)});
          }
        }
      }
    }

    for (std::size_t xs = 0; xs < field.sites(); ++xs) {
      const GrassmannElement rho = grassmann_charge_density(field, xs, k.charge);
      for (const auto& [mask, c] : rho.terms()) {
        const GrassmannElement mono = GrassmannElement::monomial(pairs, mask, c);
        charge_nil = std::max(charge_nil, max_coeff(mono * mono));
      }
      GrassmannElement power = rho;
      for (int p = 0; p < 4; ++p) power = power * rho;
      charge_nil = std::max(charge_nil, max_coeff(power));
    }

    const GrassmannField plus = random_lift(static_cast<std::size_t>(sites), rng);
    const GrassmannField minus = random_lift(static_cast<std::size_t>(sites), rng);
    const GrassmannField dplus = random_lift(static_cast<std::size_t>(sites), rng);
    const GrassmannField dminus = random_lift(static_cast<std::size_t>(sites), rng);
    const GrassmannElement main = grassmann_energy(plus, minus, dplus, dminus, GrassmannEnergyForm::main, k.hbar);
    const GrassmannElement reordered =
        grassmann_energy(plus, minus, dplus, dminus, GrassmannEnergyForm::reordered, k.hbar);
    energy_diff = std::max(energy_diff, max_coeff(main - reordered));
  }

  CsvTable table({"check", "value"});
  table.add_row({std::string("generators"), static_cast<long long>(gens)});
  table.add_row({std::string("generator_anticommutator_max"), gen_anti});
  table.add_row({std::string("pair_square_max"), pair_nil});
  table.add_row({std::string("derivative_anticommutator_error"), deriv_anti});
  table.add_row({std::string("field_anticommutator_error"), field_anti});
  table.add_row({std::string("charge_nilpotency_max"), charge_nil});
  table.add_row({std::string("energy_form_difference"), energy_diff});

  std::vector<std::string> breaches;
  for (const auto& row : table.data())
    if (const double* v = std::get_if<double>(&row[1]); v && *v != 0.0)
      breaches.push_back(std::get<std::string>(row[0]) + " = " + fmt(*v));
  log << "grassmann: " << gens << " generators, " << samples << " samples\n";
  return finish({{"report.csv", &table}}, metadata("grassmann", cfg, seed), breaches, options, log);
}

int run_experiment(const std::string& experiment, const Config& config, const RunOptions& options,
                   std::ostream& log) {
  try {
    if (config.has("experiment") && config.text("experiment") != experiment)
      throw ConfigError("config is for experiment '" + config.text("experiment") + "', not '" + experiment + "'");
    std::filesystem::create_directories(options.out);
    if (experiment == "evolve") return run_evolve(config, options, log);
    if (experiment == "packet") return run_packet(config, options, log);
    if (experiment == "em") return run_em(config, options, log);
    if (experiment == "fock") return run_fock(config, options, log);
    if (experiment == "grassmann") return run_grassmann(config, options, log);
    throw ConfigError("unknown experiment '" + experiment + "'");
  } catch (const ConfigError& err) {
    log << "config error: " << err.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& err) {
    log << "config error: " << err.what() << "\n";
    return kConfigError;
  }
}

}  // namespace cdft::cli
