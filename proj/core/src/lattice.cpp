#include "cdft/lattice.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cdft/spinor_algebra.hpp"

namespace cdft {

Lattice::Lattice(int n, double length, const Constants& constants)
    : n_(n), length_(length), constants_(constants) {
  if (n % 2 != 0) throw std::invalid_argument("lattice: N must be even (got " + std::to_string(n) + ")");
  if (n < 4) throw std::invalid_argument("lattice: N must be at least 4 (got " + std::to_string(n) + ")");
  if (!(length > 0.0)) throw std::invalid_argument("lattice: box length L must be positive");
  if (!(constants.mass > 0.0)) throw std::invalid_argument("lattice: mass must be positive");
  if (!(constants.hbar > 0.0) || !(constants.c > 0.0))
    throw std::invalid_argument("lattice: hbar and c must be positive");
  sites_ = static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
}

Lattice make_lattice(int n, double length, const Constants& constants) {
  return Lattice(n, length, constants);
}

double Lattice::cell_volume() const {
  const double a = spacing();
  return a * a * a;
}

double Lattice::momentum_step() const {
  return 2.0 * std::numbers::pi * constants_.hbar / length_;
}

std::size_t Lattice::flat(int i, int j, int k) const {
  const auto n = static_cast<std::size_t>(n_);
  return (static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)) * n + static_cast<std::size_t>(k);
}

std::array<int, 3> Lattice::indices(std::size_t f) const {
  const auto n = static_cast<std::size_t>(n_);
  return {static_cast<int>(f / (n * n)), static_cast<int>((f / n) % n), static_cast<int>(f % n)};
}

std::array<int, 3> Lattice::wave_numbers(std::size_t f) const {
  const auto idx = indices(f);
  return {wave_number(idx[0]), wave_number(idx[1]), wave_number(idx[2])};
}

Vec3 Lattice::momentum(std::size_t f) const {
  const auto w = wave_numbers(f);
  const double dp = momentum_step();
  return {dp * w[0], dp * w[1], dp * w[2]};
}

Vec3 Lattice::wave_vector(std::size_t f) const {
  const auto w = wave_numbers(f);
  const double dk = 2.0 * std::numbers::pi / length_;
  return {dk * w[0], dk * w[1], dk * w[2]};
}

double Lattice::energy(std::size_t f) const {
  return on_shell_energy(momentum(f), constants_.mass, constants_.c);
}

Vec3 Lattice::position(std::size_t f) const {
  const auto idx = indices(f);
  const double a = spacing();
  return {a * idx[0], a * idx[1], a * idx[2]};
}

std::size_t Lattice::negated(std::size_t f) const {
  const auto idx = indices(f);
  auto neg = [this](int i) { return (n_ - i) % n_; };
  return flat(neg(idx[0]), neg(idx[1]), neg(idx[2]));
}

bool Lattice::is_nyquist(std::size_t f) const {
  const auto idx = indices(f);
  const int h = n_ / 2;
  return idx[0] == h || idx[1] == h || idx[2] == h;
}

bool Lattice::operator==(const Lattice& o) const {
  return n_ == o.n_ && length_ == o.length_ && constants_.hbar == o.constants_.hbar &&
         constants_.c == o.constants_.c && constants_.mass == o.constants_.mass &&
         constants_.charge == o.constants_.charge;
}

namespace {

// FFTW planning is not thread-safe; plans are created once per (n, sign) and
// executed through the new-array interface afterwards.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    const std::size_t sites = static_cast<std::size_t>(n) * n * n;
    auto* in = fftw_alloc_complex(sites);
    auto* out = fftw_alloc_complex(sites);
    fftw_plan plan = fftw_plan_dft_3d(n, n, n, in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    if (plan == nullptr) throw std::runtime_error("transform: FFTW planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

}  // namespace

void transform(const Lattice& lattice, std::span<const cplx> in, std::span<cplx> out,
               Direction direction) {
  if (in.size() != lattice.sites() || out.size() != lattice.sites())
    throw std::invalid_argument("transform: field size does not match lattice");
  const int sign = direction == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan plan = PlanCache::instance().get(lattice.n(), sign);

  // FFTW's new-array execute takes a non-const input; the plan is out-of-place.
  std::vector<cplx> scratch(in.begin(), in.end());
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(scratch.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));

  const double l32 = std::pow(lattice.length(), -1.5);
  const double scale = direction == Direction::forward ? l32 * lattice.cell_volume() : l32;
  for (auto& v : out) v *= scale;
}

std::vector<cplx> transform(const Lattice& lattice, std::span<const cplx> in, Direction direction) {
  std::vector<cplx> out(in.size());
  transform(lattice, in, out, direction);
  return out;
}

std::vector<cplx> spectral_derivative(const Lattice& lattice, std::span<const cplx> field, int axis) {
  auto spec = transform(lattice, field, Direction::forward);
  for (std::size_t f = 0; f < spec.size(); ++f) {
    if (lattice.is_nyquist(f)) {
      spec[f] = 0.0;
      continue;
    }
    spec[f] *= kI * lattice.wave_vector(f)[static_cast<std::size_t>(axis)];
  }
  return transform(lattice, spec, Direction::inverse);
}

DensityField spectral_divergence(const Lattice& lattice, const VectorDensityField& field) {
  std::vector<cplx> acc(lattice.sites(), cplx{});
  for (int axis = 0; axis < 3; ++axis) {
    const auto& comp = field.comp[static_cast<std::size_t>(axis)];
    std::vector<cplx> c(comp.begin(), comp.end());
    const auto d = spectral_derivative(lattice, c, axis);
    for (std::size_t f = 0; f < acc.size(); ++f) acc[f] += d[f];
  }
  DensityField div(lattice.sites());
  for (std::size_t f = 0; f < div.size(); ++f) div[f] = acc[f].real();
  return div;
}

double integrate(const Lattice& lattice, std::span<const double> density) {
  double s = 0.0;
  for (double v : density) s += v;
  return s * lattice.cell_volume();
}

cplx integrate(const Lattice& lattice, std::span<const cplx> density) {
  cplx s{};
  for (const cplx& v : density) s += v;
  return s * lattice.cell_volume();
}

double l2_norm(const Lattice& lattice, std::span<const double> field) {
  double s = 0.0;
  for (double v : field) s += v * v;
  return std::sqrt(s * lattice.cell_volume());
}

double l2_norm(const Lattice& lattice, std::span<const cplx> field) {
  double s = 0.0;
  for (const cplx& v : field) s += std::norm(v);
  return std::sqrt(s * lattice.cell_volume());
}

}  // namespace cdft
