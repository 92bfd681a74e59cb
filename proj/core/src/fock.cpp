#include "cdft/fock.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <stdexcept>
#include <utility>

#include <Eigen/Eigenvalues>

namespace cdft {

void ModeSpec::validate() const {
  if (total() > max_modes)
    throw std::invalid_argument("fock: at most " + std::to_string(max_modes) + " slots supported, got " +
                                std::to_string(total()));
  for (const auto* list : {&b_modes, &c_modes})
    for (const ModeSlot& s : *list)
      if (!(s.energy > 0.0)) throw std::invalid_argument("fock: slot energies must be positive");
}

ModeSpec uniform_spec(int mb, int mc, double energy) {
  ModeSpec spec;
  for (int k = 0; k < mb; ++k) spec.b_modes.push_back({{}, k % 2, energy});
  for (int k = 0; k < mc; ++k) spec.c_modes.push_back({{}, k % 2, energy});
  return spec;
}

bool LadderOp::creates() const { return dagger; }

void OpPolynomial::add(const OpWord& word, cplx coeff) {
  if (coeff == cplx{}) return;
  auto [it, inserted] = terms_.try_emplace(word, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == cplx{}) terms_.erase(it);
  }
}

namespace {

// c_k and d_k^dagger act on the same slot; this folds both onto (slot, raises).
struct SlotAction {
  int slot_kind;  // 0 for b, 1 for c/d
  int mode;
  bool raises;
};

SlotAction action(const LadderOp& op) {
  switch (op.kind) {
    case Ladder::b: return {0, op.mode, op.dagger};
    case Ladder::c: return {1, op.mode, op.dagger};
    case Ladder::d: return {1, op.mode, !op.dagger};
  }
  return {0, 0, false};
}

bool conjugate_pair(const LadderOp& a, const LadderOp& b) {
  const SlotAction x = action(a);
  const SlotAction y = action(b);
  return x.slot_kind == y.slot_kind && x.mode == y.mode && x.raises != y.raises;
}

bool same_action(const LadderOp& a, const LadderOp& b) {
  const SlotAction x = action(a);
  const SlotAction y = action(b);
  return x.slot_kind == y.slot_kind && x.mode == y.mode && x.raises == y.raises;
}

// Sorts a block of mutually anticommuting operators; returns the sign, or 0 if an operator repeats.
int sort_block(OpWord::iterator first, OpWord::iterator last) {
  int sign = 1;
  const auto n = last - first;
  for (std::ptrdiff_t pass = 0; pass < n; ++pass) {
    for (std::ptrdiff_t j = 0; j + 1 < n - pass; ++j) {
      if (first[j + 1] < first[j]) {
        std::iter_swap(first + j, first + j + 1);
        sign = -sign;
      }
    }
  }
  for (std::ptrdiff_t j = 0; j + 1 < n; ++j)
    if (same_action(first[j], first[j + 1])) return 0;
  return sign;
}

}  // namespace

OpPolynomial swap_to_d(const OpPolynomial& poly) {
  OpPolynomial out;
  for (const auto& [word, coeff] : poly.terms()) {
    OpWord w = word;
    for (LadderOp& op : w) {
      if (op.kind == Ladder::c) {
        op.kind = Ladder::d;
        op.dagger = !op.dagger;
      }
    }
    out.add(w, coeff);
  }
  return out;
}

OpPolynomial normal_order(const OpPolynomial& poly) {
  OpPolynomial out;
  std::vector<std::pair<OpWord, cplx>> work(poly.terms().begin(), poly.terms().end());
  while (!work.empty()) {
    auto [word, coeff] = std::move(work.back());
    work.pop_back();
    std::size_t i = 0;
    while (i + 1 < word.size() && !(!word[i].creates() && word[i + 1].creates())) ++i;
    if (i + 1 >= word.size()) {
      const auto split = std::stable_partition(word.begin(), word.end(), [](const LadderOp& op) { return op.creates(); });
      const int s1 = sort_block(word.begin(), split);
      const int s2 = sort_block(split, word.end());
      if (s1 != 0 && s2 != 0) out.add(word, coeff * static_cast<double>(s1 * s2));
      continue;
    }
    if (conjugate_pair(word[i], word[i + 1])) {
      OpWord contracted(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(i));
      contracted.insert(contracted.end(), word.begin() + static_cast<std::ptrdiff_t>(i) + 2, word.end());
      work.emplace_back(std::move(contracted), coeff);
    }
    std::swap(word[i], word[i + 1]);
    work.emplace_back(std::move(word), -coeff);
  }
  return out;
}

OpPolynomial drop_constants(const OpPolynomial& poly) {
  OpPolynomial out;
  for (const auto& [word, coeff] : poly.terms())
    if (!word.empty()) out.add(word, coeff);
  return out;
}

FockSpace::FockSpace(ModeSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

FockOperator FockSpace::word_matrix(const OpWord& word, cplx coeff) const {
  std::vector<Eigen::Triplet<cplx>> trips;
  const std::size_t dim = dimension();
  for (std::size_t n = 0; n < dim; ++n) {
    std::uint64_t state = n;
    int sign = 1;
    bool alive = true;
    for (auto it = word.rbegin(); it != word.rend() && alive; ++it) {
      const SlotAction a = action(*it);
      const int slot = a.slot_kind == 0 ? a.mode : spec_.mb() + a.mode;
      if (a.mode < 0 || a.mode >= (a.slot_kind == 0 ? spec_.mb() : spec_.mc()))
        throw std::out_of_range("fock: ladder operator mode out of range");
      const std::uint64_t bit = std::uint64_t{1} << slot;
      const bool occupied = (state & bit) != 0;
      if (occupied == a.raises) {
        alive = false;
        break;
      }
      if (std::popcount(state & (bit - 1)) % 2 == 1) sign = -sign;
      state ^= bit;
    }
    if (alive)
      trips.emplace_back(static_cast<int>(state), static_cast<int>(n), coeff * static_cast<double>(sign));
  }
  FockOperator m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

FockOperator FockSpace::to_matrix(const OpPolynomial& poly) const {
  const auto dim = static_cast<Eigen::Index>(dimension());
  FockOperator m(dim, dim);
  for (const auto& [word, coeff] : poly.terms()) m += word_matrix(word, coeff);
  m.makeCompressed();
  return m;
}

FockOperator FockSpace::b(int k) const { return word_matrix({{Ladder::b, k, false}}, 1.0); }
FockOperator FockSpace::b_dag(int k) const { return word_matrix({{Ladder::b, k, true}}, 1.0); }
FockOperator FockSpace::c(int k) const { return word_matrix({{Ladder::c, k, false}}, 1.0); }
FockOperator FockSpace::c_dag(int k) const { return word_matrix({{Ladder::c, k, true}}, 1.0); }
FockOperator FockSpace::identity() const { return word_matrix({}, 1.0); }

FockState FockSpace::vacuum() const {
  FockState v = FockState::Zero(static_cast<Eigen::Index>(dimension()));
  std::uint64_t filled = 0;
  for (int k = 0; k < spec_.mc(); ++k) filled |= std::uint64_t{1} << (spec_.mb() + k);
  v(static_cast<Eigen::Index>(filled)) = 1.0;
  return v;
}

FockState FockSpace::bare() const {
  FockState v = FockState::Zero(static_cast<Eigen::Index>(dimension()));
  v(0) = 1.0;
  return v;
}

namespace {

OpPolynomial number_sum(const ModeSpec& spec, Ladder kind, double b_weight, double cd_weight, bool per_energy) {
  OpPolynomial p;
  for (int k = 0; k < spec.mb(); ++k) {
    const double w = per_energy ? spec.b_modes[static_cast<std::size_t>(k)].energy * b_weight : b_weight;
    p.add({{Ladder::b, k, true}, {Ladder::b, k, false}}, w);
  }
  for (int k = 0; k < spec.mc(); ++k) {
    const double w = per_energy ? spec.c_modes[static_cast<std::size_t>(k)].energy * cd_weight : cd_weight;
    p.add({{kind, k, true}, {kind, k, false}}, w);
  }
  return p;
}

}  // namespace

OpPolynomial hamiltonian_naive_poly(const ModeSpec& spec) { return number_sum(spec, Ladder::c, 1.0, -1.0, true); }
OpPolynomial hamiltonian_normal_poly(const ModeSpec& spec) { return number_sum(spec, Ladder::d, 1.0, 1.0, true); }

OpPolynomial charge_naive_poly(const ModeSpec& spec) { return number_sum(spec, Ladder::c, -1.0, -1.0, false); }
OpPolynomial charge_normal_poly(const ModeSpec& spec) { return number_sum(spec, Ladder::d, -1.0, 1.0, false); }

namespace {

OpPolynomial scaled(const OpPolynomial& p, double s) {
  OpPolynomial out;
  for (const auto& [w, c] : p.terms()) out.add(w, c * s);
  return out;
}

}  // namespace

FockOperator hamiltonian_naive(const FockSpace& space) {
  return space.to_matrix(hamiltonian_naive_poly(space.spec()));
}

FockOperator hamiltonian_normal(const FockSpace& space) {
  return space.to_matrix(hamiltonian_normal_poly(space.spec()));
}

FockOperator charge_naive(const FockSpace& space, double e) {
  return space.to_matrix(scaled(charge_naive_poly(space.spec()), e));
}

FockOperator charge_normal(const FockSpace& space, double e) {
  return space.to_matrix(scaled(charge_normal_poly(space.spec()), e));
}

FockOperator hamiltonian_via_swap(const FockSpace& space) {
  return space.to_matrix(drop_constants(normal_order(swap_to_d(hamiltonian_naive_poly(space.spec())))));
}

FockOperator charge_via_swap(const FockSpace& space, double e) {
  return space.to_matrix(drop_constants(normal_order(swap_to_d(scaled(charge_naive_poly(space.spec()), e)))));
}

FockOperator anticommutator(const FockOperator& a, const FockOperator& b) {
  FockOperator r = a * b + b * a;
  r.prune(cplx{});
  return r;
}

FockOperator commutator(const FockOperator& a, const FockOperator& b) {
  FockOperator r = a * b - b * a;
  r.prune(cplx{});
  return r;
}

double max_abs(const FockOperator& a) {
  double m = 0.0;
  for (Eigen::Index k = 0; k < a.outerSize(); ++k)
    for (FockOperator::InnerIterator it(a, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

bool identical(const FockOperator& a, const FockOperator& b) {
  FockOperator x = a;
  FockOperator y = b;
  x.makeCompressed();
  y.makeCompressed();
  if (x.rows() != y.rows() || x.cols() != y.cols() || x.nonZeros() != y.nonZeros()) return false;
  const auto nnz = static_cast<std::size_t>(x.nonZeros());
  const auto outer = static_cast<std::size_t>(x.outerSize()) + 1;
  return std::memcmp(x.valuePtr(), y.valuePtr(), nnz * sizeof(cplx)) == 0 &&
         std::memcmp(x.innerIndexPtr(), y.innerIndexPtr(), nnz * sizeof(int)) == 0 &&
         std::memcmp(x.outerIndexPtr(), y.outerIndexPtr(), outer * sizeof(int)) == 0;
}

std::vector<double> spectrum(const FockOperator& h) {
  bool diagonal = true;
  for (Eigen::Index k = 0; k < h.outerSize() && diagonal; ++k)
    for (FockOperator::InnerIterator it(h, k); it; ++it)
      if (it.row() != it.col() && it.value() != cplx{}) diagonal = false;

  std::vector<double> out;
  if (diagonal) {
    const Eigen::VectorXcd d = Eigen::MatrixXcd(h).diagonal();
    for (Eigen::Index i = 0; i < d.size(); ++i) out.push_back(d(i).real());
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(Eigen::MatrixXcd(h), Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(solver.eigenvalues()(i));
  }
  std::sort(out.begin(), out.end());
  return out;
}

double spinor_completeness_error(const std::vector<Vec3>& momenta, const Constants& k) {
  double err = 0.0;
  for (const Vec3& p : momenta) {
    const SpinBasis at_p = basis_spinors(p, k.mass, k.c);
    const SpinBasis at_minus = basis_spinors({-p[0], -p[1], -p[2]}, k.mass, k.c);
    Mat4 sum = Mat4::Zero();
    for (int s = 0; s < 2; ++s) {
      sum += at_p.u[static_cast<std::size_t>(s)] * at_p.u[static_cast<std::size_t>(s)].adjoint();
      sum += at_minus.v[static_cast<std::size_t>(s)] * at_minus.v[static_cast<std::size_t>(s)].adjoint();
    }
    sum -= 2.0 * at_p.energy * Mat4::Identity();
    err = std::max(err, sum.cwiseAbs().maxCoeff() / at_p.energy);
  }
  return err;
}

FieldOperatorReport field_operator_check(const Lattice& lattice, const std::vector<std::size_t>& bins,
                                         const std::vector<std::size_t>& sites) {
  const Constants& k = lattice.constants();
  ModeSpec spec;
  std::vector<Vec3> momenta;
  for (std::size_t bin : bins) {
    if (lattice.is_nyquist(bin)) throw std::invalid_argument("fock: Nyquist bins carry no modes");
    const Vec3 p = lattice.momentum(bin);
    const Vec3 mp = lattice.momentum(lattice.negated(bin));
    momenta.push_back(p);
    for (int s = 0; s < 2; ++s) {
      spec.b_modes.push_back({p, s, lattice.energy(bin)});
      spec.c_modes.push_back({mp, s, lattice.energy(bin)});
    }
  }
  const FockSpace space(spec);

  FieldOperatorReport report;
  report.modes = spec.total();
  report.completeness_error = spinor_completeness_error(momenta, k);

  const double norm = std::pow(lattice.length(), -1.5);
  auto phase = [&](const Vec3& p, std::size_t site, double sign) {
    const Vec3 x = lattice.position(site);
    return std::polar(1.0, sign * (p[0] * x[0] + p[1] * x[1] + p[2] * x[2]) / k.hbar);
  };

  std::vector<FockOperator> b_ops;
  std::vector<FockOperator> c_ops;
  for (int m = 0; m < spec.mb(); ++m) b_ops.push_back(space.b(m));
  for (int m = 0; m < spec.mc(); ++m) c_ops.push_back(space.c(m));

  // psi_i(x) = L^{-3/2} sum (2E)^{-1/2} [ b u_i(p) e^{ipx} + c v_i(p) e^{-ipx} ] over slot labels p
  auto psi = [&](std::size_t site, int i) {
    const auto dim = static_cast<Eigen::Index>(space.dimension());
    FockOperator op(dim, dim);
    for (int m = 0; m < spec.mb(); ++m) {
      const ModeSlot& s = spec.b_modes[static_cast<std::size_t>(m)];
      const SpinBasis basis = basis_spinors(s.momentum, k.mass, k.c);
      const cplx w = norm / std::sqrt(2.0 * s.energy) * basis.u[static_cast<std::size_t>(s.spin)](i) *
                     phase(s.momentum, site, 1.0);
      op += w * b_ops[static_cast<std::size_t>(m)];
    }
    for (int m = 0; m < spec.mc(); ++m) {
      const ModeSlot& s = spec.c_modes[static_cast<std::size_t>(m)];
      const SpinBasis basis = basis_spinors(s.momentum, k.mass, k.c);
      const cplx w = norm / std::sqrt(2.0 * s.energy) * basis.v[static_cast<std::size_t>(s.spin)](i) *
                     phase(s.momentum, site, -1.0);
      op += w * c_ops[static_cast<std::size_t>(m)];
    }
    return op;
  };

  std::vector<FockOperator> fields;
  std::vector<FockOperator> adjoints;
  for (std::size_t site : sites) {
    for (int i = 0; i < 4; ++i) {
      fields.push_back(psi(site, i));
      adjoints.push_back(FockOperator(fields.back().adjoint()));
    }
  }

  const FockOperator id = space.identity();
  for (std::size_t x = 0; x < sites.size(); ++x) {
    for (std::size_t y = 0; y < sites.size(); ++y) {
      cplx delta{};
      for (std::size_t bin : bins) {
        const Vec3 p = lattice.momentum(bin);
        delta += norm * norm * phase(p, sites[x], 1.0) * std::conj(phase(p, sites[y], 1.0));
      }
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
          const FockOperator& a = fields[x * 4 + static_cast<std::size_t>(i)];
          const FockOperator expected = (i == j ? delta : cplx{}) * id;
          report.anticommutator_error = std::max(
              report.anticommutator_error, max_abs(anticommutator(a, adjoints[y * 4 + static_cast<std::size_t>(j)]) - expected));
          report.psi_psi_error =
              std::max(report.psi_psi_error, max_abs(anticommutator(a, fields[y * 4 + static_cast<std::size_t>(j)])));
        }
      }
    }
  }
  return report;
}

}  // namespace cdft
