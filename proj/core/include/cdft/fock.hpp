#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Sparse>

#include "cdft/lattice.hpp"
#include "cdft/spinor_algebra.hpp"

namespace cdft {

struct ModeSlot {
  Vec3 momentum{};
  int spin = 0;
  double energy = 1.0;
};

/// Electron (b) slots and negative-frequency (c, relabelled d) slots.
struct ModeSpec {
  std::vector<ModeSlot> b_modes;
  std::vector<ModeSlot> c_modes;

  static constexpr int max_modes = 12;

  int mb() const { return static_cast<int>(b_modes.size()); }
  int mc() const { return static_cast<int>(c_modes.size()); }
  int total() const { return mb() + mc(); }

  /// Throws std::invalid_argument on a non-positive energy or more than max_modes slots.
  void validate() const;
};

/// M_b b-slots and M_c c-slots, all with the same energy.
ModeSpec uniform_spec(int mb, int mc, double energy = 1.0);

using FockOperator = Eigen::SparseMatrix<cplx>;
using FockState = Eigen::VectorXcd;

enum class Ladder { b, c, d };

struct LadderOp {
  Ladder kind = Ladder::b;
  int mode = 0;
  bool dagger = false;

  bool creates() const;
  auto operator<=>(const LadderOp&) const = default;
};

/// Ordered product of ladder operators; an empty product is the identity.
using OpWord = std::vector<LadderOp>;

/// Sum of words with complex coefficients, kept in canonical word order.
class OpPolynomial {
 public:
  OpPolynomial() = default;

  void add(const OpWord& word, cplx coeff);
  const std::map<OpWord, cplx>& terms() const { return terms_; }
  bool operator==(const OpPolynomial&) const = default;

 private:
  std::map<OpWord, cplx> terms_;
};

/// Operator swap c_k -> d_k^dagger, c_k^dagger -> d_k.
OpPolynomial swap_to_d(const OpPolynomial& poly);

/// Moves annihilators to the right using the canonical anticommutators.
OpPolynomial normal_order(const OpPolynomial& poly);

/// Removes the identity (c-number) term.
OpPolynomial drop_constants(const OpPolynomial& poly);

/// Jordan-Wigner occupation basis over b-slots followed by c-slots.
/// Bit k of a basis index is the occupation of slot k.
class FockSpace {
 public:
  explicit FockSpace(ModeSpec spec);

  const ModeSpec& spec() const { return spec_; }
  int modes() const { return spec_.total(); }
  std::size_t dimension() const { return std::size_t{1} << modes(); }

  FockOperator b(int k) const;
  FockOperator b_dag(int k) const;
  FockOperator c(int k) const;
  FockOperator c_dag(int k) const;
  FockOperator d(int k) const { return c_dag(k); }
  FockOperator d_dag(int k) const { return c(k); }
  FockOperator identity() const;

  /// Empty b-sector, filled c-sector: annihilated by every b and every d.
  FockState vacuum() const;
  /// Every slot empty.
  FockState bare() const;

  FockOperator to_matrix(const OpPolynomial& poly) const;

 private:
  FockOperator word_matrix(const OpWord& word, cplx coeff) const;

  ModeSpec spec_;
};

/// sum E (b^dagger b - c^dagger c)
OpPolynomial hamiltonian_naive_poly(const ModeSpec& spec);
/// sum E (b^dagger b + d^dagger d)
OpPolynomial hamiltonian_normal_poly(const ModeSpec& spec);
/// -e sum (b^dagger b + c^dagger c)
OpPolynomial charge_naive_poly(const ModeSpec& spec);
/// sum (-e b^dagger b + e d^dagger d)
OpPolynomial charge_normal_poly(const ModeSpec& spec);

FockOperator hamiltonian_naive(const FockSpace& space);
FockOperator hamiltonian_normal(const FockSpace& space);
FockOperator charge_naive(const FockSpace& space, double e = 1.0);
FockOperator charge_normal(const FockSpace& space, double e = 1.0);

/// Naive Hamiltonian carried through swap, normal ordering and constant removal.
FockOperator hamiltonian_via_swap(const FockSpace& space);
FockOperator charge_via_swap(const FockSpace& space, double e = 1.0);

FockOperator anticommutator(const FockOperator& a, const FockOperator& b);
FockOperator commutator(const FockOperator& a, const FockOperator& b);
double max_abs(const FockOperator& a);

/// Same sparsity pattern and bitwise-equal stored values.
bool identical(const FockOperator& a, const FockOperator& b);

/// Ascending eigenvalues of a Hermitian operator.
std::vector<double> spectrum(const FockOperator& h);

struct FieldOperatorReport {
  double completeness_error = 0.0;     // max |sum_s u u^dag + v(-p) v(-p)^dag - 2E I|
  double anticommutator_error = 0.0;   // max |{psi_i(x), psi_j(y)^dag} - truncated delta|
  double psi_psi_error = 0.0;          // max |{psi_i(x), psi_j(y)}|
  int modes = 0;
};

/// Builds b-slots at each listed bin and c-slots at the negated bins (both spins),
/// then checks the equal-time anticommutators between all listed sites.
FieldOperatorReport field_operator_check(const Lattice& lattice, const std::vector<std::size_t>& bins,
                                         const std::vector<std::size_t>& sites);

/// Spinor completeness only, at arbitrary momenta.
double spinor_completeness_error(const std::vector<Vec3>& momenta, const Constants& k);

}  // namespace cdft
