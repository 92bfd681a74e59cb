#include <gtest/gtest.h>

#include <random>

#include "cdft/fock.hpp"

using namespace cdft;

namespace {

// Jordan-Wigner annihilator for slot k of m slots built from Kronecker
// products: Z^(slots below k) (x) a (x) I. Basis index bit k is slot k, so the
// Kronecker order runs from the highest slot down.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXcd jw_annihilator(int k, int m) {
  Eigen::MatrixXcd z(2, 2), a(2, 2), id = Eigen::MatrixXcd::Identity(2, 2);
  z << 1, 0, 0, -1;
  a << 0, 1, 0, 0;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int slot = m - 1; slot >= 0; --slot) out = kron(out, slot > k ? id : (slot == k ? a : z));
  return out;
}

}  // namespace

TEST(Fock, SingleModeAnticommutator) {
  const FockSpace s(uniform_spec(1, 0));
  EXPECT_EQ(Eigen::MatrixXcd(anticommutator(s.b(0), s.b_dag(0))), Eigen::MatrixXcd::Identity(2, 2));
  EXPECT_EQ(max_abs(FockOperator(s.b_dag(0) * s.b_dag(0))), 0.0);
}

TEST(Fock, MatchesKroneckerJordanWigner) {
  const FockSpace s(uniform_spec(2, 3));
  for (int k = 0; k < 2; ++k) EXPECT_EQ(Eigen::MatrixXcd(s.b(k)), jw_annihilator(k, 5));
  for (int k = 0; k < 3; ++k) EXPECT_EQ(Eigen::MatrixXcd(s.c(k)), jw_annihilator(2 + k, 5));
}

TEST(Fock, AllAnticommutatorsExactAtEightModes) {
  const FockSpace s(uniform_spec(4, 4));
  std::vector<FockOperator> ops;
  std::vector<std::pair<int, int>> tag;
  for (int k = 0; k < 4; ++k) {
    ops.push_back(s.b(k)), tag.emplace_back(k, 0);
    ops.push_back(s.b_dag(k)), tag.emplace_back(k, 1);
    ops.push_back(s.d(k)), tag.emplace_back(4 + k, 0);
    ops.push_back(s.d_dag(k)), tag.emplace_back(4 + k, 1);
  }
  const FockOperator id = s.identity();
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = 0; j < ops.size(); ++j) {
      const bool pair = tag[i].first == tag[j].first && tag[i].second != tag[j].second;
      const FockOperator r = anticommutator(ops[i], ops[j]);
      if (pair)
        EXPECT_EQ(max_abs(r - id), 0.0);
      else
        EXPECT_EQ(max_abs(r), 0.0);
    }
}

TEST(Fock, SwapSharesMatrices) {
  const FockSpace s(uniform_spec(1, 1));
  EXPECT_TRUE(identical(s.d_dag(0), s.c(0)));
  EXPECT_TRUE(identical(s.d(0), s.c_dag(0)));
  EXPECT_EQ(max_abs(anticommutator(s.b(0), s.d_dag(0))), 0.0);
}

TEST(Fock, UnitPresetSpectra) {
  const FockSpace s(uniform_spec(1, 1, 1.0));
  EXPECT_EQ(spectrum(hamiltonian_naive(s)), (std::vector<double>{-1, 0, 0, 1}));
  EXPECT_EQ(spectrum(hamiltonian_normal(s)), (std::vector<double>{0, 1, 1, 2}));
}

TEST(Fock, NegativeEnergyCreation) {
  const FockSpace s(uniform_spec(0, 1, 1.5));
  const FockState st = s.c_dag(0) * s.bare();
  const FockState h = hamiltonian_naive(s) * st;
  EXPECT_EQ(h, FockState(-1.5 * st));
}

TEST(Fock, ShiftIdentitiesExact) {
  ModeSpec spec;
  spec.b_modes = {{{}, 0, 1.0}, {{}, 1, 2.5}, {{}, 0, 0.75}};
  spec.c_modes = {{{}, 0, 1.0}, {{}, 1, 3.0}, {{}, 0, 0.5}};
  const FockSpace s(spec);
  const double e = 0.5;
  const FockOperator id = s.identity();
  EXPECT_EQ(max_abs(hamiltonian_naive(s) - (hamiltonian_normal(s) - 4.5 * id)), 0.0);
  EXPECT_EQ(max_abs(charge_naive(s, e) - (charge_normal(s, e) - e * 3.0 * id)), 0.0);
}

TEST(Fock, RoutesByteIdentical) {
  ModeSpec spec;
  spec.b_modes = {{{}, 0, 1.1}, {{}, 1, 0.3}};
  spec.c_modes = {{{}, 0, 0.7}, {{}, 1, 2.9}, {{}, 0, 1.0 / 3.0}};
  const FockSpace s(spec);
  EXPECT_TRUE(identical(hamiltonian_via_swap(s), hamiltonian_normal(s)));
  EXPECT_TRUE(identical(charge_via_swap(s, 1.7), charge_normal(s, 1.7)));
}

TEST(Fock, ChargesOfSingleParticles) {
  const FockSpace s(uniform_spec(1, 1));
  const FockState vac = s.vacuum();
  const FockOperator q = charge_normal(s, 1.0);
  EXPECT_EQ(FockState(q * (s.b_dag(0) * vac)), FockState(-1.0 * (s.b_dag(0) * vac)));
  EXPECT_EQ(FockState(q * (s.d_dag(0) * vac)), FockState(1.0 * (s.d_dag(0) * vac)));
  EXPECT_EQ(max_abs(commutator(q, hamiltonian_normal(s))), 0.0);
  EXPECT_EQ(max_abs(commutator(charge_naive(s, 1.0), hamiltonian_naive(s))), 0.0);
}

TEST(Fock, VacuumProperties) {
  const FockSpace s(uniform_spec(2, 3, 1.25));
  const FockState vac = s.vacuum();
  for (int k = 0; k < 2; ++k) EXPECT_EQ((s.b(k) * vac).norm(), 0.0);
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ((s.d(k) * vac).norm(), 0.0);
    EXPECT_EQ((s.c_dag(k) * vac).norm(), 0.0);
  }
  EXPECT_EQ(vac.dot(hamiltonian_normal(s) * vac), cplx{});
  const auto naive = spectrum(hamiltonian_naive(s));
  EXPECT_EQ(naive.front(), -3.75);
  EXPECT_GE(spectrum(hamiltonian_normal(s)).front(), 0.0);
}

TEST(Fock, NormalOrderingRules) {
  OpPolynomial p;
  p.add({{Ladder::d, 0, false}, {Ladder::d, 0, true}}, 1.0);
  OpPolynomial expected;
  expected.add({}, 1.0);
  expected.add({{Ladder::d, 0, true}, {Ladder::d, 0, false}}, -1.0);
  EXPECT_EQ(normal_order(p), expected);

  OpPolynomial q;
  q.add({{Ladder::b, 1, true}, {Ladder::b, 1, true}}, 2.0);
  EXPECT_TRUE(normal_order(q).terms().empty());

  OpPolynomial r;
  r.add({{Ladder::b, 0, false}, {Ladder::d, 1, true}}, 1.0);
  OpPolynomial r_expected;
  r_expected.add({{Ladder::d, 1, true}, {Ladder::b, 0, false}}, -1.0);
  EXPECT_EQ(normal_order(r), r_expected);

  OpPolynomial c;
  c.add({{Ladder::c, 2, true}, {Ladder::c, 2, false}}, 1.0);
  OpPolynomial swapped;
  swapped.add({{Ladder::d, 2, false}, {Ladder::d, 2, true}}, 1.0);
  EXPECT_EQ(swap_to_d(c), swapped);
}

TEST(Fock, DimensionCap) {
  EXPECT_THROW(FockSpace(uniform_spec(7, 6)), std::invalid_argument);
  ModeSpec bad = uniform_spec(1, 1);
  bad.c_modes[0].energy = 0.0;
  EXPECT_THROW(FockSpace{bad}, std::invalid_argument);
}

TEST(FieldOperators, SpinorCompleteness) {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> g(0.0, 2.0);
  std::vector<Vec3> momenta;
  for (int i = 0; i < 50; ++i) momenta.push_back({g(rng), g(rng), g(rng)});
  EXPECT_LT(spinor_completeness_error(momenta, {}), 1e-12);
}

TEST(FieldOperators, EqualTimeAnticommutators) {
  const Lattice l(4, 3.0, {});
  const std::vector<std::size_t> bins{l.flat(0, 0, 0), l.flat(1, 0, 0), l.flat(3, 0, 0)};
  const std::vector<std::size_t> sites{l.flat(0, 0, 0), l.flat(1, 2, 3), l.flat(3, 0, 1)};
  const FieldOperatorReport r = field_operator_check(l, bins, sites);
  EXPECT_EQ(r.modes, 12);
  EXPECT_LT(r.completeness_error, 1e-12);
  EXPECT_LT(r.anticommutator_error, 1e-12);
  EXPECT_LT(r.psi_psi_error, 1e-12);
}

TEST(FieldOperators, SingleMomentumDelta) {
  const Lattice l(4, 2.0, {});
  const std::vector<std::size_t> bins{l.flat(1, 1, 0)};
  const FieldOperatorReport r = field_operator_check(l, bins, {0});
  EXPECT_EQ(r.modes, 4);
  EXPECT_LT(r.anticommutator_error, 1e-13);
}
