#include "cdft/grassmann.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace cdft {

namespace {

using Mask = GrassmannElement::Mask;

Mask bit(int k) { return Mask{1} << k; }

void check_same(const GrassmannElement& a, const GrassmannElement& b) {
  if (a.pairs() != b.pairs()) throw std::invalid_argument("grassmann: algebra mismatch");
}

}  // namespace

GrassmannElement::GrassmannElement(int pairs) : pairs_(pairs) {
  if (pairs < 0 || 2 * pairs > max_generators)
    throw std::invalid_argument("grassmann: " + std::to_string(2 * pairs) + " generators exceed the budget of " +
                                std::to_string(max_generators));
}

GrassmannElement GrassmannElement::scalar(int pairs, cplx value) { return monomial(pairs, 0, value); }

GrassmannElement GrassmannElement::alpha(int pairs, int k) { return monomial(pairs, bit(k)); }

GrassmannElement GrassmannElement::alpha_star(int pairs, int k) { return monomial(pairs, bit(pairs + k)); }

GrassmannElement GrassmannElement::monomial(int pairs, Mask mask, cplx coeff) {
  GrassmannElement g(pairs);
  g.add(mask, coeff);
  return g;
}

cplx GrassmannElement::coefficient(Mask mask) const {
  const auto it = terms_.find(mask);
  return it == terms_.end() ? cplx{} : it->second;
}

void GrassmannElement::add(Mask mask, cplx coeff) {
  if (generators() < 64 && (mask >> generators()) != 0)
    throw std::out_of_range("grassmann: monomial uses a generator outside the algebra");
  if (coeff == cplx{}) return;
  auto [it, inserted] = terms_.try_emplace(mask, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == cplx{}) terms_.erase(it);
  }
}

GrassmannElement& GrassmannElement::operator+=(const GrassmannElement& other) {
  check_same(*this, other);
  for (const auto& [m, c] : other.terms_) add(m, c);
  return *this;
}

GrassmannElement& GrassmannElement::operator-=(const GrassmannElement& other) {
  check_same(*this, other);
  for (const auto& [m, c] : other.terms_) add(m, -c);
  return *this;
}

GrassmannElement& GrassmannElement::operator*=(cplx s) {
  if (s == cplx{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

GrassmannElement operator+(GrassmannElement a, const GrassmannElement& b) { return a += b; }
GrassmannElement operator-(GrassmannElement a, const GrassmannElement& b) { return a -= b; }
GrassmannElement operator*(cplx s, GrassmannElement a) { return a *= s; }

int monomial_sign(Mask a, Mask b) {
  if ((a & b) != 0) return 0;
  int swaps = 0;
  for (Mask rest = b; rest != 0; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    swaps += std::popcount(a >> j);
  }
  return swaps % 2 == 0 ? 1 : -1;
}

GrassmannElement multiply(const GrassmannElement& a, const GrassmannElement& b) {
  check_same(a, b);
  GrassmannElement out(a.pairs());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      const int s = monomial_sign(ma, mb);
      if (s != 0) out.add(ma | mb, static_cast<double>(s) * ca * cb);
    }
  }
  return out;
}

GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b) { return multiply(a, b); }

GrassmannElement conjugate(const GrassmannElement& a) {
  const int n = a.pairs();
  GrassmannElement out(n);
  for (const auto& [m, c] : a.terms()) {
    // generators in reversed order, each mapped to its partner
    std::vector<int> seq;
    for (int k = a.generators() - 1; k >= 0; --k)
      if (m & bit(k)) seq.push_back(k < n ? k + n : k - n);
    int inversions = 0;
    Mask mapped = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      mapped |= bit(seq[i]);
      for (std::size_t j = i + 1; j < seq.size(); ++j)
        if (seq[i] > seq[j]) ++inversions;
    }
    out.add(mapped, (inversions % 2 == 0 ? 1.0 : -1.0) * std::conj(c));
  }
  return out;
}

GrassmannElement functional_derivative(const GrassmannElement& a, int k) {
  if (k < 0 || k >= a.generators()) throw std::out_of_range("grassmann: derivative generator out of range");
  GrassmannElement out(a.pairs());
  for (const auto& [m, c] : a.terms()) {
    if (!(m & bit(k))) continue;
    const int below = std::popcount(m & (bit(k) - 1));
    out.add(m & ~bit(k), below % 2 == 0 ? c : -c);
  }
  return out;
}

int max_degree(const GrassmannElement& a) {
  int d = 0;
  for (const auto& [m, c] : a.terms()) d = std::max(d, std::popcount(m));
  return d;
}

GrassmannField::GrassmannField(std::vector<std::array<cplx, 4>> values, double cell_volume)
    : values_(std::move(values)), cell_volume_(cell_volume) {
  static_cast<void>(GrassmannElement(pairs()));
}

GrassmannElement GrassmannField::element(std::size_t site, int component) const {
  return GrassmannElement::monomial(pairs(), bit(pair_index(site, component)),
                                    values_.at(site)[static_cast<std::size_t>(component)]);
}

GrassmannElement GrassmannField::apply_field(std::size_t site, int component, const GrassmannElement& target) const {
  return multiply(element(site, component), target);
}

GrassmannElement GrassmannField::apply_adjoint(std::size_t site, int component,
                                               const GrassmannElement& target) const {
  const cplx v = values_.at(site)[static_cast<std::size_t>(component)];
  if (v == cplx{}) throw std::invalid_argument("grassmann: adjoint needs a nonzero field value");
  GrassmannElement d = functional_derivative(target, pair_index(site, component));
  return (1.0 / (cell_volume_ * v)) * d;
}

GrassmannField lift_field(const Lattice& lattice, const GridField<4>& psi, const std::vector<std::size_t>& sites) {
  std::vector<std::array<cplx, 4>> values;
  for (std::size_t s : sites) {
    std::array<cplx, 4> v{};
    for (int i = 0; i < 4; ++i) v[static_cast<std::size_t>(i)] = psi[i].at(s);
    values.push_back(v);
  }
  return GrassmannField(std::move(values), lattice.cell_volume());
}

std::vector<std::array<cplx, 4>> unlift(const GrassmannField& field) {
  std::vector<std::array<cplx, 4>> out(field.sites());
  for (std::size_t s = 0; s < field.sites(); ++s)
    for (int i = 0; i < 4; ++i)
      out[s][static_cast<std::size_t>(i)] = field.element(s, i).coefficient(bit(GrassmannField::pair_index(s, i)));
  return out;
}

GrassmannElement grassmann_charge_density(const GrassmannField& field, std::size_t site, double e) {
  GrassmannElement rho(field.pairs());
  for (int i = 0; i < 4; ++i) {
    const GrassmannElement g = field.element(site, i);
    rho += multiply(conjugate(g), g);
  }
  return -e * rho;
}

GrassmannElement grassmann_energy(const GrassmannField& plus, const GrassmannField& minus,
                                  const GrassmannField& dplus, const GrassmannField& dminus,
                                  GrassmannEnergyForm form, double hbar) {
  GrassmannElement sum(plus.pairs());
  for (std::size_t s = 0; s < plus.sites(); ++s) {
    for (int i = 0; i < 4; ++i) {
      sum += multiply(conjugate(plus.element(s, i)), dplus.element(s, i));
      if (form == GrassmannEnergyForm::main)
        sum += multiply(conjugate(minus.element(s, i)), dminus.element(s, i));
      else
        sum -= multiply(dminus.element(s, i), conjugate(minus.element(s, i)));
    }
  }
  return (kI * hbar * plus.cell_volume()) * sum;
}

}  // namespace cdft
