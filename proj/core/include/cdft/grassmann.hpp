#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "cdft/dirac_field.hpp"

namespace cdft {

/// Element of the finite Grassmann algebra over generators alpha_k (bit k) and
/// alpha*_k (bit pairs + k), k < pairs. Monomials are stored with generators in
/// ascending bit order.
class GrassmannElement {
 public:
  using Mask = std::uint64_t;
  static constexpr int max_generators = 48;

  /// Throws std::invalid_argument if 2 * pairs exceeds max_generators.
  explicit GrassmannElement(int pairs);

  static GrassmannElement scalar(int pairs, cplx value);
  static GrassmannElement alpha(int pairs, int k);
  static GrassmannElement alpha_star(int pairs, int k);
  static GrassmannElement monomial(int pairs, Mask mask, cplx coeff = 1.0);

  int pairs() const { return pairs_; }
  int generators() const { return 2 * pairs_; }
  const std::map<Mask, cplx>& terms() const { return terms_; }
  cplx coefficient(Mask mask) const;
  bool is_zero() const { return terms_.empty(); }

  void add(Mask mask, cplx coeff);

  GrassmannElement& operator+=(const GrassmannElement& other);
  GrassmannElement& operator-=(const GrassmannElement& other);
  GrassmannElement& operator*=(cplx s);

  bool operator==(const GrassmannElement& other) const = default;

 private:
  int pairs_;
  std::map<Mask, cplx> terms_;
};

GrassmannElement operator+(GrassmannElement a, const GrassmannElement& b);
GrassmannElement operator-(GrassmannElement a, const GrassmannElement& b);
GrassmannElement operator*(cplx s, GrassmannElement a);

/// Throws std::invalid_argument on an algebra mismatch.
GrassmannElement multiply(const GrassmannElement& a, const GrassmannElement& b);
GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b);

/// alpha_k <-> alpha*_k, coefficients conjugated, monomial order reversed.
GrassmannElement conjugate(const GrassmannElement& a);

/// Left derivative with respect to generator bit k.
GrassmannElement functional_derivative(const GrassmannElement& a, int k);

/// Highest monomial degree present (0 for the zero element).
int max_degree(const GrassmannElement& a);

/// Sign of (ascending monomial a) * (ascending monomial b) after reordering; 0 if they overlap.
int monomial_sign(GrassmannElement::Mask a, GrassmannElement::Mask b);

/// Grassmann-valued field psi^G_i(x) = psi^c_i(x) alpha_{i,x} on a handful of
/// sites, one generator pair per (site, component): pair index site * 4 + i.
class GrassmannField {
 public:
  GrassmannField(std::vector<std::array<cplx, 4>> values, double cell_volume);

  int pairs() const { return static_cast<int>(values_.size()) * 4; }
  std::size_t sites() const { return values_.size(); }
  double cell_volume() const { return cell_volume_; }
  const std::vector<std::array<cplx, 4>>& values() const { return values_; }

  static int pair_index(std::size_t site, int component) { return static_cast<int>(site) * 4 + component; }

  GrassmannElement element(std::size_t site, int component) const;

  /// psi_hat_i(x): left multiplication by psi^G_i(x).
  GrassmannElement apply_field(std::size_t site, int component, const GrassmannElement& target) const;

  /// psi_hat_i(x)^dagger: (a^3 psi^c_i(x))^{-1} d/d alpha_{i,x}. Requires psi^c_i(x) != 0.
  GrassmannElement apply_adjoint(std::size_t site, int component, const GrassmannElement& target) const;

 private:
  std::vector<std::array<cplx, 4>> values_;
  double cell_volume_;
};

/// Lifts the listed sites of a complex field; throws if the generator budget is exceeded.
GrassmannField lift_field(const Lattice& lattice, const GridField<4>& psi, const std::vector<std::size_t>& sites);

/// Recovers the complex values from a lift (coefficient of each generator).
std::vector<std::array<cplx, 4>> unlift(const GrassmannField& field);

/// -e sum_i conj(psi^G_i) psi^G_i at one site, formed by Grassmann multiplication.
GrassmannElement grassmann_charge_density(const GrassmannField& field, std::size_t site, double e = 1.0);

enum class GrassmannEnergyForm { main, reordered };

/// i hbar a^3 sum_{x,i} over frequency parts. The positive and negative parts share
/// the site generators; `dplus`/`dminus` are their time derivatives.
///   main:      conj(psi_+^G) dpsi_+^G + conj(psi_-^G) dpsi_-^G
///   reordered: conj(psi_+^G) dpsi_+^G - dpsi_-^G conj(psi_-^G)
GrassmannElement grassmann_energy(const GrassmannField& plus, const GrassmannField& minus,
                                  const GrassmannField& dplus, const GrassmannField& dminus,
                                  GrassmannEnergyForm form, double hbar);

}  // namespace cdft
