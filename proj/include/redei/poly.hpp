#pragma once

// Dense univariate polynomials over a FieldSpec.

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "redei/ff.hpp"

namespace redei {

using Degree = std::int64_t;

/// Degree of the zero polynomial. Absorbing under add_degrees.
inline constexpr Degree kNegInf = std::numeric_limits<Degree>::min();

constexpr Degree add_degrees(Degree a, Degree b) noexcept {
  return (a == kNegInf || b == kNegInf) ? kNegInf : a + b;
}

class Polynomial {
 public:
  explicit Polynomial(FieldSpec field) : field_(std::move(field)) {}
  /// Coefficients constant term first; trailing zeros are stripped.
  Polynomial(FieldSpec field, std::vector<FieldElement> coeffs);

  static Polynomial constant(const FieldSpec& field, FieldElement c);
  static Polynomial monomial(const FieldSpec& field, FieldElement c, std::size_t degree);
  /// x.
  static Polynomial identity(const FieldSpec& field);
  /// x - root.
  static Polynomial linear(const FieldSpec& field, FieldElement root);

  const FieldSpec& field() const noexcept { return field_; }
  std::span<const FieldElement> coeffs() const noexcept { return coeffs_; }

  Degree degree() const noexcept {
    return coeffs_.empty() ? kNegInf : static_cast<Degree>(coeffs_.size()) - 1;
  }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_constant() const noexcept { return coeffs_.size() <= 1; }
  bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == field_.one(); }

  /// Coefficient of x^i (zero beyond the degree).
  FieldElement coeff(std::size_t i) const noexcept {
    return i < coeffs_.size() ? coeffs_[i] : field_.zero();
  }
  FieldElement leading() const noexcept { return coeffs_.empty() ? field_.zero() : coeffs_.back(); }

  FieldElement evaluate(FieldElement x) const;

  Polynomial scale(FieldElement c) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  friend bool operator==(const Polynomial& a, const Polynomial& b) noexcept {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void normalize() noexcept;

  FieldSpec field_;
  std::vector<FieldElement> coeffs_;
};

struct DivMod {
  Polynomial quotient;
  Polynomial remainder;
};

/// Formal derivative; d/dx x^p = 0 in characteristic p.
Polynomial derivative(const Polynomial& f);

/// Euclidean division num = den * quotient + remainder, deg remainder < deg den.
DivMod quotient_rem(const Polynomial& num, const Polynomial& den);

/// num / den when den divides num exactly, nullopt otherwise.
std::optional<Polynomial> exact_divide(const Polynomial& num, const Polynomial& den);

Polynomial pow(const Polynomial& f, std::uint64_t n);

/// Product of (x - r) over the given roots.
Polynomial from_roots(const FieldSpec& field, std::span<const FieldElement> roots);

/// (sigma_0, ..., sigma_n) of the values; sigma_0 = 1.
std::vector<FieldElement> elementary_symmetric(const FieldSpec& field, std::span<const FieldElement> values);

using RootMultiset = std::map<FieldElement, std::uint32_t>;

/// Roots in F_q with multiplicity, found by scanning the field and dividing out
/// each root repeatedly. Throws ZeroPolynomial.
RootMultiset roots_with_multiplicity(const Polynomial& f);

struct LinearSplit {
  Polynomial fully_reducible;  // product of (x - r)^mult over all roots
  Polynomial nonlinear;        // f / fully_reducible, root-free over F_q
  /// p-adic valuation of the gcd of root multiplicities; nullopt when f has no roots.
  std::optional<std::uint32_t> l1;
};

/// Throws ZeroPolynomial or NonMonic.
LinearSplit linear_split(const Polynomial& f);

struct PthContent {
  std::uint32_t l = 0;  // largest l with f in F_q[x^{p^l}]
  Polynomial reduced;   // reduced^{p^l} == f
};

/// Throws ZeroPolynomial. A nonzero constant reports l = 0 and itself.
PthContent pth_content(const Polynomial& f);

/// Largest v with p^v dividing n (n > 0).
std::uint32_t p_adic_valuation(std::uint64_t n, std::uint32_t p) noexcept;

}  // namespace redei
