#pragma once

// The affine group Aff(F_q), identified with F_q^* x F_q via
// (a, b) <-> [[a, b], [0, 1]], acting on F_q by (a, b) . x = a x + b.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "redei/ff.hpp"
#include "redei/plane.hpp"
#include "redei/rational.hpp"

namespace redei {

struct AffElement {
  FieldElement a;  // nonzero
  FieldElement b;

  friend constexpr auto operator<=>(const AffElement&, const AffElement&) = default;
};

AffElement aff_identity(const FieldSpec& field);
/// Throws ZeroScale when a == 0.
AffElement aff_element(const FieldSpec& field, FieldElement a, FieldElement b);
/// (a, b)(a', b') = (a a', a b' + b).
AffElement aff_mul(const FieldSpec& field, const AffElement& g, const AffElement& h);
/// (a, b)^{-1} = (a^{-1}, -a^{-1} b).
AffElement aff_inv(const FieldSpec& field, const AffElement& g);
/// g . x = a x + b.
FieldElement aff_act(const FieldSpec& field, const AffElement& g, FieldElement x);

/// A finite subset of Aff(F_q), kept sorted. Duplicates are rejected.
class AffSet {
 public:
  AffSet(FieldSpec field, std::vector<AffElement> elems);

  const FieldSpec& field() const noexcept { return field_; }
  std::span<const AffElement> elems() const noexcept { return elems_; }
  std::size_t size() const noexcept { return elems_.size(); }
  bool empty() const noexcept { return elems_.empty(); }
  bool contains(const AffElement& g) const noexcept;

  friend bool operator==(const AffSet& x, const AffSet& y) noexcept {
    return x.field_ == y.field_ && x.elems_ == y.elems_;
  }

 private:
  FieldSpec field_;
  std::vector<AffElement> elems_;
};

/// Dense index a * q + b, used for bitmaps over the group.
inline std::size_t aff_index(const FieldSpec& field, const AffElement& g) noexcept {
  return std::size_t{g.a.code} * field.q() + g.b.code;
}

AffSet whole_group(const FieldSpec& field);
/// Stab(x) = {(a, (1 - a) x)}.
AffSet stabilizer(const FieldSpec& field, FieldElement x);
/// U = {(1, b)}.
AffSet unipotent(const FieldSpec& field);

AffSet inverse_set(const AffSet& A);
bool is_symmetric(const AffSet& A);
/// A union A^{-1}.
AffSet symmetrize(const AffSet& A);

/// {x y : x in X, y in Y}.
AffSet product_set(const AffSet& X, const AffSet& Y);
/// A^k, products of exactly k elements. Throws EmptySet, BadExponent.
AffSet product_power(const AffSet& A, std::uint32_t k);
bool is_subset(const AffSet& X, const AffSet& Y);

/// |A^3| / |A|. Throws NotSymmetric, EmptySet.
Rational tripling_constant(const AffSet& A);

/// {a : (a, b) in A}, sorted.
std::vector<FieldElement> projection_pi(const AffSet& A);

/// b / (a - 1), INF when a == 1. Throws IdentityElement.
Slope fiber_slope(const FieldSpec& field, const AffElement& g);

/// phi_g(A) = {h g h^{-1} : h in A}. Throws IdentityElement.
AffSet conjugation_image(const AffSet& A, const AffElement& g);

struct PiBound {
  std::int64_t pi_size = 0;  // |pi(A)|
  Rational rhs;              // |A^{k+3}| / |phi_g(A)|
  bool holds = true;
};

/// |pi(A)| <= |A^{k+3}| / |phi_g(A)| for g in A^k. Throws NotSymmetric,
/// MembershipViolation, IdentityElement.
PiBound pi_bound_check(const AffSet& A, const AffElement& g, std::uint32_t k);

enum class SizeRegime { Small, Medium, Large };

std::string_view to_string(SizeRegime regime);

/// Large iff |A| >= (3 + 2 sqrt 2) q, decided in integers.
SizeRegime size_regime(std::uint64_t size, std::uint64_t q);

struct CaseBRecord {
  std::int64_t pi_size = 0;
  /// (p^{floor(e/2)} + 2) C^4 in the small regime; in the medium regime the
  /// irrational (4 + 2 sqrt 2) C^4 is stored as its rational part 4 C^4 plus
  /// sqrt_coeff * sqrt 2 with sqrt_coeff = 2 C^4.
  Rational bound;
  Rational sqrt2_coeff;
  bool holds = false;
};

struct CaseCRecord {
  std::int64_t pi_size = 0;
  Rational bound;  // (2 / q) C^3 |A|
  bool holds = false;
  bool u_covered = false;
};

struct ClassificationReport {
  std::size_t size = 0;
  SizeRegime regime = SizeRegime::Small;
  Rational tripling_c;
  std::optional<FieldElement> case_a;  // witness x with A inside Stab(x)
  std::optional<CaseBRecord> case_b;
  std::optional<CaseCRecord> case_c;
  bool disjunction_holds = false;
};

/// Throws NotSymmetric, TooSmall.
ClassificationReport classify(const AffSet& A);

/// An affine element viewed as the plane point (a, b).
inline Point as_point(const AffElement& g) noexcept { return Point{g.a, g.b}; }

}  // namespace redei
