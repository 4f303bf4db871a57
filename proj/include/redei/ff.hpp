#pragma once

// Exact arithmetic in F_{p^e}.
//
// Elements are encoded as integers in [0, q): the base-p digits c_0..c_{e-1}
// (low to high) are the coordinates of the element in the basis 1, t, ...,
// t^{e-1}, where t is the class of x modulo the field's modulus. The modulus is
// chosen canonically (smallest integer code among monic irreducibles of degree
// e), so encodings are reproducible everywhere.

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace redei {

struct FieldElement {
  std::uint32_t code = 0;

  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

inline constexpr std::uint64_t kDefaultFieldCap = std::uint64_t{1} << 16;

bool is_prime(std::uint64_t n);

class FieldSpec {
 public:
  /// Builds the canonical F_{p^e}. Throws NonPrimeCharacteristic or SizeLimit.
  static FieldSpec construct(std::uint64_t p, std::uint64_t e, std::uint64_t cap = kDefaultFieldCap);

  std::uint32_t p() const noexcept;
  std::uint32_t e() const noexcept;
  std::uint32_t q() const noexcept;

  /// Monic modulus, constant term first; size e + 1.
  std::span<const std::uint32_t> modulus() const noexcept;
  /// Integer code sum_{i<e} c_i p^i of the non-leading modulus coefficients.
  std::uint64_t modulus_code() const noexcept;

  FieldElement zero() const noexcept { return FieldElement{0}; }
  FieldElement one() const noexcept { return FieldElement{1}; }
  /// Validated element; throws CodeOutOfRange.
  FieldElement element(std::uint64_t code) const;
  /// Image of an integer in the prime subfield.
  FieldElement from_integer(std::int64_t n) const noexcept;
  bool contains(FieldElement a) const noexcept { return a.code < q(); }

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement inv(FieldElement a) const;
  FieldElement div(FieldElement a, FieldElement b) const;
  FieldElement pow(FieldElement a, std::uint64_t n) const;
  /// a^{p^l}.
  FieldElement frobenius(FieldElement a, std::uint64_t l) const;

  /// All q elements in ascending code order.
  std::vector<FieldElement> elements() const;

  /// "p e modulus-code".
  std::string describe() const;
  /// Human form of the modulus, e.g. "x^2+1".
  std::string modulus_string() const;

  friend bool operator==(const FieldSpec& lhs, const FieldSpec& rhs) noexcept;

  struct Tables;

 private:
  explicit FieldSpec(std::shared_ptr<const Tables> t) : t_(std::move(t)) {}

  void check(FieldElement a) const;

  std::shared_ptr<const Tables> t_;
};

}  // namespace redei

template <>
struct std::hash<redei::FieldElement> {
  std::size_t operator()(redei::FieldElement a) const noexcept { return a.code; }
};
