#pragma once

// Checkers for the classical inequalities used alongside the direction
// bounds: point-line incidences in F_q^2 (Vinh), Kneser's theorem in (F_q, +),
// and the Ruzsa product-set inequality in Aff(F_q).

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "redei/affgroup.hpp"
#include "redei/ff.hpp"
#include "redei/plane.hpp"
#include "redei/rational.hpp"

namespace redei {

/// y = slope x + intercept, or x = intercept when vertical.
struct AffineLine {
  bool vertical = false;
  FieldElement slope;  // zero for vertical lines
  FieldElement intercept;

  friend constexpr auto operator<=>(const AffineLine&, const AffineLine&) = default;
};

bool on_line(const FieldSpec& field, const AffineLine& line, const Point& pt);

/// All q^2 + q lines: non-vertical by (slope, intercept), then vertical by c.
std::vector<AffineLine> enumerate_lines(const FieldSpec& field);

/// Position of a line in enumerate_lines order.
std::size_t line_index(const FieldSpec& field, const AffineLine& line) noexcept;

struct IncidenceResult {
  std::int64_t count = 0;  // I(P, L)
  Rational expectation;    // |P| |L| / q
  BigInt deviation_sq;     // (q I - |P| |L|)^2
  BigInt bound_sq;         // q^3 |P| |L|
};

IncidenceResult incidence_count(const FieldSpec& field, std::span<const Point> P, std::span<const AffineLine> L);

struct VinhVerdict {
  bool holds = true;
  IncidenceResult result;
};

/// |I - |P||L|/q| <= sqrt(q |P| |L|), squared and cleared of denominators.
VinhVerdict vinh_check(const FieldSpec& field, std::span<const Point> P, std::span<const AffineLine> L);

/// Lines meeting A in at most one point.
std::vector<AffineLine> undetermined_lines(const PlanePointSet& A);

/// {a + b}, sorted.
std::vector<FieldElement> sumset(const FieldSpec& field, std::span<const FieldElement> A,
                                 std::span<const FieldElement> B);

/// {h : S + h = S}, an additive subgroup containing 0.
std::vector<FieldElement> stabilizer_subgroup(const FieldSpec& field, std::span<const FieldElement> S);

struct KneserVerdict {
  bool holds = true;
  std::int64_t sumset_size = 0;
  std::int64_t h_size = 0;
};

/// |A + B| >= min{q, |A| + |B| - |H|}, H the stabilizer of A + B. Throws EmptySet.
KneserVerdict kneser_check(const FieldSpec& field, std::span<const FieldElement> A, std::span<const FieldElement> B);

struct RuzsaVerdict {
  bool holds = true;
  Rational c;               // |A^3| / |A|
  std::int64_t power_size = 0;  // |A^k|
  Rational bound;           // C^{k-2} |A|
};

/// |A^k| <= C^{k-2} |A|. Throws NotSymmetric, BadExponent (k < 4).
RuzsaVerdict ruzsa_check(const AffSet& A, std::uint32_t k);

}  // namespace redei
