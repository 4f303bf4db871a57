#pragma once

// Point sets in F_q^2, the directions they determine, and the Redei
// polynomial machinery that bounds the number of directions.

#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "redei/ff.hpp"
#include "redei/poly.hpp"
#include "redei/rational.hpp"

namespace redei {

/// A direction: a finite slope in F_q or the vertical direction INF.
/// Finite slopes order by code, INF last.
class Slope {
 public:
  static constexpr Slope infinity() noexcept { return Slope(kInfRaw); }
  static constexpr Slope finite(FieldElement y) noexcept { return Slope(y.code); }

  constexpr bool is_infinite() const noexcept { return raw_ == kInfRaw; }
  constexpr FieldElement value() const noexcept { return FieldElement{raw_}; }

  friend constexpr auto operator<=>(Slope, Slope) = default;

 private:
  static constexpr std::uint32_t kInfRaw = std::numeric_limits<std::uint32_t>::max();
  constexpr explicit Slope(std::uint32_t raw) : raw_(raw) {}
  std::uint32_t raw_;
};

struct Point {
  FieldElement a;
  FieldElement b;

  friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

/// Slope of the line through two distinct points.
Slope slope_between(const FieldSpec& field, const Point& u, const Point& v);

/// A finite set of points of F_q^2, kept sorted. Duplicates are rejected.
class PlanePointSet {
 public:
  PlanePointSet(FieldSpec field, std::vector<Point> points);

  const FieldSpec& field() const noexcept { return field_; }
  std::span<const Point> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool contains(const Point& pt) const noexcept;

 private:
  FieldSpec field_;
  std::vector<Point> points_;
};

struct SlopeDecomposition {
  Slope y;
  Polynomial H;
  Polynomial f;
  Polynomial g;
  std::optional<std::uint32_t> l1;
  std::uint32_t l2 = 0;
  Polynomial fully_reducible;  // linear-factor part of x^q + g
  Polynomial nonlinear;        // x^q + g divided by the linear-factor part
  Polynomial reduced_g;        // reduced_g^{p^l2} == g
};

struct DirectionReport {
  std::vector<Slope> directions;  // sorted
  std::int64_t n = 0;             // q - |A|
  bool collinear = false;
  std::map<Slope, SlopeDecomposition> per_slope;

  bool spans(Slope s) const;
};

/// Brute force over all pairs. Throws TooFewPoints when |A| < 2.
DirectionReport direction_set(const PlanePointSet& A);

/// direction_set plus per-slope decompositions for every finite direction,
/// filled only when 2 <= |A| <= q, INF is spanned and A is not collinear.
DirectionReport direction_report(const PlanePointSet& A);

/// True iff A (with |A| > q) spans all q + 1 directions. Throws PreconditionSize.
bool spans_all_check(const PlanePointSet& A);

struct NormalizedSet {
  PlanePointSet set;
  Slope d_used;
};

/// Shear (a, b) -> (a - b / d, b) with the smallest nonzero direction d, which
/// turns the secants of slope d vertical; identity when INF is already spanned.
/// d_used is the direction that was made vertical.
NormalizedSet normalize_infinity(const PlanePointSet& A);

/// H_y(x) = prod (x + y a_i - b_i). Throws EmptySet.
Polynomial redei_polynomial(const PlanePointSet& A, FieldElement y);

struct ComplementRemainder {
  Polynomial f;  // quotient of x^q by H_y
  Polynomial g;  // H_y f_y = x^q + g_y
};

/// Throws SizeOutOfRange unless 2 <= |A| <= q.
ComplementRemainder complement_and_remainder(const PlanePointSet& A, FieldElement y);

/// Requires INF in D(A) and y in D(A).
SlopeDecomposition slope_decomposition(const PlanePointSet& A, FieldElement y);

struct DirectionBounds {
  std::int64_t direction_count = 0;
  std::int64_t lower = 0;
  /// Floor of the upper bound; nullopt when l1 == 0 (trivial upper bound).
  std::optional<std::int64_t> upper;
  std::uint32_t l1 = 0;
  std::uint32_t l2 = 0;
  Slope chosen_slope = Slope::infinity();  // slope of the normalized set realizing l1
};

/// Lower and upper bounds on |D| from the slope minimizing l1. Throws
/// DegenerateDirectionCount when |D| is 1 or q + 1.
DirectionBounds direction_bounds(const PlanePointSet& A);

struct MaindirVerdict {
  std::int64_t direction_count = 0;
  Rational threshold;  // |A|/sqrt(q) (e even) or |A|/(p^{(e-1)/2} + 1) (e odd)
  bool holds = true;
  bool exempt = false;  // collinear sets are outside the statement
};

/// |D| > threshold, compared exactly. Throws SizeOutOfRange unless 1 < |A| <= q.
MaindirVerdict maindir_check(const PlanePointSet& A);

/// Finite slopes y for which x + y a - b divides f_y, for pt = (a, b) in A.
std::vector<FieldElement> ghost_slopes(const PlanePointSet& A, const Point& pt);

/// Number of lines of slope y meeting A (distinct roots of H_y).
std::int64_t lines_meeting(const PlanePointSet& A, FieldElement y);

}  // namespace redei
