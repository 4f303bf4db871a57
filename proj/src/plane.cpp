#include "redei/plane.hpp"

#include <algorithm>

#include "redei/error.hpp"

namespace redei {

namespace {

std::int64_t ipow(std::int64_t base, std::uint32_t exp) {
  std::int64_t r = 1;
  for (std::uint32_t i = 0; i < exp; ++i) r *= base;
  return r;
}

// x^q + g == H f over the field.
Polynomial x_to_q(const FieldSpec& field) { return Polynomial::monomial(field, field.one(), field.q()); }

void require_size_at_most_q(const PlanePointSet& A) {
  if (A.size() < 2 || A.size() > A.field().q()) {
    throw Error(ErrorCode::SizeOutOfRange, "requires 2 <= |A| <= q, got |A| = " + std::to_string(A.size()));
  }
}

}  // namespace

Slope slope_between(const FieldSpec& field, const Point& u, const Point& v) {
  if (u.a == v.a) return Slope::infinity();
  return Slope::finite(field.div(field.sub(v.b, u.b), field.sub(v.a, u.a)));
}

PlanePointSet::PlanePointSet(FieldSpec field, std::vector<Point> points)
    : field_(std::move(field)), points_(std::move(points)) {
  for (const Point& pt : points_) {
    if (!field_.contains(pt.a) || !field_.contains(pt.b)) {
      throw Error(ErrorCode::CodeOutOfRange, "point coordinate outside the field");
    }
  }
  std::sort(points_.begin(), points_.end());
  if (std::adjacent_find(points_.begin(), points_.end()) != points_.end()) {
    throw Error(ErrorCode::DuplicateElement, "duplicate point in set");
  }
}

bool PlanePointSet::contains(const Point& pt) const noexcept {
  return std::binary_search(points_.begin(), points_.end(), pt);
}

bool DirectionReport::spans(Slope s) const { return std::binary_search(directions.begin(), directions.end(), s); }

DirectionReport direction_set(const PlanePointSet& A) {
  if (A.size() < 2) throw Error(ErrorCode::TooFewPoints, "directions need at least two points");
  const FieldSpec& field = A.field();
  const std::uint32_t q = field.q();
  std::vector<bool> seen(std::size_t{q} + 1, false);
  const auto pts = A.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const Slope s = slope_between(field, pts[i], pts[j]);
      seen[s.is_infinite() ? q : s.value().code] = true;
    }
  }
  DirectionReport report;
  for (std::uint32_t c = 0; c < q; ++c) {
    if (seen[c]) report.directions.push_back(Slope::finite(FieldElement{c}));
  }
  if (seen[q]) report.directions.push_back(Slope::infinity());
  report.n = static_cast<std::int64_t>(q) - static_cast<std::int64_t>(A.size());
  report.collinear = report.directions.size() == 1;
  return report;
}

DirectionReport direction_report(const PlanePointSet& A) {
  DirectionReport report = direction_set(A);
  if (A.size() > A.field().q() || report.collinear || !report.spans(Slope::infinity())) return report;
  for (Slope s : report.directions) {
    if (s.is_infinite()) continue;
    report.per_slope.emplace(s, slope_decomposition(A, s.value()));
  }
  return report;
}

bool spans_all_check(const PlanePointSet& A) {
  const std::uint32_t q = A.field().q();
  if (A.size() <= q) {
    throw Error(ErrorCode::PreconditionSize, "spans_all_check requires |A| > q");
  }
  return direction_set(A).directions.size() == std::size_t{q} + 1;
}

NormalizedSet normalize_infinity(const PlanePointSet& A) {
  const DirectionReport report = direction_set(A);
  if (report.spans(Slope::infinity())) return {A, Slope::infinity()};
  const FieldSpec& field = A.field();
  const auto it = std::find_if(report.directions.begin(), report.directions.end(),
                               [&](Slope s) { return s.value() != field.zero(); });
  if (it == report.directions.end()) {
    throw Error(ErrorCode::OnlyZeroDirection, "set is contained in a horizontal line");
  }
  // Secants of slope s become vertical under (a, b) -> (a - b / s, b).
  const FieldElement shear = field.inv(it->value());
  std::vector<Point> moved;
  moved.reserve(A.size());
  for (const Point& pt : A.points()) moved.push_back({field.sub(pt.a, field.mul(shear, pt.b)), pt.b});
  return {PlanePointSet(field, std::move(moved)), *it};
}

Polynomial redei_polynomial(const PlanePointSet& A, FieldElement y) {
  if (A.size() == 0) throw Error(ErrorCode::EmptySet, "Redei polynomial of the empty set");
  const FieldSpec& field = A.field();
  std::vector<FieldElement> roots;
  roots.reserve(A.size());
  for (const Point& pt : A.points()) roots.push_back(field.sub(pt.b, field.mul(y, pt.a)));
  return from_roots(field, roots);
}

ComplementRemainder complement_and_remainder(const PlanePointSet& A, FieldElement y) {
  require_size_at_most_q(A);
  const Polynomial H = redei_polynomial(A, y);
  auto [f, r] = quotient_rem(x_to_q(A.field()), H);
  return {std::move(f), -r};
}

SlopeDecomposition slope_decomposition(const PlanePointSet& A, FieldElement y) {
  require_size_at_most_q(A);
  const FieldSpec& field = A.field();
  const DirectionReport report = direction_set(A);
  if (!report.spans(Slope::infinity())) {
    throw Error(ErrorCode::InfinityNotSpanned, "normalize the set so that the vertical direction is spanned");
  }
  if (!report.spans(Slope::finite(y))) {
    throw Error(ErrorCode::SlopeNotDetermined, "slope " + std::to_string(y.code) + " is not a direction of the set");
  }

  Polynomial H = redei_polynomial(A, y);
  auto [f, r] = quotient_rem(x_to_q(field), H);
  Polynomial g = -r;
  if (g.is_zero()) throw Error(ErrorCode::AllOnOneLine, "x^q + g is a pure q-th power");

  const Polynomial lacunary = x_to_q(field) + g;
  LinearSplit split = linear_split(lacunary);
  if (split.l1 && *split.l1 >= field.e()) {
    throw Error(ErrorCode::AllOnOneLine, "x^q + g is a q-th power of a linear polynomial");
  }
  PthContent content = pth_content(g);
  if (split.l1 && content.l > *split.l1) {
    throw Error(ErrorCode::TheoremViolation, "l2 exceeds l1 at slope " + std::to_string(y.code));
  }
  return SlopeDecomposition{Slope::finite(y),
                            std::move(H),
                            std::move(f),
                            std::move(g),
                            split.l1,
                            content.l,
                            std::move(split.fully_reducible),
                            std::move(split.nonlinear),
                            std::move(content.reduced)};
}

DirectionBounds direction_bounds(const PlanePointSet& A) {
  require_size_at_most_q(A);
  const FieldSpec& field = A.field();
  const std::int64_t q = field.q();
  const std::int64_t p = field.p();
  const std::int64_t size = static_cast<std::int64_t>(A.size());

  const NormalizedSet norm = normalize_infinity(A);
  const DirectionReport report = direction_set(norm.set);
  const auto count = static_cast<std::int64_t>(report.directions.size());
  if (count == 1 || count == q + 1) {
    throw Error(ErrorCode::DegenerateDirectionCount, "|D| = " + std::to_string(count));
  }

  DirectionBounds out;
  out.direction_count = count;
  bool found = false;
  for (Slope s : report.directions) {
    if (s.is_infinite()) continue;
    const SlopeDecomposition dec = slope_decomposition(norm.set, s.value());
    // y in D forces a repeated root in H_y, so a linear factor always exists.
    const std::uint32_t l1 = dec.l1.value_or(0);
    if (!found || l1 < out.l1) {
      found = true;
      out.l1 = l1;
      out.l2 = dec.l2;
      out.chosen_slope = s;
    }
  }

  const std::int64_t ps2 = ipow(p, out.l2);
  out.lower = static_cast<std::int64_t>(ceil(Rational(size - 1, ps2 + 1))) + 2;

  if (out.l1 > 0) {
    const std::int64_t ps1 = ipow(p, out.l1);
    const std::int64_t n = q - size;
    const Rational inner(size - 1 - n * std::max<std::int64_t>(0, size + ps1 - q - 1), ps1 - 1);
    const Rational bound = Rational(n) + std::max(Rational(1), inner);
    out.upper = static_cast<std::int64_t>(floor(bound));
  }
  return out;
}

MaindirVerdict maindir_check(const PlanePointSet& A) {
  const FieldSpec& field = A.field();
  if (A.size() < 2 || A.size() > field.q()) {
    throw Error(ErrorCode::SizeOutOfRange, "requires 1 < |A| <= q, got |A| = " + std::to_string(A.size()));
  }
  const DirectionReport report = direction_set(A);
  MaindirVerdict v;
  v.direction_count = static_cast<std::int64_t>(report.directions.size());
  const std::int64_t size = static_cast<std::int64_t>(A.size());
  const std::uint32_t e = field.e();
  if (e % 2 == 0) {
    v.threshold = Rational(size, ipow(field.p(), e / 2));
    // |D| > |A|/sqrt(q)  <=>  |D|^2 q > |A|^2
    v.holds = BigInt(v.direction_count) * v.direction_count * field.q() > BigInt(size) * size;
  } else {
    const std::int64_t den = ipow(field.p(), (e - 1) / 2) + 1;
    v.threshold = Rational(size, den);
    v.holds = v.direction_count * den > size;
  }
  v.exempt = report.collinear;
  return v;
}

std::vector<FieldElement> ghost_slopes(const PlanePointSet& A, const Point& pt) {
  require_size_at_most_q(A);
  if (!A.contains(pt)) throw Error(ErrorCode::PointNotInSet, "point is not in the set");
  const FieldSpec& field = A.field();
  if (direction_set(A).directions.size() == std::size_t{field.q()} + 1) {
    throw Error(ErrorCode::AllDirectionsSpanned, "ghost slopes need |D| < q + 1");
  }
  std::vector<FieldElement> out;
  for (FieldElement y : field.elements()) {
    const auto [f, g] = complement_and_remainder(A, y);
    // x + y a - b divides f iff f vanishes at b - y a.
    if (f.evaluate(field.sub(pt.b, field.mul(y, pt.a))) == field.zero()) out.push_back(y);
  }
  return out;
}

std::int64_t lines_meeting(const PlanePointSet& A, FieldElement y) {
  if (A.size() == 0) throw Error(ErrorCode::EmptySet, "lines_meeting of the empty set");
  const FieldSpec& field = A.field();
  std::vector<bool> hit(field.q(), false);
  std::int64_t count = 0;
  for (const Point& pt : A.points()) {
    const FieldElement root = field.sub(pt.b, field.mul(y, pt.a));
    if (!hit[root.code]) {
      hit[root.code] = true;
      ++count;
    }
  }
  return count;
}

}  // namespace redei
