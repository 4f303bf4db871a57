#include "redei/bounds.hpp"

#include <algorithm>

#include "redei/error.hpp"

namespace redei {

bool on_line(const FieldSpec& field, const AffineLine& line, const Point& pt) {
  if (line.vertical) return pt.a == line.intercept;
  return pt.b == field.add(field.mul(line.slope, pt.a), line.intercept);
}

std::vector<AffineLine> enumerate_lines(const FieldSpec& field) {
  std::vector<AffineLine> lines;
  lines.reserve(std::size_t{field.q()} * field.q() + field.q());
  for (FieldElement s : field.elements()) {
    for (FieldElement c : field.elements()) lines.push_back({false, s, c});
  }
  for (FieldElement c : field.elements()) lines.push_back({true, field.zero(), c});
  return lines;
}

std::size_t line_index(const FieldSpec& field, const AffineLine& line) noexcept {
  const std::size_t q = field.q();
  if (line.vertical) return q * q + line.intercept.code;
  return std::size_t{line.slope.code} * q + line.intercept.code;
}

IncidenceResult incidence_count(const FieldSpec& field, std::span<const Point> P, std::span<const AffineLine> L) {
  const std::uint32_t q = field.q();
  std::vector<bool> in_p(std::size_t{q} * q, false);
  for (const Point& pt : P) in_p[std::size_t{pt.a.code} * q + pt.b.code] = true;

  IncidenceResult r;
  for (const AffineLine& line : L) {
    for (FieldElement x : field.elements()) {
      const Point pt = line.vertical ? Point{line.intercept, x}
                                     : Point{x, field.add(field.mul(line.slope, x), line.intercept)};
      if (in_p[std::size_t{pt.a.code} * q + pt.b.code]) ++r.count;
    }
  }
  const BigInt pl = BigInt(static_cast<std::int64_t>(P.size())) * static_cast<std::int64_t>(L.size());
  r.expectation = Rational(pl) / q;
  const BigInt dev = BigInt(q) * r.count - pl;
  r.deviation_sq = dev * dev;
  r.bound_sq = BigInt(q) * q * q * pl;
  return r;
}

VinhVerdict vinh_check(const FieldSpec& field, std::span<const Point> P, std::span<const AffineLine> L) {
  VinhVerdict v;
  v.result = incidence_count(field, P, L);
  v.holds = v.result.deviation_sq <= v.result.bound_sq;
  return v;
}

std::vector<AffineLine> undetermined_lines(const PlanePointSet& A) {
  const FieldSpec& field = A.field();
  std::vector<AffineLine> out;
  for (const AffineLine& line : enumerate_lines(field)) {
    int hits = 0;
    for (const Point& pt : A.points()) {
      if (on_line(field, line, pt) && ++hits > 1) break;
    }
    if (hits <= 1) out.push_back(line);
  }
  return out;
}

std::vector<FieldElement> sumset(const FieldSpec& field, std::span<const FieldElement> A,
                                 std::span<const FieldElement> B) {
  std::vector<bool> hit(field.q(), false);
  for (FieldElement a : A) {
    for (FieldElement b : B) hit[field.add(a, b).code] = true;
  }
  std::vector<FieldElement> out;
  for (std::uint32_t c = 0; c < field.q(); ++c) {
    if (hit[c]) out.push_back(FieldElement{c});
  }
  return out;
}

std::vector<FieldElement> stabilizer_subgroup(const FieldSpec& field, std::span<const FieldElement> S) {
  std::vector<bool> in_s(field.q(), false);
  for (FieldElement s : S) in_s[s.code] = true;
  std::vector<FieldElement> out;
  for (FieldElement h : field.elements()) {
    const bool stable = std::all_of(S.begin(), S.end(), [&](FieldElement s) { return in_s[field.add(s, h).code]; });
    if (stable) out.push_back(h);
  }
  return out;
}

KneserVerdict kneser_check(const FieldSpec& field, std::span<const FieldElement> A, std::span<const FieldElement> B) {
  if (A.empty() || B.empty()) throw Error(ErrorCode::EmptySet, "Kneser check needs nonempty sets");
  KneserVerdict v;
  const auto sum = sumset(field, A, B);
  v.sumset_size = static_cast<std::int64_t>(sum.size());
  v.h_size = static_cast<std::int64_t>(stabilizer_subgroup(field, sum).size());
  const std::int64_t rhs = std::min<std::int64_t>(
      field.q(), static_cast<std::int64_t>(A.size()) + static_cast<std::int64_t>(B.size()) - v.h_size);
  v.holds = v.sumset_size >= rhs;
  return v;
}

RuzsaVerdict ruzsa_check(const AffSet& A, std::uint32_t k) {
  if (k < 4) throw Error(ErrorCode::BadExponent, "Ruzsa inequality is stated for k >= 4");
  RuzsaVerdict v;
  v.c = tripling_constant(A);
  v.power_size = static_cast<std::int64_t>(product_power(A, k).size());
  Rational bound = static_cast<std::int64_t>(A.size());
  for (std::uint32_t i = 0; i < k - 2; ++i) bound *= v.c;
  v.bound = bound;
  v.holds = Rational(v.power_size) <= v.bound;
  return v;
}

}  // namespace redei
