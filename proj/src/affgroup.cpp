#include "redei/affgroup.hpp"

#include <algorithm>

#include "redei/error.hpp"

namespace redei {

namespace {

void require_same_field(const AffSet& X, const AffSet& Y) {
  if (!(X.field() == Y.field())) throw Error(ErrorCode::SpecMismatch, "affine sets over different fields");
}

void require_symmetric(const AffSet& A) {
  if (!is_symmetric(A)) throw Error(ErrorCode::NotSymmetric, "set is not closed under inversion");
}

bool is_identity(const FieldSpec& field, const AffElement& g) {
  return g.a == field.one() && g.b == field.zero();
}

AffSet from_bitmap(const FieldSpec& field, const std::vector<bool>& bits) {
  const std::uint32_t q = field.q();
  std::vector<AffElement> elems;
  for (std::uint32_t a = 1; a < q; ++a) {
    for (std::uint32_t b = 0; b < q; ++b) {
      if (bits[std::size_t{a} * q + b]) elems.push_back({FieldElement{a}, FieldElement{b}});
    }
  }
  return AffSet(field, std::move(elems));
}

std::int64_t ipow(std::int64_t base, std::uint32_t exp) {
  std::int64_t r = 1;
  for (std::uint32_t i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

AffElement aff_identity(const FieldSpec& field) { return {field.one(), field.zero()}; }

AffElement aff_element(const FieldSpec& field, FieldElement a, FieldElement b) {
  if (!field.contains(a) || !field.contains(b)) throw Error(ErrorCode::CodeOutOfRange, "affine coordinate");
  if (a == field.zero()) throw Error(ErrorCode::ZeroScale, "affine element with a = 0");
  return {a, b};
}

AffElement aff_mul(const FieldSpec& field, const AffElement& g, const AffElement& h) {
  if (g.a == field.zero() || h.a == field.zero()) throw Error(ErrorCode::ZeroScale, "affine element with a = 0");
  return {field.mul(g.a, h.a), field.add(field.mul(g.a, h.b), g.b)};
}

AffElement aff_inv(const FieldSpec& field, const AffElement& g) {
  if (g.a == field.zero()) throw Error(ErrorCode::ZeroScale, "affine element with a = 0");
  const FieldElement ai = field.inv(g.a);
  return {ai, field.neg(field.mul(ai, g.b))};
}

FieldElement aff_act(const FieldSpec& field, const AffElement& g, FieldElement x) {
  if (g.a == field.zero()) throw Error(ErrorCode::ZeroScale, "affine element with a = 0");
  return field.add(field.mul(g.a, x), g.b);
}

AffSet::AffSet(FieldSpec field, std::vector<AffElement> elems)
    : field_(std::move(field)), elems_(std::move(elems)) {
  for (const AffElement& g : elems_) aff_element(field_, g.a, g.b);
  std::sort(elems_.begin(), elems_.end());
  if (std::adjacent_find(elems_.begin(), elems_.end()) != elems_.end()) {
    throw Error(ErrorCode::DuplicateElement, "duplicate affine element in set");
  }
}

bool AffSet::contains(const AffElement& g) const noexcept {
  return std::binary_search(elems_.begin(), elems_.end(), g);
}

AffSet whole_group(const FieldSpec& field) {
  std::vector<AffElement> elems;
  for (std::uint32_t a = 1; a < field.q(); ++a) {
    for (std::uint32_t b = 0; b < field.q(); ++b) elems.push_back({FieldElement{a}, FieldElement{b}});
  }
  return AffSet(field, std::move(elems));
}

AffSet stabilizer(const FieldSpec& field, FieldElement x) {
  std::vector<AffElement> elems;
  for (std::uint32_t a = 1; a < field.q(); ++a) {
    const FieldElement fa{a};
    elems.push_back({fa, field.mul(field.sub(field.one(), fa), x)});
  }
  return AffSet(field, std::move(elems));
}

AffSet unipotent(const FieldSpec& field) {
  std::vector<AffElement> elems;
  for (FieldElement b : field.elements()) elems.push_back({field.one(), b});
  return AffSet(field, std::move(elems));
}

AffSet inverse_set(const AffSet& A) {
  std::vector<AffElement> elems;
  elems.reserve(A.size());
  for (const AffElement& g : A.elems()) elems.push_back(aff_inv(A.field(), g));
  return AffSet(A.field(), std::move(elems));
}

bool is_symmetric(const AffSet& A) {
  return std::all_of(A.elems().begin(), A.elems().end(),
                     [&](const AffElement& g) { return A.contains(aff_inv(A.field(), g)); });
}

AffSet symmetrize(const AffSet& A) {
  std::vector<AffElement> elems(A.elems().begin(), A.elems().end());
  for (const AffElement& g : A.elems()) {
    const AffElement gi = aff_inv(A.field(), g);
    if (!A.contains(gi)) elems.push_back(gi);
  }
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return AffSet(A.field(), std::move(elems));
}

AffSet product_set(const AffSet& X, const AffSet& Y) {
  require_same_field(X, Y);
  const FieldSpec& field = X.field();
  std::vector<bool> bits(std::size_t{field.q()} * field.q(), false);
  for (const AffElement& x : X.elems()) {
    for (const AffElement& y : Y.elems()) bits[aff_index(field, aff_mul(field, x, y))] = true;
  }
  return from_bitmap(field, bits);
}

AffSet product_power(const AffSet& A, std::uint32_t k) {
  if (A.empty()) throw Error(ErrorCode::EmptySet, "product power of the empty set");
  if (k < 1) throw Error(ErrorCode::BadExponent, "product power needs k >= 1");
  const std::size_t group_order = std::size_t{A.field().q()} * (A.field().q() - 1);
  AffSet power = A;
  for (std::uint32_t i = 1; i < k; ++i) {
    // Once the whole group is reached every further power is the whole group.
    if (power.size() == group_order) break;
    power = product_set(power, A);
  }
  return power;
}

bool is_subset(const AffSet& X, const AffSet& Y) {
  require_same_field(X, Y);
  return std::includes(Y.elems().begin(), Y.elems().end(), X.elems().begin(), X.elems().end());
}

Rational tripling_constant(const AffSet& A) {
  if (A.empty()) throw Error(ErrorCode::EmptySet, "tripling constant of the empty set");
  require_symmetric(A);
  return Rational(static_cast<std::int64_t>(product_power(A, 3).size()), static_cast<std::int64_t>(A.size()));
}

std::vector<FieldElement> projection_pi(const AffSet& A) {
  std::vector<FieldElement> out;
  for (const AffElement& g : A.elems()) out.push_back(g.a);
  out.erase(std::unique(out.begin(), out.end()), out.end());  // elems sorted by a first
  return out;
}

Slope fiber_slope(const FieldSpec& field, const AffElement& g) {
  if (is_identity(field, g)) throw Error(ErrorCode::IdentityElement, "fiber slope of the identity");
  if (g.a == field.one()) return Slope::infinity();
  return Slope::finite(field.div(g.b, field.sub(g.a, field.one())));
}

AffSet conjugation_image(const AffSet& A, const AffElement& g) {
  const FieldSpec& field = A.field();
  if (is_identity(field, g)) throw Error(ErrorCode::IdentityElement, "conjugation by the identity");
  std::vector<bool> bits(std::size_t{field.q()} * field.q(), false);
  for (const AffElement& h : A.elems()) {
    bits[aff_index(field, aff_mul(field, aff_mul(field, h, g), aff_inv(field, h)))] = true;
  }
  return from_bitmap(field, bits);
}

PiBound pi_bound_check(const AffSet& A, const AffElement& g, std::uint32_t k) {
  require_symmetric(A);
  const FieldSpec& field = A.field();
  if (is_identity(field, g)) throw Error(ErrorCode::IdentityElement, "pi bound needs g != Id");
  if (!product_power(A, k).contains(g)) throw Error(ErrorCode::MembershipViolation, "g is not in A^k");
  PiBound out;
  out.pi_size = static_cast<std::int64_t>(projection_pi(A).size());
  out.rhs = Rational(static_cast<std::int64_t>(product_power(A, k + 3).size()),
                     static_cast<std::int64_t>(conjugation_image(A, g).size()));
  out.holds = Rational(out.pi_size) <= out.rhs;
  return out;
}

std::string_view to_string(SizeRegime regime) {
  switch (regime) {
    case SizeRegime::Small: return "small";
    case SizeRegime::Medium: return "medium";
    case SizeRegime::Large: return "large";
  }
  return "unknown";
}

SizeRegime size_regime(std::uint64_t size, std::uint64_t q) {
  if (size <= q) return SizeRegime::Small;
  // size >= (3 + 2 sqrt 2) q  <=>  size >= 3q + ceil(sqrt(8 q^2))
  const BigInt threshold = BigInt(3) * q + isqrt_ceil(BigInt(8) * q * q);
  return BigInt(size) >= threshold ? SizeRegime::Large : SizeRegime::Medium;
}

ClassificationReport classify(const AffSet& A) {
  if (A.size() <= 1) throw Error(ErrorCode::TooSmall, "classification needs |A| > 1");
  require_symmetric(A);
  const FieldSpec& field = A.field();
  const std::uint32_t q = field.q();

  ClassificationReport report;
  report.size = A.size();
  report.regime = size_regime(A.size(), q);
  report.tripling_c = tripling_constant(A);
  const Rational& C = report.tripling_c;
  const auto pi_size = static_cast<std::int64_t>(projection_pi(A).size());

  for (FieldElement x : field.elements()) {
    const bool fixes = std::all_of(A.elems().begin(), A.elems().end(),
                                   [&](const AffElement& g) { return aff_act(field, g, x) == x; });
    if (fixes) {
      report.case_a = x;
      break;
    }
  }

  const Rational c4 = C * C * C * C;
  if (report.regime == SizeRegime::Small) {
    CaseBRecord rec;
    rec.pi_size = pi_size;
    rec.bound = Rational(ipow(field.p(), field.e() / 2) + 2) * c4;
    rec.sqrt2_coeff = 0;
    rec.holds = Rational(pi_size) < rec.bound;
    report.case_b = rec;
  } else if (report.regime == SizeRegime::Medium) {
    CaseBRecord rec;
    rec.pi_size = pi_size;
    rec.bound = 4 * c4;
    rec.sqrt2_coeff = 2 * c4;
    // pi < 4K + 2 sqrt(2) K  <=>  pi - 4K < 0  or  (pi - 4K)^2 < 8 K^2
    const Rational gap = Rational(pi_size) - rec.bound;
    rec.holds = gap < 0 || gap * gap < 8 * c4 * c4;
    report.case_b = rec;
  } else {
    CaseCRecord rec;
    rec.pi_size = pi_size;
    rec.bound = Rational(2, static_cast<std::int64_t>(q)) * C * C * C * static_cast<std::int64_t>(A.size());
    rec.holds = Rational(pi_size) < rec.bound;
    rec.u_covered = is_subset(unipotent(field), product_power(A, 8));
    report.case_c = rec;
  }

  report.disjunction_holds = report.case_a.has_value() || (report.case_b && report.case_b->holds) ||
                             (report.case_c && report.case_c->holds && report.case_c->u_covered);
  return report;
}

}  // namespace redei
