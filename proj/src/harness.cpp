#include "redei/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "redei/bounds.hpp"
#include "redei/error.hpp"

namespace redei {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
// Rejection sampling gives up after this many draws inside one trial.
constexpr int kMaxAttempts = 1000;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) noexcept { return a > kSaturated - b ? kSaturated : a + b; }

std::uint64_t sat_pow2(std::uint64_t m) noexcept { return m >= 64 ? kSaturated : (std::uint64_t{1} << m); }

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::size_t group_order(const FieldSpec& field) { return std::size_t{field.q()} * (field.q() - 1); }

Witness to_witness(const PlanePointSet& A) {
  Witness w;
  for (const Point& pt : A.points()) w.emplace_back(pt.a.code, pt.b.code);
  return w;
}

// ---------------------------------------------------------------------------
// Per-chunk results and their order-preserving merge.

struct Accumulator {
  std::uint64_t checked = 0;
  std::uint64_t skipped = 0;
  std::vector<Violation> violations;
  std::map<std::uint64_t, ExtremalEntry> extremal;

  void violate(std::uint64_t index, std::uint64_t size, std::string expected, std::string observed,
               std::string input) {
    violations.push_back({index, size, std::move(expected), std::move(observed), std::move(input)});
  }

  void note_extremal(const PlanePointSet& A, std::int64_t directions) {
    auto [it, inserted] = extremal.try_emplace(A.size());
    ExtremalEntry& entry = it->second;
    if (inserted || directions < entry.min_directions) {
      entry.size = A.size();
      entry.min_directions = directions;
      entry.witnesses.clear();
    }
    if (directions == entry.min_directions && entry.witnesses.size() < kMaxWitnesses) {
      entry.witnesses.push_back(to_witness(A));
    }
  }

  // `later` covers indices after everything already merged.
  void merge(Accumulator&& later) {
    checked += later.checked;
    skipped += later.skipped;
    for (auto& v : later.violations) violations.push_back(std::move(v));
    for (auto& [size, entry] : later.extremal) {
      auto [it, inserted] = extremal.try_emplace(size, entry);
      if (inserted) continue;
      ExtremalEntry& mine = it->second;
      if (entry.min_directions < mine.min_directions) {
        mine = std::move(entry);
      } else if (entry.min_directions == mine.min_directions) {
        for (auto& w : entry.witnesses) {
          if (mine.witnesses.size() >= kMaxWitnesses) break;
          mine.witnesses.push_back(std::move(w));
        }
      }
    }
  }
};

using RangeVisitor = std::function<void(std::uint64_t begin, std::uint64_t end, Accumulator& acc)>;

Accumulator run_parallel(std::uint64_t begin, std::uint64_t end, unsigned jobs, const RangeVisitor& visit) {
  const std::uint64_t total = end > begin ? end - begin : 0;
  const unsigned workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(jobs, total)));
  std::vector<Accumulator> parts(workers);
  if (workers == 1) {
    visit(begin, end, parts[0]);
    return std::move(parts[0]);
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t lo = begin + total * w / workers;
      const std::uint64_t hi = begin + total * (w + 1) / workers;
      threads.emplace_back([&, w, lo, hi] {
        try {
          visit(lo, hi, parts[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  Accumulator out = std::move(parts[0]);
  for (unsigned w = 1; w < workers; ++w) out.merge(std::move(parts[w]));
  return out;
}

// ---------------------------------------------------------------------------
// Index spaces for exhaustive enumeration.

// k-subsets of the q^2 plane points for k in the size range, sizes ascending,
// lexicographic within a size.
struct PlaneSpace {
  std::uint32_t points = 0;
  std::vector<std::uint64_t> sizes;
  std::vector<std::uint64_t> offsets;  // offsets[i] = first index of sizes[i]
  std::uint64_t total = 0;

  PlaneSpace(const FieldSpec& field, SizeRange range) : points(field.q() * field.q()) {
    for (std::uint64_t s = range.lo; s <= range.hi && s <= points; ++s) {
      sizes.push_back(s);
      offsets.push_back(total);
      total = sat_add(total, binomial(points, s));
    }
  }

  template <class Fn>
  void visit(std::uint64_t begin, std::uint64_t end, Fn&& fn) const {
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      const std::uint64_t seg_begin = offsets[i];
      const std::uint64_t seg_end = i + 1 < sizes.size() ? offsets[i + 1] : total;
      const std::uint64_t lo = std::max(begin, seg_begin);
      const std::uint64_t hi = std::min(end, seg_end);
      if (lo >= hi) continue;
      auto combo = unrank_combination(points, static_cast<std::uint32_t>(sizes[i]), lo - seg_begin);
      for (std::uint64_t idx = lo; idx < hi; ++idx) {
        fn(idx, combo);
        next_combination(combo, points);
      }
    }
  }
};

PlanePointSet plane_set_from(const FieldSpec& field, const std::vector<std::uint32_t>& combo) {
  const std::uint32_t q = field.q();
  std::vector<Point> pts;
  pts.reserve(combo.size());
  for (std::uint32_t c : combo) pts.push_back({FieldElement{c / q}, FieldElement{c % q}});
  return PlanePointSet(field, std::move(pts));
}

// Symmetric subsets of Aff(F_q) as unions of inversion orbits {g, g^{-1}}.
struct OrbitSpace {
  std::vector<std::vector<AffElement>> orbits;
  std::uint64_t total = 0;  // nonempty unions

  explicit OrbitSpace(const FieldSpec& field) {
    const AffSet group = whole_group(field);
    std::vector<bool> seen(std::size_t{field.q()} * field.q(), false);
    for (const AffElement& g : group.elems()) {
      if (seen[aff_index(field, g)]) continue;
      const AffElement gi = aff_inv(field, g);
      seen[aff_index(field, g)] = true;
      seen[aff_index(field, gi)] = true;
      orbits.push_back(g == gi ? std::vector<AffElement>{g} : std::vector<AffElement>{g, gi});
    }
    total = orbits.size() >= 64 ? kSaturated : sat_pow2(orbits.size()) - 1;
  }

  AffSet set_at(const FieldSpec& field, std::uint64_t index) const {
    const std::uint64_t mask = index + 1;
    std::vector<AffElement> elems;
    for (std::size_t i = 0; i < orbits.size(); ++i) {
      if (mask >> i & 1) elems.insert(elems.end(), orbits[i].begin(), orbits[i].end());
    }
    return AffSet(field, std::move(elems));
  }

  std::uint64_t size_at(std::uint64_t index) const {
    const std::uint64_t mask = index + 1;
    std::uint64_t size = 0;
    for (std::size_t i = 0; i < orbits.size(); ++i) {
      if (mask >> i & 1) size += orbits[i].size();
    }
    return size;
  }
};

bool in_range(std::uint64_t size, SizeRange r) { return size >= r.lo && size <= r.hi; }

std::vector<FieldElement> mask_to_elements(std::uint64_t mask, std::uint32_t q) {
  std::vector<FieldElement> out;
  for (std::uint32_t i = 0; i < q; ++i) {
    if (mask >> i & 1) out.push_back(FieldElement{i});
  }
  return out;
}

std::string codes_text(const std::vector<FieldElement>& xs) {
  std::string out;
  for (FieldElement x : xs) {
    if (!out.empty()) out += ' ';
    out += std::to_string(x.code);
  }
  return out;
}

std::string line_text(const AffineLine& line) {
  return (line.vertical ? "v " : std::to_string(line.slope.code) + " ") + std::to_string(line.intercept.code);
}

// ---------------------------------------------------------------------------
// Checkers. Each consumes one candidate and records its outcome.

void check_szonyi(std::uint64_t index, const PlanePointSet& A, Accumulator& acc) {
  const DirectionReport D = direction_set(A);
  if (D.collinear) {
    ++acc.skipped;
    return;
  }
  ++acc.checked;
  const auto count = static_cast<std::int64_t>(D.directions.size());
  acc.note_extremal(A, count);
  const auto size = static_cast<std::int64_t>(A.size());
  if (2 * count < size + 3) {
    acc.violate(index, A.size(), "2|D| >= |A| + 3 = " + std::to_string(size + 3),
                "|D| = " + std::to_string(count), format_point_set(A));
  }
}

void check_maindir(std::uint64_t index, const PlanePointSet& A, Accumulator& acc) {
  const MaindirVerdict v = maindir_check(A);
  if (v.exempt) {
    ++acc.skipped;
    return;
  }
  ++acc.checked;
  acc.note_extremal(A, v.direction_count);
  if (!v.holds) {
    acc.violate(index, A.size(), "|D| > " + to_string(v.threshold), "|D| = " + std::to_string(v.direction_count),
                format_point_set(A));
  }
}

void check_qbounds(std::uint64_t index, const PlanePointSet& A, Accumulator& acc) {
  const FieldSpec& field = A.field();
  const DirectionReport D = direction_set(A);
  if (D.collinear) {
    ++acc.skipped;
    return;
  }
  ++acc.checked;
  const auto count = static_cast<std::int64_t>(D.directions.size());
  acc.note_extremal(A, count);

  const Polynomial xq = Polynomial::monomial(field, field.one(), field.q());
  const Polynomial minus_x = -Polynomial::identity(field);
  auto fail = [&](std::string expected, std::string observed) {
    acc.violate(index, A.size(), std::move(expected), std::move(observed), format_point_set(A));
  };

  for (FieldElement y : field.elements()) {
    const Polynomial H = redei_polynomial(A, y);
    const ComplementRemainder cr = complement_and_remainder(A, y);
    if (!(H * cr.f == xq + cr.g)) {
      fail("H_y f_y = x^q + g_y", "identity fails at y = " + std::to_string(y.code));
      return;
    }
    const bool in_d = D.spans(Slope::finite(y));
    if (in_d == (cr.g == minus_x)) {
      fail("g_y = -x iff y not in D", "y = " + std::to_string(y.code) + " in_D = " + (in_d ? "true" : "false") +
                                          " g = [" + format_polynomial(cr.g) + "]");
      return;
    }
  }

  const NormalizedSet norm = normalize_infinity(A);
  for (FieldElement y : field.elements()) {
    const ComplementRemainder cr = complement_and_remainder(norm.set, y);
    if (cr.g.degree() > count - 1) {
      fail("deg g_y <= |D| - 1 = " + std::to_string(count - 1),
           "deg g_y = " + std::to_string(cr.g.degree()) + " at y = " + std::to_string(y.code) + " after normalization");
      return;
    }
  }

  if (count == static_cast<std::int64_t>(field.q()) + 1) return;
  try {
    const DirectionBounds b = direction_bounds(A);
    if (b.lower > count || (b.upper && count > *b.upper)) {
      fail("lower <= |D| <= upper", "lower = " + std::to_string(b.lower) + " |D| = " + std::to_string(count) +
                                        " upper = " + (b.upper ? std::to_string(*b.upper) : "trivial"));
    }
  } catch (const Error& err) {
    if (err.code() != ErrorCode::TheoremViolation && err.code() != ErrorCode::AllOnOneLine) throw;
    fail("0 <= l2 <= l1 < e", err.what());
  }
}

void check_moreq(std::uint64_t index, const PlanePointSet& A, Accumulator& acc) {
  ++acc.checked;
  if (!spans_all_check(A)) {
    acc.violate(index, A.size(), "|D| = q + 1 = " + std::to_string(A.field().q() + 1),
                "|D| = " + std::to_string(direction_set(A).directions.size()), format_point_set(A));
  }
}

void check_ghost(std::uint64_t index, const PlanePointSet& A, const Point& pt, Accumulator& acc) {
  ++acc.checked;
  const auto ghosts = ghost_slopes(A, pt);
  const std::int64_t n = static_cast<std::int64_t>(A.field().q()) - static_cast<std::int64_t>(A.size());
  if (static_cast<std::int64_t>(ghosts.size()) > n) {
    acc.violate(index, A.size(), "|ghost slopes| <= n = " + std::to_string(n),
                "|ghost slopes| = " + std::to_string(ghosts.size()) + " at (" + std::to_string(pt.a.code) + "," +
                    std::to_string(pt.b.code) + ")",
                format_point_set(A) + "# point: " + std::to_string(pt.a.code) + " " + std::to_string(pt.b.code) +
                    "\n");
  }
}

void check_vinh(std::uint64_t index, const PlanePointSet& P, const std::vector<AffineLine>& L, std::string_view label,
                Accumulator& acc) {
  ++acc.checked;
  const VinhVerdict v = vinh_check(P.field(), P.points(), L);
  if (!v.holds) {
    std::string input = format_point_set(P) + "# lines (" + std::string(label) + "):";
    for (const AffineLine& line : L) input += " [" + line_text(line) + "]";
    input += "\n";
    acc.violate(index, P.size(), "(qI - |P||L|)^2 <= " + v.result.bound_sq.str(),
                "I = " + std::to_string(v.result.count) + " deviation^2 = " + v.result.deviation_sq.str(),
                std::move(input));
  }
}

void check_kneser(std::uint64_t index, const FieldSpec& field, const std::vector<FieldElement>& A,
                  const std::vector<FieldElement>& B, Accumulator& acc) {
  ++acc.checked;
  const KneserVerdict v = kneser_check(field, A, B);
  if (!v.holds) {
    const std::int64_t rhs = std::min<std::int64_t>(field.q(), static_cast<std::int64_t>(A.size() + B.size()) - v.h_size);
    acc.violate(index, A.size() + B.size(), "|A+B| >= " + std::to_string(rhs),
                "|A+B| = " + std::to_string(v.sumset_size) + " |H| = " + std::to_string(v.h_size),
                field_header(field) + "\n# A: " + codes_text(A) + "\n# B: " + codes_text(B) + "\n");
  }
}

void check_classify(std::uint64_t index, const AffSet& A, Accumulator& acc) {
  ++acc.checked;
  const ClassificationReport r = classify(A);
  if (!r.disjunction_holds) {
    acc.violate(index, A.size(), "one of cases (a), (b), (c) holds",
                classification_json(A, r).dump(), format_aff_set(A));
  }
}

void check_ruzsa(std::uint64_t index, const AffSet& A, Accumulator& acc) {
  for (std::uint32_t k = 4; k <= 6; ++k) {
    ++acc.checked;
    const RuzsaVerdict v = ruzsa_check(A, k);
    if (!v.holds) {
      acc.violate(index, A.size(), "|A^" + std::to_string(k) + "| <= " + to_string(v.bound),
                  "|A^" + std::to_string(k) + "| = " + std::to_string(v.power_size), format_aff_set(A));
    }
  }
}

void check_pi_bound(std::uint64_t index, const AffSet& A, const AffElement& g, std::uint32_t k, Accumulator& acc) {
  ++acc.checked;
  const PiBound b = pi_bound_check(A, g, k);
  if (!b.holds) {
    acc.violate(index, A.size(), "|pi(A)| <= |A^{k+3}|/|phi_g(A)| = " + to_string(b.rhs),
                "|pi(A)| = " + std::to_string(b.pi_size),
                format_aff_set(A) + "# g: " + std::to_string(g.a.code) + " " + std::to_string(g.b.code) +
                    "\n# k: " + std::to_string(k) + "\n");
  }
}

// phi_g(h) == phi_g(h') iff h == h' or (h, h') spans the fiber slope of g.
void check_fiber(std::uint64_t index, const FieldSpec& field, const AffElement& g, Accumulator& acc) {
  ++acc.checked;
  const AffSet group = whole_group(field);
  const Slope slope = fiber_slope(field, g);
  std::vector<AffElement> image;
  image.reserve(group.size());
  for (const AffElement& h : group.elems()) image.push_back(aff_mul(field, aff_mul(field, h, g), aff_inv(field, h)));
  const auto elems = group.elems();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      const bool same_image = image[i] == image[j];
      const bool on_fiber = slope_between(field, as_point(elems[i]), as_point(elems[j])) == slope;
      if (same_image != on_fiber) {
        acc.violate(index, 1, "phi_g(h) = phi_g(h') iff slope(h, h') = " + format_slope(slope),
                    "h = (" + std::to_string(elems[i].a.code) + "," + std::to_string(elems[i].b.code) + ") h' = (" +
                        std::to_string(elems[j].a.code) + "," + std::to_string(elems[j].b.code) + ")",
                    field_header(field) + "\n# g: " + std::to_string(g.a.code) + " " + std::to_string(g.b.code) +
                        "\n");
        return;
      }
    }
  }
}

bool is_plane_target(Target t) {
  return t == Target::Szonyi || t == Target::Maindir || t == Target::Qbounds || t == Target::Moreq ||
         t == Target::Ghost || t == Target::Vinh;
}

bool reports_extremal(Target t) { return t == Target::Szonyi || t == Target::Maindir || t == Target::Qbounds; }

void validate(const Campaign& c) {
  const std::uint64_t q = c.field.q();
  const SizeRange s = c.sizes;
  auto bad = [&](const std::string& why) {
    throw Error(ErrorCode::InvalidArgument, std::string(to_string(c.target)) + ": " + why);
  };
  if (s.lo > s.hi) bad("empty size range");
  switch (c.target) {
    case Target::Szonyi:
      if (c.field.e() != 1) bad("the bound is stated for prime fields only");
      [[fallthrough]];
    case Target::Maindir:
    case Target::Qbounds:
    case Target::Ghost:
      if (s.lo < 2 || s.hi > q) bad("sizes must lie in 2..q");
      if (c.target != Target::Ghost && c.mode == Mode::Randomized && s.hi < 3) {
        bad("non-collinear sampling needs sizes reaching 3");
      }
      break;
    case Target::Moreq:
      if (s.lo <= q || s.hi > q * q) bad("sizes must lie in q+1..q^2");
      break;
    case Target::Classify:
      if (s.lo < 2 || s.hi > group_order(c.field)) bad("sizes must lie in 2..q(q-1)");
      break;
    case Target::Ruzsa:
    case Target::LemmaPhiPi:
      if (s.lo < 1 || s.hi > group_order(c.field)) bad("sizes must lie in 1..q(q-1)");
      break;
    case Target::Vinh:
      if (s.hi > q * q) bad("sizes must lie in 0..q^2");
      break;
    case Target::Kneser:
      if (s.lo < 1 || s.hi > q) bad("sizes must lie in 1..q");
      break;
  }
}

CampaignReport finish(const Campaign& c, Accumulator&& acc, std::chrono::steady_clock::time_point start) {
  CampaignReport report{c, 0, 0, {}, {}, 0};
  report.checked = acc.checked;
  report.skipped = acc.skipped;
  report.violations = std::move(acc.violations);
  if (reports_extremal(c.target)) {
    for (auto& [size, entry] : acc.extremal) report.extremal.push_back(std::move(entry));
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::pair<std::uint64_t, std::uint64_t> index_range(const Campaign& c, std::uint64_t total) {
  if (!c.only_index) return {0, total};
  if (*c.only_index >= total) {
    throw Error(ErrorCode::InvalidArgument, "index " + std::to_string(*c.only_index) + " is outside the campaign");
  }
  return {*c.only_index, *c.only_index + 1};
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(Target target) {
  switch (target) {
    case Target::Szonyi: return "szonyi";
    case Target::Maindir: return "maindir";
    case Target::Qbounds: return "qbounds";
    case Target::Moreq: return "moreq";
    case Target::Classify: return "classify";
    case Target::Vinh: return "vinh";
    case Target::Kneser: return "kneser";
    case Target::Ruzsa: return "ruzsa";
    case Target::Ghost: return "ghost";
    case Target::LemmaPhiPi: return "lemma_phipi";
  }
  return "unknown";
}

Target parse_target(std::string_view name) {
  for (Target t : {Target::Szonyi, Target::Maindir, Target::Qbounds, Target::Moreq, Target::Classify, Target::Vinh,
                   Target::Kneser, Target::Ruzsa, Target::Ghost, Target::LemmaPhiPi}) {
    if (to_string(t) == name) return t;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown target '" + std::string(name) + "'");
}

SizeRange parse_size_range(std::string_view text) {
  auto parse = [&](std::string_view part) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
      throw Error(ErrorCode::InvalidArgument, "bad size range '" + std::string(text) + "'");
    }
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    const std::uint64_t v = parse(text);
    return {v, v};
  }
  return {parse(text.substr(0, dots)), parse(text.substr(dots + 2))};
}

SizeRange default_sizes(Target target, const FieldSpec& field) {
  const std::uint64_t q = field.q();
  switch (target) {
    case Target::Szonyi:
    case Target::Maindir:
    case Target::Qbounds:
    case Target::Ghost: return {2, q};
    case Target::Moreq: return {q + 1, q + 1};
    case Target::Classify: return {2, group_order(field)};
    case Target::Ruzsa:
    case Target::LemmaPhiPi: return {1, group_order(field)};
    case Target::Vinh: return {0, q * q};
    case Target::Kneser: return {1, q};
  }
  return {0, 0};
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(r);
}

std::vector<std::uint32_t> unrank_combination(std::uint32_t n, std::uint32_t k, std::uint64_t rank) {
  std::vector<std::uint32_t> combo;
  combo.reserve(k);
  std::uint32_t next = 0;
  for (std::uint32_t slot = 0; slot < k; ++slot) {
    // Skip whole blocks of combinations that start with a smaller element.
    for (;; ++next) {
      const std::uint64_t block = binomial(n - next - 1, k - slot - 1);
      if (rank < block) break;
      rank -= block;
    }
    combo.push_back(next++);
  }
  return combo;
}

bool next_combination(std::vector<std::uint32_t>& combo, std::uint32_t n) noexcept {
  const std::size_t k = combo.size();
  for (std::size_t i = k; i-- > 0;) {
    if (combo[i] < n - k + i) {
      ++combo[i];
      for (std::size_t j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ index));
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  // Reject the low 2^64 mod n draws so every residue is equally likely.
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % n;
  }
}

std::vector<std::uint32_t> sample_distinct(std::mt19937_64& rng, std::uint32_t n, std::uint32_t k) {
  // Floyd's algorithm.
  std::vector<std::uint32_t> out;
  out.reserve(k);
  for (std::uint32_t j = n - k; j < n; ++j) {
    const auto t = static_cast<std::uint32_t>(uniform_below(rng, std::uint64_t{j} + 1));
    if (std::find(out.begin(), out.end(), t) == out.end()) {
      out.push_back(t);
    } else {
      out.push_back(j);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

PlanePointSet sample_point_set(const FieldSpec& field, std::mt19937_64& rng, SizeRange sizes, bool non_collinear) {
  const std::uint32_t points = field.q() * field.q();
  const std::uint64_t lo = non_collinear ? std::max<std::uint64_t>(sizes.lo, 3) : sizes.lo;
  if (lo > sizes.hi || sizes.hi > points) throw Error(ErrorCode::InvalidArgument, "unsatisfiable size range");
  for (;;) {
    const auto size = static_cast<std::uint32_t>(lo + uniform_below(rng, sizes.hi - lo + 1));
    PlanePointSet A = plane_set_from(field, sample_distinct(rng, points, size));
    if (!non_collinear || !direction_set(A).collinear) return A;
  }
}

std::optional<AffSet> sample_symmetric_set(const FieldSpec& field, std::mt19937_64& rng, SizeRange sizes) {
  const AffSet group = whole_group(field);
  const AffElement id = aff_identity(field);
  std::vector<AffElement> pool;
  for (const AffElement& g : group.elems()) {
    if (g != id) pool.push_back(g);
  }
  const std::uint64_t max_generators = std::max<std::uint64_t>(1, std::min<std::uint64_t>(sizes.hi, pool.size()));
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const auto m = static_cast<std::uint32_t>(1 + uniform_below(rng, max_generators));
    std::vector<AffElement> elems;
    for (std::uint32_t i : sample_distinct(rng, static_cast<std::uint32_t>(pool.size()), m)) {
      elems.push_back(pool[i]);
      elems.push_back(aff_inv(field, pool[i]));
    }
    if (uniform_below(rng, 2) == 1) elems.push_back(id);
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    if (in_range(elems.size(), sizes)) return AffSet(field, std::move(elems));
  }
  return std::nullopt;
}

std::uint64_t enumeration_count(const Campaign& c) {
  const FieldSpec& field = c.field;
  switch (c.target) {
    case Target::Szonyi:
    case Target::Maindir:
    case Target::Qbounds:
    case Target::Moreq:
    case Target::Ghost:
    case Target::Vinh: return PlaneSpace(field, c.sizes).total;
    case Target::Classify:
    case Target::Ruzsa: return OrbitSpace(field).total;
    case Target::LemmaPhiPi: return sat_add(group_order(field), OrbitSpace(field).total);
    case Target::Kneser: return sat_pow2(2 * std::uint64_t{field.q()});
  }
  return 0;
}

CampaignReport exhaustive_verify(const Campaign& c) {
  validate(c);
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t count = enumeration_count(c);
  if (count > c.budget) {
    throw Error(ErrorCode::BudgetExceeded, "enumeration count " + (count == kSaturated ? std::string(">= 2^64")
                                                                                       : std::to_string(count)) +
                                               " exceeds budget " + std::to_string(c.budget));
  }
  const auto [begin, end] = index_range(c, count);
  const FieldSpec& field = c.field;
  RangeVisitor visit;

  if (is_plane_target(c.target)) {
    const PlaneSpace space(field, c.sizes);
    const std::vector<AffineLine> all_lines = enumerate_lines(field);
    visit = [&, space, all_lines](std::uint64_t lo, std::uint64_t hi, Accumulator& acc) {
      space.visit(lo, hi, [&](std::uint64_t idx, const std::vector<std::uint32_t>& combo) {
        const PlanePointSet A = plane_set_from(field, combo);
        switch (c.target) {
          case Target::Szonyi: check_szonyi(idx, A, acc); break;
          case Target::Maindir: check_maindir(idx, A, acc); break;
          case Target::Qbounds: check_qbounds(idx, A, acc); break;
          case Target::Moreq: check_moreq(idx, A, acc); break;
          case Target::Ghost:
            if (direction_set(A).directions.size() == std::size_t{field.q()} + 1) {
              ++acc.skipped;
              break;
            }
            for (const Point& pt : A.points()) check_ghost(idx, A, pt, acc);
            break;
          case Target::Vinh: {
            const std::vector<AffineLine> undetermined = undetermined_lines(A);
            std::vector<AffineLine> determined;
            std::set_difference(all_lines.begin(), all_lines.end(), undetermined.begin(), undetermined.end(),
                                std::back_inserter(determined));
            check_vinh(idx, A, all_lines, "all", acc);
            check_vinh(idx, A, undetermined, "undetermined", acc);
            check_vinh(idx, A, determined, "determined", acc);
            break;
          }
          default: break;
        }
      });
    };
  } else if (c.target == Target::Kneser) {
    const std::uint32_t q = field.q();
    visit = [&, q](std::uint64_t lo, std::uint64_t hi, Accumulator& acc) {
      for (std::uint64_t idx = lo; idx < hi; ++idx) {
        const auto A = mask_to_elements(idx >> q, q);
        const auto B = mask_to_elements(idx & ((std::uint64_t{1} << q) - 1), q);
        if (A.empty() || B.empty() || !in_range(A.size(), c.sizes) || !in_range(B.size(), c.sizes)) {
          ++acc.skipped;
          continue;
        }
        check_kneser(idx, field, A, B, acc);
      }
    };
  } else {
    const OrbitSpace space(field);
    const std::uint64_t prefix = c.target == Target::LemmaPhiPi ? group_order(field) : 0;
    const AffSet group = whole_group(field);
    visit = [&, space, prefix, group](std::uint64_t lo, std::uint64_t hi, Accumulator& acc) {
      const AffElement id = aff_identity(field);
      for (std::uint64_t idx = lo; idx < hi; ++idx) {
        if (idx < prefix) {
          const AffElement g = group.elems()[idx];
          if (g == id) {
            ++acc.skipped;
          } else {
            check_fiber(idx, field, g, acc);
          }
          continue;
        }
        const std::uint64_t sub = idx - prefix;
        if (!in_range(space.size_at(sub), c.sizes)) {
          ++acc.skipped;
          continue;
        }
        const AffSet A = space.set_at(field, sub);
        switch (c.target) {
          case Target::Classify: check_classify(idx, A, acc); break;
          case Target::Ruzsa: check_ruzsa(idx, A, acc); break;
          case Target::LemmaPhiPi:
            for (const AffElement& g : A.elems()) {
              if (g != id) check_pi_bound(idx, A, g, 1, acc);
            }
            break;
          default: break;
        }
      }
    };
  }

  return finish(c, run_parallel(begin, end, c.jobs, visit), start);
}

CampaignReport random_verify(const Campaign& c) {
  validate(c);
  const auto start = std::chrono::steady_clock::now();
  const auto [begin, end] = index_range(c, c.samples);
  const FieldSpec& field = c.field;
  const std::vector<AffineLine> all_lines = enumerate_lines(field);

  const RangeVisitor visit = [&](std::uint64_t lo, std::uint64_t hi, Accumulator& acc) {
    const std::uint32_t q = field.q();
    const AffElement id = aff_identity(field);
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      std::mt19937_64 rng = trial_rng(c.seed, idx);
      switch (c.target) {
        case Target::Szonyi: check_szonyi(idx, sample_point_set(field, rng, c.sizes, true), acc); break;
        case Target::Maindir: check_maindir(idx, sample_point_set(field, rng, c.sizes, true), acc); break;
        case Target::Qbounds: check_qbounds(idx, sample_point_set(field, rng, c.sizes, true), acc); break;
        case Target::Moreq: check_moreq(idx, sample_point_set(field, rng, c.sizes, false), acc); break;
        case Target::Ghost: {
          std::optional<PlanePointSet> A;
          for (int attempt = 0; attempt < kMaxAttempts && !A; ++attempt) {
            PlanePointSet cand = sample_point_set(field, rng, c.sizes, false);
            if (direction_set(cand).directions.size() <= q) A = std::move(cand);
          }
          if (!A) {
            ++acc.skipped;
            break;
          }
          const Point pt = A->points()[uniform_below(rng, A->size())];
          check_ghost(idx, *A, pt, acc);
          break;
        }
        case Target::Vinh: {
          const auto size = static_cast<std::uint32_t>(c.sizes.lo + uniform_below(rng, c.sizes.hi - c.sizes.lo + 1));
          const PlanePointSet P = plane_set_from(field, sample_distinct(rng, q * q, size));
          const auto line_count = static_cast<std::uint32_t>(all_lines.size());
          const auto picked = sample_distinct(rng, line_count, static_cast<std::uint32_t>(uniform_below(rng, line_count + 1)));
          std::vector<AffineLine> L;
          L.reserve(picked.size());
          for (std::uint32_t i : picked) L.push_back(all_lines[i]);
          check_vinh(idx, P, L, "random", acc);
          break;
        }
        case Target::Kneser: {
          auto draw = [&] {
            const auto size = static_cast<std::uint32_t>(c.sizes.lo + uniform_below(rng, c.sizes.hi - c.sizes.lo + 1));
            std::vector<FieldElement> out;
            for (std::uint32_t v : sample_distinct(rng, q, size)) out.push_back(FieldElement{v});
            return out;
          };
          const auto A = draw();
          const auto B = draw();
          check_kneser(idx, field, A, B, acc);
          break;
        }
        case Target::Classify:
        case Target::Ruzsa:
        case Target::LemmaPhiPi: {
          if (c.target == Target::LemmaPhiPi) {
            const AffSet group = whole_group(field);
            AffElement g = id;
            while (g == id) g = group.elems()[uniform_below(rng, group.size())];
            check_fiber(idx, field, g, acc);
          }
          const std::optional<AffSet> A = sample_symmetric_set(field, rng, c.sizes);
          if (!A || (c.target == Target::Classify && A->size() < 2)) {
            ++acc.skipped;
            break;
          }
          if (c.target == Target::Classify) {
            check_classify(idx, *A, acc);
          } else if (c.target == Target::Ruzsa) {
            check_ruzsa(idx, *A, acc);
          } else {
            const auto k = static_cast<std::uint32_t>(1 + uniform_below(rng, 3));
            std::vector<AffElement> candidates;
            const AffSet power = product_power(*A, k);
            for (const AffElement& g : power.elems()) {
              if (g != id) candidates.push_back(g);
            }
            if (candidates.empty()) {
              ++acc.skipped;
              break;
            }
            check_pi_bound(idx, *A, candidates[uniform_below(rng, candidates.size())], k, acc);
          }
          break;
        }
      }
    }
  };

  return finish(c, run_parallel(begin, end, c.jobs, visit), start);
}

CampaignReport run_campaign(const Campaign& c) {
  return c.mode == Mode::Exhaustive ? exhaustive_verify(c) : random_verify(c);
}

std::string invocation(const Campaign& c) {
  std::ostringstream os;
  os << "verify --target " << to_string(c.target) << " --q " << c.field.q();
  if (c.mode == Mode::Exhaustive) {
    os << " --exhaustive";
  } else {
    os << " --samples " << c.samples << " --seed " << c.seed;
  }
  os << " --sizes " << c.sizes.lo << ".." << c.sizes.hi;
  if (c.only_index) os << " --index " << *c.only_index;
  return os.str();
}

namespace {

Json witness_json(const Witness& w) {
  Json out = Json::array();
  for (const auto& [a, b] : w) out.push_back(Json::array({a, b}));
  return out;
}

}  // namespace

Json report_json(const CampaignReport& report, bool include_timing) {
  const Campaign& c = report.campaign;
  Json j;
  j["invocation"] = invocation(c);
  j["target"] = std::string(to_string(c.target));
  j["q"] = c.field.q();
  j["p"] = c.field.p();
  j["e"] = c.field.e();
  j["mode"] = c.mode == Mode::Exhaustive ? "exhaustive" : "randomized";
  if (c.mode == Mode::Randomized) {
    j["seed"] = c.seed;
    j["samples"] = c.samples;
  }
  j["sizes"] = std::to_string(c.sizes.lo) + ".." + std::to_string(c.sizes.hi);
  j["checked"] = report.checked;
  j["skipped"] = report.skipped;
  Json violations = Json::array();
  for (const Violation& v : report.violations) {
    violations.push_back(Json{{"index", v.index},
                              {"size", v.size},
                              {"expected", v.expected},
                              {"observed", v.observed},
                              {"input", v.input}});
  }
  j["violations"] = std::move(violations);
  if (reports_extremal(c.target)) {
    Json ext = Json::array();
    for (const ExtremalEntry& e : report.extremal) {
      Json ws = Json::array();
      for (const Witness& w : e.witnesses) ws.push_back(witness_json(w));
      ext.push_back(Json{{"size", e.size}, {"min_D", e.min_directions}, {"witnesses", std::move(ws)}});
    }
    j["extremal"] = std::move(ext);
  }
  if (include_timing) j["seconds"] = report.seconds;
  return j;
}

ExtremalResult extremal_search(const FieldSpec& field, std::uint64_t size, std::uint64_t budget, std::uint64_t seed,
                               std::uint64_t samples, unsigned jobs) {
  ExtremalResult result;
  const std::uint64_t points = std::uint64_t{field.q()} * field.q();
  if (size < 3) {
    result.exempt = true;
    result.min_directions = 1;
    return result;
  }
  if (size > points) throw Error(ErrorCode::InvalidArgument, "size exceeds q^2");
  const SizeRange range{size, size};
  Accumulator acc;
  auto note = [](const PlanePointSet& A, Accumulator& a) {
    const DirectionReport D = direction_set(A);
    if (D.collinear) {
      ++a.skipped;
      return;
    }
    ++a.checked;
    a.note_extremal(A, static_cast<std::int64_t>(D.directions.size()));
  };
  const PlaneSpace space(field, range);
  if (space.total <= budget) {
    acc = run_parallel(0, space.total, jobs, [&](std::uint64_t lo, std::uint64_t hi, Accumulator& a) {
      space.visit(lo, hi, [&](std::uint64_t, const std::vector<std::uint32_t>& combo) {
        note(plane_set_from(field, combo), a);
      });
    });
  } else {
    result.exhaustive = false;
    acc = run_parallel(0, samples, jobs, [&](std::uint64_t lo, std::uint64_t hi, Accumulator& a) {
      for (std::uint64_t idx = lo; idx < hi; ++idx) {
        std::mt19937_64 rng = trial_rng(seed, idx);
        note(sample_point_set(field, rng, range, true), a);
      }
    });
  }
  result.checked = acc.checked;
  if (auto it = acc.extremal.find(size); it != acc.extremal.end()) {
    result.min_directions = it->second.min_directions;
    result.witnesses = std::move(it->second.witnesses);
  }
  return result;
}

Json extremal_json(const FieldSpec& field, std::uint64_t size, const ExtremalResult& result) {
  Json j;
  j["q"] = field.q();
  j["size"] = size;
  j["mode"] = result.exempt ? "exempt" : (result.exhaustive ? "exhaustive" : "heuristic");
  j["checked"] = result.checked;
  j["min_D"] = result.min_directions;
  Json ws = Json::array();
  for (const Witness& w : result.witnesses) ws.push_back(witness_json(w));
  j["witnesses"] = std::move(ws);
  return j;
}

std::filesystem::path persist_counterexample(const Campaign& c, const Violation& v, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
  const std::filesystem::path path = dir / (std::string(to_string(c.target)) + "-q" + std::to_string(c.field.q()) +
                                            "-i" + std::to_string(v.index) + ".txt");
  Campaign replay = c;
  replay.only_index = v.index;
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << "# target: " << to_string(c.target) << '\n'
      << "# index: " << v.index << '\n'
      << "# expected: " << v.expected << '\n'
      << "# observed: " << v.observed << '\n'
      << "# replay: redei " << invocation(replay) << '\n'
      << v.input;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
  return path;
}

}  // namespace redei
