#include <gtest/gtest.h>

#include <set>

#include "redei/bounds.hpp"
#include "redei/error.hpp"
#include "redei/harness.hpp"

using namespace redei;

namespace {

std::vector<Point> all_points(const FieldSpec& f) {
  std::vector<Point> out;
  for (FieldElement a : f.elements()) {
    for (FieldElement b : f.elements()) out.push_back({a, b});
  }
  return out;
}

std::vector<FieldElement> els(std::vector<std::uint32_t> codes) {
  std::vector<FieldElement> out;
  for (auto c : codes) out.push_back(FieldElement{c});
  return out;
}

AffSet A_(const FieldSpec& f, std::vector<std::pair<std::uint32_t, std::uint32_t>> elems) {
  std::vector<AffElement> out;
  for (auto [a, b] : elems) out.push_back({FieldElement{a}, FieldElement{b}});
  return AffSet(f, std::move(out));
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Lines, EnumerationCountsAndOrder) {
  EXPECT_EQ(enumerate_lines(FieldSpec::construct(2, 1)).size(), 6u);
  for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 2}, {5, 1}, {3, 2}}) {
    const FieldSpec f = FieldSpec::construct(p, e);
    const auto lines = enumerate_lines(f);
    ASSERT_EQ(lines.size(), std::size_t{f.q()} * f.q() + f.q());
    EXPECT_TRUE(std::is_sorted(lines.begin(), lines.end()));
    EXPECT_FALSE(lines.front().vertical);
    EXPECT_TRUE(lines.back().vertical);
    const auto pts = all_points(f);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      EXPECT_EQ(line_index(f, lines[i]), i);
      const auto on = std::count_if(pts.begin(), pts.end(), [&](const Point& pt) { return on_line(f, lines[i], pt); });
      EXPECT_EQ(on, static_cast<long>(f.q()));
    }
    // Two distinct points lie on exactly one common line.
    for (std::size_t i = 0; i < pts.size(); i += 3) {
      for (std::size_t j = i + 1; j < pts.size(); j += 5) {
        const auto common = std::count_if(lines.begin(), lines.end(), [&](const AffineLine& l) {
          return on_line(f, l, pts[i]) && on_line(f, l, pts[j]);
        });
        ASSERT_EQ(common, 1);
      }
    }
  }
  EXPECT_EQ(enumerate_lines(FieldSpec::construct(2, 2)).size(), 20u);
}

TEST(Incidence, Examples) {
  const FieldSpec f5 = FieldSpec::construct(5, 1);
  const auto pts = all_points(f5);
  const auto lines = enumerate_lines(f5);
  EXPECT_EQ(incidence_count(f5, pts, lines).count, 150);

  const AffineLine l{false, {2}, {1}};
  const std::vector<Point> one{{{1}, {3}}};
  const std::vector<AffineLine> just_l{l};
  EXPECT_EQ(incidence_count(f5, one, just_l).count, 1);
  EXPECT_EQ(incidence_count(f5, {}, lines).count, 0);
  EXPECT_EQ(incidence_count(f5, pts, lines).expectation, Rational(25 * 30, 5));
}

TEST(Incidence, DoubleCountingExhaustiveAtFour) {
  const FieldSpec f4 = FieldSpec::construct(2, 2);
  const auto pts = all_points(f4);
  const auto lines = enumerate_lines(f4);
  for (std::uint32_t mask = 0; mask < (1u << 16); ++mask) {
    std::vector<Point> P;
    for (std::uint32_t i = 0; i < 16; ++i) {
      if (mask >> i & 1) P.push_back(pts[i]);
    }
    ASSERT_EQ(incidence_count(f4, P, lines).count, static_cast<std::int64_t>(P.size()) * 5);
  }
}

TEST(Incidence, DoubleCountingRandomAtFive) {
  const FieldSpec f5 = FieldSpec::construct(5, 1);
  const auto lines = enumerate_lines(f5);
  for (std::uint64_t i = 0; i < 500; ++i) {
    auto rng = trial_rng(12, i);
    const PlanePointSet P = sample_point_set(f5, rng, {0, 25}, false);
    ASSERT_EQ(incidence_count(f5, P.points(), lines).count, static_cast<std::int64_t>(P.size()) * 6);
  }
}

TEST(Vinh, Examples) {
  const FieldSpec f7 = FieldSpec::construct(7, 1);
  const VinhVerdict full = vinh_check(f7, all_points(f7), enumerate_lines(f7));
  EXPECT_TRUE(full.holds);
  EXPECT_EQ(full.result.deviation_sq, 0);
  EXPECT_EQ(full.result.count, 7 * 7 * 7 + 7 * 7);
  EXPECT_EQ(full.result.bound_sq, BigInt(343) * 49 * 56);

  const VinhVerdict empty = vinh_check(f7, {}, {});
  EXPECT_TRUE(empty.holds);
  EXPECT_EQ(empty.result.deviation_sq, 0);
}

TEST(Vinh, HoldsOnRandomPairs) {
  const FieldSpec f5 = FieldSpec::construct(5, 1);
  const auto lines = enumerate_lines(f5);
  for (std::uint64_t i = 0; i < 2000; ++i) {
    auto rng = trial_rng(13, i);
    const PlanePointSet P = sample_point_set(f5, rng, {0, 25}, false);
    std::vector<AffineLine> L;
    for (auto idx : sample_distinct(rng, 30, static_cast<std::uint32_t>(uniform_below(rng, 31)))) L.push_back(lines[idx]);
    const VinhVerdict v = vinh_check(f5, P.points(), L);
    ASSERT_TRUE(v.holds);
    const BigInt dev = BigInt(5) * v.result.count - BigInt(P.size()) * L.size();
    ASSERT_EQ(v.result.deviation_sq, dev * dev);
  }
}

TEST(UndeterminedLines, Examples) {
  const FieldSpec f4 = FieldSpec::construct(2, 2);
  const PlanePointSet sq(f4, {{{0}, {0}}, {{0}, {1}}, {{1}, {0}}, {{1}, {1}}});
  const auto und = undetermined_lines(sq);
  EXPECT_EQ(und.size(), 14u);
  EXPECT_TRUE(std::is_sorted(und.begin(), und.end()));

  const PlanePointSet single(f4, {{{2}, {3}}});
  EXPECT_EQ(undetermined_lines(single), enumerate_lines(f4));

  for (std::uint64_t i = 0; i < 300; ++i) {
    auto rng = trial_rng(14, i);
    const PlanePointSet A = sample_point_set(f4, rng, {1, 16}, false);
    const auto L = undetermined_lines(A);
    ASSERT_LE(incidence_count(f4, A.points(), L).count, static_cast<std::int64_t>(L.size()));
    for (const AffineLine& l : L) {
      ASSERT_LE(std::count_if(A.points().begin(), A.points().end(), [&](const Point& p) { return on_line(f4, l, p); }),
                1);
    }
  }
}

TEST(Sumset, Examples) {
  const FieldSpec f4 = FieldSpec::construct(2, 2);
  const auto A = els({0, 1});
  EXPECT_EQ(sumset(f4, A, A), els({0, 1}));
  EXPECT_EQ(stabilizer_subgroup(f4, els({0, 1})), els({0, 1}));
  EXPECT_EQ(stabilizer_subgroup(f4, f4.elements()), f4.elements());
  const auto B = els({1, 3});
  EXPECT_EQ(sumset(f4, els({0}), B), B);
}

TEST(Sumset, StabilizerIsSubgroup) {
  for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 2}, {5, 1}, {3, 2}, {2, 3}}) {
    const FieldSpec f = FieldSpec::construct(p, e);
    for (std::uint64_t i = 0; i < 200; ++i) {
      auto rng = trial_rng(15, i);
      std::vector<FieldElement> S;
      for (auto v : sample_distinct(rng, f.q(), static_cast<std::uint32_t>(1 + uniform_below(rng, f.q())))) {
        S.push_back(FieldElement{v});
      }
      const auto H = stabilizer_subgroup(f, S);
      const std::set<FieldElement> hs(H.begin(), H.end());
      ASSERT_TRUE(hs.count(f.zero()));
      for (FieldElement a : H) {
        ASSERT_TRUE(hs.count(f.neg(a)));
        for (FieldElement b : H) ASSERT_TRUE(hs.count(f.add(a, b)));
      }
    }
  }
}

TEST(Kneser, Examples) {
  const FieldSpec f4 = FieldSpec::construct(2, 2);
  const KneserVerdict v = kneser_check(f4, els({0, 1}), els({0, 1}));
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.sumset_size, 2);
  EXPECT_EQ(v.h_size, 2);
  for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 2}, {5, 1}, {3, 2}}) {
    const FieldSpec f = FieldSpec::construct(p, e);
    const KneserVerdict full = kneser_check(f, f.elements(), f.elements());
    EXPECT_TRUE(full.holds);
    EXPECT_EQ(full.sumset_size, f.q());
  }
  EXPECT_EQ(code_of([&] { kneser_check(f4, {}, els({1})); }), ErrorCode::EmptySet);
}

TEST(Kneser, ExhaustiveSmallFields) {
  for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}}) {
    const FieldSpec f = FieldSpec::construct(p, e);
    const std::uint32_t q = f.q();
    std::uint64_t pairs = 0;
    for (std::uint32_t ma = 1; ma < (1u << q); ++ma) {
      if (__builtin_popcount(ma) > 4) continue;
      for (std::uint32_t mb = 1; mb < (1u << q); ++mb) {
        if (__builtin_popcount(mb) > 4) continue;
        std::vector<FieldElement> A, B;
        for (std::uint32_t i = 0; i < q; ++i) {
          if (ma >> i & 1) A.push_back(FieldElement{i});
          if (mb >> i & 1) B.push_back(FieldElement{i});
        }
        ASSERT_TRUE(kneser_check(f, A, B).holds);
        ++pairs;
      }
    }
    if (q == 4) {
      EXPECT_EQ(pairs, 225u);
    }
  }
}

TEST(Ruzsa, Examples) {
  const FieldSpec f5 = FieldSpec::construct(5, 1);
  const AffSet U = unipotent(f5);
  const RuzsaVerdict sub = ruzsa_check(U, 6);
  EXPECT_TRUE(sub.holds);
  EXPECT_EQ(sub.c, Rational(1));
  EXPECT_EQ(sub.power_size, 5);
  EXPECT_EQ(sub.bound, Rational(5));

  const AffSet A = A_(f5, {{1, 0}, {2, 0}, {3, 0}});
  const RuzsaVerdict r = ruzsa_check(A, 4);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.power_size, 4);
  EXPECT_EQ(r.bound, Rational(16, 3));
  EXPECT_EQ(r.c, Rational(4, 3));

  EXPECT_EQ(code_of([&] { ruzsa_check(A, 3); }), ErrorCode::BadExponent);
  EXPECT_EQ(code_of([&] { ruzsa_check(A_(f5, {{2, 0}}), 4); }), ErrorCode::NotSymmetric);
}

TEST(Ruzsa, ChainOnRandomSymmetricSets) {
  const FieldSpec f5 = FieldSpec::construct(5, 1);
  for (std::uint64_t i = 0; i < 300; ++i) {
    auto rng = trial_rng(16, i);
    const auto A = sample_symmetric_set(f5, rng, {1, 20});
    ASSERT_TRUE(A.has_value());
    for (std::uint32_t k = 4; k <= 8; ++k) ASSERT_TRUE(ruzsa_check(*A, k).holds);
  }
}
