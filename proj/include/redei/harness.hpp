#pragma once

// Verification campaigns: exhaustive or seeded-random sweeps of candidate
// sets, each fed to a theorem checker. Work is split into contiguous index
// ranges and merged in index order, so a report depends only on the campaign
// description and never on the number of workers.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "redei/ff.hpp"
#include "redei/io.hpp"

namespace redei {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

enum class Target { Szonyi, Maindir, Qbounds, Moreq, Classify, Vinh, Kneser, Ruzsa, Ghost, LemmaPhiPi };

std::string_view to_string(Target target);
/// Throws InvalidArgument for unknown names.
Target parse_target(std::string_view name);

enum class Mode { Exhaustive, Randomized };

struct SizeRange {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
};

/// "a..b" or a single "a". Throws InvalidArgument.
SizeRange parse_size_range(std::string_view text);

/// Natural size range of the objects a target samples.
SizeRange default_sizes(Target target, const FieldSpec& field);

struct Campaign {
  Target target = Target::Maindir;
  FieldSpec field;
  SizeRange sizes;
  Mode mode = Mode::Randomized;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::uint64_t budget = kDefaultBudget;
  std::optional<std::uint64_t> only_index;  // replay a single trial
};

struct Violation {
  std::uint64_t index = 0;
  std::uint64_t size = 0;
  std::string expected;
  std::string observed;
  std::string input;  // set-file text reproducing the checked object
};

using Witness = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

struct ExtremalEntry {
  std::uint64_t size = 0;
  std::int64_t min_directions = 0;
  std::vector<Witness> witnesses;  // first ones in index order, at most kMaxWitnesses
};

inline constexpr std::size_t kMaxWitnesses = 10;

struct CampaignReport {
  Campaign campaign;
  std::uint64_t checked = 0;
  std::uint64_t skipped = 0;
  std::vector<Violation> violations;
  std::vector<ExtremalEntry> extremal;  // by ascending size; plane targets only
  double seconds = 0;
};

/// Number of candidate indices an exhaustive campaign visits (saturating).
std::uint64_t enumeration_count(const Campaign& c);

/// Dispatches on c.mode. Throws BudgetExceeded, InvalidArgument.
CampaignReport run_campaign(const Campaign& c);
CampaignReport exhaustive_verify(const Campaign& c);
CampaignReport random_verify(const Campaign& c);

/// Canonical command line reproducing the campaign (worker count excluded).
std::string invocation(const Campaign& c);

Json report_json(const CampaignReport& report, bool include_timing = false);

struct ExtremalResult {
  bool exempt = false;     // size < 3: every set is collinear
  bool exhaustive = true;  // false when the search fell back to sampling
  std::uint64_t checked = 0;
  std::int64_t min_directions = 0;
  std::vector<Witness> witnesses;
};

/// Minimum |D| over non-collinear sets of one size. Exhaustive within the
/// budget, otherwise `samples` seeded random sets.
ExtremalResult extremal_search(const FieldSpec& field, std::uint64_t size, std::uint64_t budget,
                               std::uint64_t seed, std::uint64_t samples, unsigned jobs = 1);

Json extremal_json(const FieldSpec& field, std::uint64_t size, const ExtremalResult& result);

/// Writes the violation as a set file with '#' metadata lines; returns the path.
std::filesystem::path persist_counterexample(const Campaign& c, const Violation& v,
                                             const std::filesystem::path& dir);

// Enumeration and sampling primitives, exposed for tests.

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept;
/// The rank-th k-subset of {0..n-1} in lexicographic order.
std::vector<std::uint32_t> unrank_combination(std::uint32_t n, std::uint32_t k, std::uint64_t rank);
/// Advances to the next k-subset in lexicographic order; false after the last.
bool next_combination(std::vector<std::uint32_t>& combo, std::uint32_t n) noexcept;

/// Generator for trial `index` of a campaign seeded with `seed`.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index);
/// Uniform in [0, n), n > 0, independent of the standard library's distributions.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);
/// k distinct values of [0, n), sorted.
std::vector<std::uint32_t> sample_distinct(std::mt19937_64& rng, std::uint32_t n, std::uint32_t k);

/// Uniform-size random point set with sizes in [lo, hi]; non-collinear when
/// requested (hi >= 3 required then).
PlanePointSet sample_point_set(const FieldSpec& field, std::mt19937_64& rng, SizeRange sizes, bool non_collinear);

/// Symmetric random subset of Aff(F_q): m distinct non-identity generators
/// closed under inversion, identity added with probability 1/2. nullopt when
/// no sample within the size range was found.
std::optional<AffSet> sample_symmetric_set(const FieldSpec& field, std::mt19937_64& rng, SizeRange sizes);

}  // namespace redei
