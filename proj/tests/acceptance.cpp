// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "redei/bounds.hpp"
#include "redei/error.hpp"
#include "redei/harness.hpp"

using namespace redei;

namespace {

constexpr std::uint64_t kSeed = 20240;

unsigned workers() { return std::max(1u, std::min(8u, std::thread::hardware_concurrency())); }

Campaign campaign(Target t, std::uint64_t q, SizeRange sizes, Mode mode, std::uint64_t samples = 0,
                  unsigned jobs = 1) {
  return Campaign{t, field_for_order(q), sizes, mode, samples, kSeed, jobs, kDefaultBudget, std::nullopt};
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

void note_report(Outcome& o, const CampaignReport& r, const std::string& label) {
  o.detail << ' ' << label << ": checked=" << r.checked << " violations=" << r.violations.size() << ';';
  o.require(r.violations.empty(), label + " has violations");
  o.require(r.checked > 0, label + " checked nothing");
  if (!r.violations.empty()) {
    const Violation& v = r.violations.front();
    o.detail << " first violation at index " << v.index << " (" << v.observed << ')';
  }
}

Point P(std::uint32_t a, std::uint32_t b) { return {FieldElement{a}, FieldElement{b}}; }
AffElement E(std::uint32_t a, std::uint32_t b) { return {FieldElement{a}, FieldElement{b}}; }

PlanePointSet square_f4() { return PlanePointSet(field_for_order(4), {P(0, 0), P(0, 1), P(1, 0), P(1, 1)}); }

int failures = 0;

void criterion(int id, const std::string& name, double limit_seconds, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0) {
    std::ostringstream lim;
    lim << "runtime " << secs << " s exceeds " << limit_seconds << " s";
    o.require(secs < limit_seconds, lim.str());
  }
  if (!o.pass) ++failures;
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.2f", secs);
  std::cout << (o.pass ? "PASS" : "FAIL") << ' ' << id << ' ' << name << " (" << timing << " s)" << o.detail.str()
            << std::endl;
}

}  // namespace

int main() {
  const unsigned jobs = workers();

  criterion(1, "szonyi exhaustive q=5 sizes 2..5 single-threaded", 60, [](Outcome& o) {
    const Campaign c = campaign(Target::Szonyi, 5, {2, 5}, Mode::Exhaustive);
    const CampaignReport r = run_campaign(c);
    note_report(o, r, "q=5");
    o.require(r.checked + r.skipped == enumeration_count(c), "not every subset visited");
  });

  criterion(2, "maindir exhaustive q=4 sizes 2..4, min |D| at size 4", 10, [](Outcome& o) {
    const CampaignReport r = run_campaign(campaign(Target::Maindir, 4, {2, 4}, Mode::Exhaustive));
    note_report(o, r, "q=4");
    const auto it = std::find_if(r.extremal.begin(), r.extremal.end(), [](const ExtremalEntry& e) { return e.size == 4; });
    o.require(it != r.extremal.end(), "no size-4 extremal entry");
    if (it == r.extremal.end()) return;
    o.detail << " min_D(4)=" << it->min_directions;
    o.require(it->min_directions == 3, "minimum at size 4 is not 3");
    const Witness square{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    o.require(std::find(it->witnesses.begin(), it->witnesses.end(), square) != it->witnesses.end(),
              "F_2 x F_2 is not among the witnesses");
  });

  criterion(3, "maindir randomized q=9 and q=8, 1e5 samples each", 300, [jobs](Outcome& o) {
    for (std::uint64_t q : {9u, 8u}) {
      const CampaignReport r = run_campaign(campaign(Target::Maindir, q, {2, q}, Mode::Randomized, 100000, jobs));
      note_report(o, r, "q=" + std::to_string(q));
      o.require(r.checked == 100000, "sampler skipped trials");
    }
  });

  criterion(4, "sandwich on the sets of criteria 2-3 and the F_2 x F_2 fixture", 0, [jobs](Outcome& o) {
    note_report(o, run_campaign(campaign(Target::Qbounds, 4, {2, 4}, Mode::Exhaustive, 0, jobs)), "q=4 exhaustive");
    for (std::uint64_t q : {9u, 8u}) {
      note_report(o, run_campaign(campaign(Target::Qbounds, q, {2, q}, Mode::Randomized, 100000, jobs)),
                  "q=" + std::to_string(q));
    }
    const DirectionBounds b = direction_bounds(square_f4());
    o.detail << " fixture lower=" << b.lower << " upper=" << (b.upper ? std::to_string(*b.upper) : "trivial")
             << " |D|=" << b.direction_count;
    o.require(b.lower == 3 && b.upper == 3 && b.direction_count == 3, "fixture is not lower = upper = |D| = 3");
  });

  criterion(5, "Redei identities on 1e3 random sets, all slopes, q in {4,5,8,9}", 0, [jobs](Outcome& o) {
    for (std::uint64_t q : {4u, 5u, 8u, 9u}) {
      note_report(o, run_campaign(campaign(Target::Qbounds, q, {2, q}, Mode::Randomized, 1000, jobs)),
                  "q=" + std::to_string(q));
    }
  });

  criterion(6, "ghost slopes <= n on 1e3 random (A, pt) pairs per q", 0, [jobs](Outcome& o) {
    for (std::uint64_t q : {4u, 5u, 7u, 8u, 9u}) {
      note_report(o, run_campaign(campaign(Target::Ghost, q, {2, q}, Mode::Randomized, 1000, jobs)),
                  "q=" + std::to_string(q));
    }
  });

  criterion(7, "every 5-subset of F_4^2 spans all 5 directions", 0, [](Outcome& o) {
    const CampaignReport r = run_campaign(campaign(Target::Moreq, 4, {5, 5}, Mode::Exhaustive));
    note_report(o, r, "q=4");
    o.require(r.checked == 4368, "expected 4368 sets");
  });

  criterion(8, "classification disjunction on 1e4 symmetric sets per q and the fixtures", 0, [jobs](Outcome& o) {
    for (std::uint64_t q : {4u, 5u, 7u, 8u, 9u}) {
      const FieldSpec f = field_for_order(q);
      note_report(o,
                  run_campaign(campaign(Target::Classify, q, default_sizes(Target::Classify, f), Mode::Randomized,
                                        10000, jobs)),
                  "q=" + std::to_string(q));
    }
    const FieldSpec f4 = field_for_order(4);
    const FieldSpec f7 = field_for_order(7);
    for (std::uint64_t q : {4u, 5u, 7u, 8u, 9u}) {
      const ClassificationReport a = classify(stabilizer(field_for_order(q), FieldElement{0}));
      o.require(a.case_a && a.case_a->code == 0 && a.disjunction_holds,
                "Stab(0) at q=" + std::to_string(q) + " not case a");
    }
    const ClassificationReport b = classify(unipotent(f4));
    o.require(b.case_b && b.case_b->pi_size == 1 && b.case_b->bound == 4 && b.case_b->holds,
              "U in F_4 not case b with |pi| = 1 < 4");
    const ClassificationReport c = classify(whole_group(f7));
    o.require(c.case_c && c.case_c->pi_size == 6 && c.case_c->bound == 12 && c.case_c->holds &&
                  c.case_c->u_covered,
              "Aff(F_7) not case c with |pi| = 6 < 12 and U inside A^8");
    o.detail << " fixtures checked";
  });

  criterion(9, "fiber statement exhaustive at q=4,5 and the pi-bound examples", 0, [jobs](Outcome& o) {
    for (std::uint64_t q : {4u, 5u}) {
      const FieldSpec f = field_for_order(q);
      note_report(o,
                  run_campaign(campaign(Target::LemmaPhiPi, q, default_sizes(Target::LemmaPhiPi, f),
                                        Mode::Exhaustive, 0, jobs)),
                  "q=" + std::to_string(q));
    }
    const FieldSpec f4 = field_for_order(4);
    const FieldSpec f5 = field_for_order(5);
    const PiBound u = pi_bound_check(unipotent(f4), E(1, 1), 1);
    const PiBound tight = pi_bound_check(whole_group(f5), E(2, 0), 1);
    const PiBound st = pi_bound_check(stabilizer(f5, FieldElement{0}), E(2, 0), 1);
    o.detail << " U(F_4): " << u.pi_size << " <= " << to_string(u.rhs) << "; Aff(F_5): " << tight.pi_size
             << " <= " << to_string(tight.rhs) << "; Stab(0) in F_5: " << st.pi_size << " <= " << to_string(st.rhs);
    o.require(u.holds && u.pi_size == 1 && u.rhs == 4, "U(F_4) example");
    o.require(tight.holds && tight.pi_size == 4 && tight.rhs == 4, "tight Aff(F_5) example");
    o.require(st.holds && st.pi_size == 4 && st.rhs == 4, "Stab(0) example");
  });

  criterion(10, "incidence bound: full plane at q=7 and 1e5 random (P, L) pairs", 0, [jobs](Outcome& o) {
    const FieldSpec f7 = field_for_order(7);
    std::vector<Point> all;
    for (FieldElement a : f7.elements()) {
      for (FieldElement b : f7.elements()) all.push_back({a, b});
    }
    const VinhVerdict full = vinh_check(f7, all, enumerate_lines(f7));
    o.detail << " full plane deviation=" << full.result.deviation_sq.str() << ';';
    o.require(full.holds && full.result.deviation_sq == 0, "full-plane deviation is not 0");
    note_report(o, run_campaign(campaign(Target::Vinh, 7, {0, 49}, Mode::Randomized, 100000, jobs)), "q=7");
  });

  criterion(11, "Kneser exhaustive over F_4 and Ruzsa on 1e3 symmetric sets in Aff(F_5)", 0, [jobs](Outcome& o) {
    const CampaignReport k = run_campaign(campaign(Target::Kneser, 4, {1, 4}, Mode::Exhaustive, 0, jobs));
    note_report(o, k, "kneser q=4");
    o.require(k.checked == 225, "expected 225 pairs");
    const FieldSpec f5 = field_for_order(5);
    const CampaignReport r =
        run_campaign(campaign(Target::Ruzsa, 5, default_sizes(Target::Ruzsa, f5), Mode::Randomized, 1000, jobs));
    note_report(o, r, "ruzsa q=5 k=4..6");
    o.require(r.checked == 3000, "expected 1000 sets x 3 exponents");
  });

  criterion(12, "determinism: reruns and --jobs 4 agree byte-for-byte", 0, [](Outcome& o) {
    std::vector<Campaign> cs = {
        campaign(Target::Maindir, 9, {2, 9}, Mode::Randomized, 10000),
        campaign(Target::Qbounds, 8, {2, 8}, Mode::Randomized, 2000),
        campaign(Target::Ghost, 7, {2, 7}, Mode::Randomized, 2000),
        campaign(Target::Classify, 7, {2, 42}, Mode::Randomized, 2000),
        campaign(Target::Ruzsa, 5, {1, 20}, Mode::Randomized, 1000),
        campaign(Target::Vinh, 7, {0, 49}, Mode::Randomized, 10000),
        campaign(Target::LemmaPhiPi, 5, {1, 20}, Mode::Randomized, 1000),
        campaign(Target::Kneser, 8, {1, 8}, Mode::Randomized, 5000),
        campaign(Target::Maindir, 4, {2, 4}, Mode::Exhaustive),
        campaign(Target::Classify, 4, {2, 12}, Mode::Exhaustive),
    };
    for (Campaign& c : cs) {
      c.jobs = 1;
      const std::string first = report_json(run_campaign(c)).dump(2);
      const std::string again = report_json(run_campaign(c)).dump(2);
      c.jobs = 4;
      const std::string parallel = report_json(run_campaign(c)).dump(2);
      o.require(first == again, std::string(to_string(c.target)) + " rerun differs");
      o.require(first == parallel, std::string(to_string(c.target)) + " --jobs 4 differs");
    }
    o.detail << ' ' << cs.size() << " campaigns compared";
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
