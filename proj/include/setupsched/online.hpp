#pragma once

#include <functional>
#include <string>
#include <vector>

#include "setupsched/core.hpp"
#include "setupsched/exact.hpp"

namespace setupsched {

/// Instance whose jobs become known at their release times.
struct TimedInstance {
    Instance instance;
    /// indexed by job id
    std::vector<std::int64_t> release;
};

TimedInstance make_timed(Instance inst, std::vector<std::int64_t> release);

struct TimedSegment {
    Segment::Kind kind = Segment::Kind::Run;
    /// class id for setups, job id for runs (ids of the full instance)
    int id = 0;
    std::int64_t start = 0;
    std::int64_t end = 0;
};

/// Jobs released in (window_lo, window_hi], scheduled from `start` to `finish`.
/// The first batch has window_lo = -1.
struct Batch {
    std::int64_t window_lo = -1;
    std::int64_t window_hi = 0;
    std::int64_t start = 0;
    std::int64_t finish = 0;
    std::vector<int> jobs;
};

struct Timeline {
    std::vector<std::vector<TimedSegment>> machines;
    std::vector<Batch> batches;
    std::int64_t makespan = 0;
};

/// Offline algorithm used per batch, with the factor it certifies.
struct OfflineSolver {
    std::string name;
    std::function<Schedule(const Instance&)> solve;
    /// eps of the certified (1 + eps) factor; 0 for the exact solver
    Rational eps{0};
};

OfflineSolver offline_exact(SearchLimit limit = {});
OfflineSolver offline_block(int lambda);
OfflineSolver offline_fptas(Rational eps);
OfflineSolver offline_greedy();

/// Batch doubling. The first batch holds the jobs released at the earliest
/// release time. Each following batch holds the jobs released while the
/// previous one ran, i.e. in (F_{i-1}, F_i], and starts at F_i. A release at
/// exactly F_i belongs to the batch that starts at F_i. If nothing arrived the
/// machines idle until the next release.
Timeline simulate_online(const TimedInstance& tinst, const OfflineSolver& offline);

/// Invariant violations of a timeline (empty when consistent): every job run
/// exactly once and not before its release, no overlapping segments, runs
/// preceded by a setup for their class, batch windows respected.
std::vector<std::string> check_timeline(const TimedInstance& tinst, const Timeline& timeline);

struct RatioReport {
    /// timeline makespan / clairvoyant optimum (or its lower bound when the
    /// oracle ran out of budget)
    Rational ratio;
    std::int64_t online_makespan = 0;
    std::int64_t clairvoyant = 0;
    bool exact = false;
};

RatioReport competitive_ratio(const Timeline& timeline, const TimedInstance& tinst, SearchLimit limit = {});

}  // namespace setupsched
