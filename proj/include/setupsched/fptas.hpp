#pragma once

#include <cstdint>
#include <vector>

#include "setupsched/core.hpp"

namespace setupsched {

/// Setup and job sizes rounded up to integer multiples of `grid`, stored as
/// grid counts so all comparisons stay exact.
struct RoundedInstance {
    Rational grid;
    std::int64_t setup_units = 0;
    /// indexed by job id
    std::vector<std::int64_t> job_units;

    Rational value(std::int64_t units) const { return grid * units; }
};

/// grid = eps * T / (n + k)
RoundedInstance round_instance_fptas(const Instance& inst, std::int64_t T, Rational eps);

struct FptasOptions {
    /// false disables dominance pruning and machine canonicalization
    /// (exhaustive enumeration, for cross-checks on tiny instances)
    bool prune = true;
};

struct FptasResult {
    Schedule schedule;
    RoundedInstance rounded;
    /// smallest rounded makespan over the final state set, in grid units
    std::int64_t rounded_makespan_units = 0;
    /// state-set size after each job
    std::vector<std::size_t> layer_sizes;
};

/// Class-ordered enumeration of partial schedules over rounded sizes with
/// dominance pruning. Makespan <= (1 + eps) * OPT. Exponential in m.
FptasResult fptas_schedule(const Instance& inst, Rational eps, FptasOptions opts = {});

}  // namespace setupsched
