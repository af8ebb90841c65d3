#pragma once

#include "setupsched/core.hpp"

namespace setupsched {

struct GreedyResult {
    Schedule schedule;
    /// trivial lower bound; OPT lies in [lower, upper]
    std::int64_t lower = 0;
    /// makespan of `schedule`, always < 2 * lower
    std::int64_t upper = 0;
};

/// Lays the classes out as one sequence w(C_1), s, w(C_2), s, ..., cuts it
/// into blocks of length T = trivial_lower_bound and gives block i to
/// machine i. A job belongs to the block in which it starts; each machine
/// gets a fresh setup at time 0. Runs in O(n).
GreedyResult greedy_schedule(const Instance& inst);

}  // namespace setupsched
