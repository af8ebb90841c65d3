#pragma once

#include <cstdint>
#include <vector>

#include "setupsched/core.hpp"

namespace setupsched {

struct SearchLimit {
    std::int64_t max_nodes = 50'000'000;
};

struct ExactResult {
    std::int64_t makespan = 0;
    Schedule schedule;
    /// false when the node budget ran out; `makespan` is then only an upper
    /// bound and `lower_bound` the best proven lower bound
    bool optimal = false;
    std::int64_t lower_bound = 0;
    std::int64_t nodes = 0;
};

/// Branch and bound over job-to-machine assignments. A machine's span is its
/// assigned work plus s times the number of distinct classes on it, so no
/// sequencing is needed. Jobs are branched in descending size order.
ExactResult exact_makespan(const Instance& inst, SearchLimit limit = {});

struct ExactTimedResult {
    std::int64_t makespan = 0;
    /// job ids per machine, in processing order
    std::vector<std::vector<int>> sequences;
    bool optimal = false;
    std::int64_t lower_bound = 0;
    std::int64_t nodes = 0;
};

/// Clairvoyant optimum when job j may not start before release[j]. A setup
/// may run before the job's release. Enumerates per-machine sequences; meant
/// for n <= ~9.
ExactTimedResult exact_makespan_with_releases(const Instance& inst, const std::vector<std::int64_t>& release,
                                              SearchLimit limit = {});

}  // namespace setupsched
