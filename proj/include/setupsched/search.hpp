#pragma once

#include <functional>
#include <optional>
#include <stdexcept>

#include "setupsched/core.hpp"

namespace setupsched {

/// Answer of a relaxed decision procedure for a candidate makespan T.
/// A "no" certifies OPT > T. A "yes" carries a feasible schedule whose
/// makespan is at most `certified_bound`.
struct DecisionOutcome {
    struct Yes {
        Schedule schedule;
        Rational certified_bound;
    };
    std::optional<Yes> yes;

    static DecisionOutcome no() { return {}; }
    static DecisionOutcome accept(Schedule sched, Rational bound) { return {Yes{std::move(sched), bound}}; }
    bool is_yes() const { return yes.has_value(); }
};

using DecisionProcedure = std::function<DecisionOutcome(const Instance&, std::int64_t)>;

struct SearchResult {
    Schedule schedule;
    /// candidate makespan whose "yes" produced `schedule`
    std::int64_t t_star = 0;
    Rational certified_bound;
    int probes = 0;
};

/// Raised when the procedure answers "no" at the top of the search interval.
class DecisionContractError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Bisects over integer candidates in [lo, hi]. Does not assume `decide` is
/// monotone: returns the yes-answer with the smallest certified bound among
/// all probes. Uses at most ceil(log2(hi - lo + 1)) + 1 probes.
SearchResult binary_search_makespan(const Instance& inst, const DecisionProcedure& decide, std::int64_t lo,
                                    std::int64_t hi);

}  // namespace setupsched
