#include "setupsched/search.hpp"

#include <set>
#include <string>

namespace setupsched {

SearchResult binary_search_makespan(const Instance& inst, const DecisionProcedure& decide, std::int64_t lo,
                                    std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("empty search interval");

    std::optional<SearchResult> best;
    std::set<std::int64_t> probed;
    int probes = 0;
    auto probe = [&](std::int64_t t) {
        ++probes;
        probed.insert(t);
        DecisionOutcome out = decide(inst, t);
        if (!out.is_yes()) return false;
        if (!best || out.yes->certified_bound < best->certified_bound) {
            best = SearchResult{std::move(out.yes->schedule), t, out.yes->certified_bound, 0};
        }
        return true;
    };

    const std::int64_t top = hi;
    while (lo < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (probe(mid)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    if (!probed.contains(lo)) {
        const bool ok = probe(lo);
        if (!ok && lo == top && !best) {
            throw DecisionContractError("decision procedure answered no at the upper end T=" + std::to_string(top));
        }
    }
    if (!best) {
        throw DecisionContractError("decision procedure never answered yes on [" + std::to_string(lo) + ", " +
                                    std::to_string(top) + "]");
    }
    best->probes = probes;
    return std::move(*best);
}

}  // namespace setupsched
