#include "setupsched/greedy.hpp"

#include <cassert>

namespace setupsched {

GreedyResult greedy_schedule(const Instance& inst) {
    GreedyResult res;
    res.lower = trivial_lower_bound(inst);
    res.schedule = Schedule(inst.num_machines());

    const std::int64_t block = res.lower;
    std::int64_t cursor = 0;
    for (int c = 0; c < inst.num_classes(); ++c) {
        if (c > 0) cursor += inst.setup();
        for (int id : inst.class_jobs(c)) {
            const auto machine = static_cast<int>(cursor / block);
            assert(machine < inst.num_machines());
            res.schedule.append_job(inst, machine, id);
            cursor += inst.job(id).size;
        }
    }
    res.upper = makespan(inst, res.schedule);
    return res;
}

}  // namespace setupsched
