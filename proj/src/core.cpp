#include "setupsched/core.hpp"

#include <algorithm>
#include <numeric>

namespace setupsched {

Instance validate_instance(int num_machines, std::int64_t setup, std::vector<Job> jobs) {
    if (num_machines < 1) throw InvalidInstance("number of machines must be >= 1");
    if (setup < 1) throw InvalidInstance("setup time must be >= 1");
    if (jobs.empty()) throw InvalidInstance("instance has no jobs");

    int k = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const Job& j = jobs[i];
        if (j.size < 1)
            throw InvalidInstance("job " + std::to_string(i) + " has non-positive size " + std::to_string(j.size));
        if (j.class_id < 0)
            throw InvalidInstance("job " + std::to_string(i) + " has negative class id");
        k = std::max(k, j.class_id + 1);
    }

    Instance inst;
    inst.num_machines_ = num_machines;
    inst.setup_ = setup;
    inst.class_members_.resize(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        jobs[i].id = static_cast<int>(i);
        inst.class_members_[static_cast<std::size_t>(jobs[i].class_id)].push_back(jobs[i].id);
    }
    for (int c = 0; c < k; ++c) {
        if (inst.class_members_[static_cast<std::size_t>(c)].empty())
            throw InvalidInstance("class " + std::to_string(c) + " has no jobs");
    }
    inst.jobs_ = std::move(jobs);
    return inst;
}

Instance Instance::from_classes(int num_machines, std::int64_t setup,
                                const std::vector<std::vector<std::int64_t>>& classes) {
    std::vector<Job> jobs;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        if (classes[c].empty()) throw InvalidInstance("class " + std::to_string(c) + " has no jobs");
        for (std::int64_t p : classes[c]) jobs.push_back(Job{0, p, static_cast<int>(c)});
    }
    return validate_instance(num_machines, setup, std::move(jobs));
}

std::vector<std::vector<std::int64_t>> Instance::class_sizes() const {
    std::vector<std::vector<std::int64_t>> out(class_members_.size());
    for (std::size_t c = 0; c < class_members_.size(); ++c)
        for (int id : class_members_[c]) out[c].push_back(job(id).size);
    return out;
}

InstanceProfile profile(const Instance& inst) {
    InstanceProfile prof;
    prof.class_workloads.assign(static_cast<std::size_t>(inst.num_classes()), 0);
    for (const Job& j : inst.jobs()) {
        prof.p_max = std::max(prof.p_max, j.size);
        prof.total_work += j.size;
        prof.class_workloads[static_cast<std::size_t>(j.class_id)] += j.size;
    }
    const std::int64_t w_max = *std::max_element(prof.class_workloads.begin(), prof.class_workloads.end());
    prof.gamma = Rational(w_max, trivial_lower_bound(inst));
    return prof;
}

std::int64_t trivial_lower_bound(const Instance& inst) {
    std::int64_t p_max = 0;
    std::int64_t total = 0;
    for (const Job& j : inst.jobs()) {
        p_max = std::max(p_max, j.size);
        total += j.size;
    }
    const std::int64_t m = inst.num_machines();
    const std::int64_t volume = inst.num_classes() * inst.setup() + total;
    return std::max(inst.setup() + p_max, (volume + m - 1) / m);
}

void Schedule::append_job(const Instance& inst, int machine, int job_id) {
    auto& seq = machines.at(static_cast<std::size_t>(machine));
    const int cls = inst.job(job_id).class_id;
    int configured = -1;
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
        if (it->is_setup()) {
            configured = it->id;
            break;
        }
    }
    if (configured != cls) seq.push_back(Segment::setup(cls));
    seq.push_back(Segment::run(job_id));
}

std::int64_t machine_span(const Instance& inst, const MachineSequence& seq) {
    std::int64_t span = 0;
    for (const Segment& seg : seq) {
        if (seg.is_setup()) {
            span += inst.setup();
        } else if (seg.id >= 0 && seg.id < inst.num_jobs()) {
            span += inst.job(seg.id).size;
        }
    }
    return span;
}

std::int64_t makespan(const Instance& inst, const Schedule& sched) {
    std::int64_t best = 0;
    for (const auto& seq : sched.machines) best = std::max(best, machine_span(inst, seq));
    return best;
}

VerifyReport verify_schedule(const Instance& inst, const Schedule& sched) {
    VerifyReport rep;
    if (static_cast<int>(sched.machines.size()) > inst.num_machines()) {
        rep.violations.push_back("schedule uses " + std::to_string(sched.machines.size()) + " machines but only " +
                                 std::to_string(inst.num_machines()) + " exist");
    }

    std::vector<int> seen(static_cast<std::size_t>(inst.num_jobs()), 0);
    for (std::size_t mi = 0; mi < sched.machines.size(); ++mi) {
        const auto& seq = sched.machines[mi];
        const std::string where = "machine " + std::to_string(mi);
        int configured = -1;
        bool prev_setup = false;
        int prev_setup_class = -1;
        for (std::size_t pos = 0; pos < seq.size(); ++pos) {
            const Segment& seg = seq[pos];
            const std::string at = where + " position " + std::to_string(pos);
            if (seg.is_setup()) {
                if (seg.id < 0 || seg.id >= inst.num_classes()) {
                    rep.violations.push_back(at + ": setup for unknown class " + std::to_string(seg.id));
                } else if (prev_setup && prev_setup_class == seg.id) {
                    rep.violations.push_back(at + ": two consecutive setups for class " + std::to_string(seg.id));
                }
                configured = seg.id;
                prev_setup = true;
                prev_setup_class = seg.id;
                continue;
            }
            prev_setup = false;
            if (seg.id < 0 || seg.id >= inst.num_jobs()) {
                rep.violations.push_back(at + ": unknown job " + std::to_string(seg.id));
                continue;
            }
            ++seen[static_cast<std::size_t>(seg.id)];
            const int cls = inst.job(seg.id).class_id;
            if (configured != cls) {
                rep.violations.push_back(at + ": run without preceding setup (job " + std::to_string(seg.id) +
                                         " of class " + std::to_string(cls) + ")");
            }
        }
        rep.per_machine_span.push_back(machine_span(inst, seq));
    }
    for (int id = 0; id < inst.num_jobs(); ++id) {
        const int count = seen[static_cast<std::size_t>(id)];
        if (count == 0) rep.violations.push_back("job " + std::to_string(id) + " is not scheduled");
        if (count > 1) rep.violations.push_back("job " + std::to_string(id) + " scheduled " + std::to_string(count) + " times");
    }
    while (static_cast<int>(rep.per_machine_span.size()) < inst.num_machines()) rep.per_machine_span.push_back(0);
    rep.makespan = rep.per_machine_span.empty()
                       ? 0
                       : *std::max_element(rep.per_machine_span.begin(), rep.per_machine_span.end());
    rep.feasible = rep.violations.empty();
    return rep;
}

Schedule normalize(const Instance& inst, const Schedule& sched) {
    Schedule out(static_cast<int>(sched.machines.size()));
    for (std::size_t mi = 0; mi < sched.machines.size(); ++mi) {
        for (const Segment& seg : sched.machines[mi]) {
            if (!seg.is_setup()) out.append_job(inst, static_cast<int>(mi), seg.id);
        }
    }
    return out;
}

}  // namespace setupsched
