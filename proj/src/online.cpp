#include "setupsched/online.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "setupsched/blocksched.hpp"
#include "setupsched/fptas.hpp"
#include "setupsched/greedy.hpp"

namespace setupsched {

TimedInstance make_timed(Instance inst, std::vector<std::int64_t> release) {
    if (static_cast<int>(release.size()) != inst.num_jobs())
        throw InvalidInstance("release list has " + std::to_string(release.size()) + " entries for " +
                              std::to_string(inst.num_jobs()) + " jobs");
    for (std::int64_t r : release)
        if (r < 0) throw InvalidInstance("release times must be non-negative");
    return TimedInstance{std::move(inst), std::move(release)};
}

OfflineSolver offline_exact(SearchLimit limit) {
    return {"exact", [limit](const Instance& in) { return exact_makespan(in, limit).schedule; }, Rational(0)};
}

OfflineSolver offline_block(int lambda) {
    const Rational eps = Rational(9, lambda) + Rational(8, static_cast<std::int64_t>(lambda) * lambda);
    return {"block", [lambda](const Instance& in) { return block::approx_schedule(in, lambda).schedule; }, eps};
}

OfflineSolver offline_fptas(Rational eps) {
    return {"fptas", [eps](const Instance& in) { return fptas_schedule(in, eps).schedule; }, eps};
}

OfflineSolver offline_greedy() {
    return {"greedy", [](const Instance& in) { return greedy_schedule(in).schedule; }, Rational(1)};
}

namespace {

void run_batch(const TimedInstance& tinst, const OfflineSolver& offline, Batch& batch, Timeline& tl) {
    const Instance& full = tinst.instance;
    std::sort(batch.jobs.begin(), batch.jobs.end());
    std::map<int, int> local_class;
    std::vector<Job> jobs;
    for (int id : batch.jobs) {
        const Job& j = full.job(id);
        auto [it, _] = local_class.try_emplace(j.class_id, static_cast<int>(local_class.size()));
        jobs.push_back(Job{0, j.size, it->second});
    }
    std::vector<int> global_class(local_class.size());
    for (auto [g, l] : local_class) global_class[static_cast<std::size_t>(l)] = g;

    const Instance sub = validate_instance(full.num_machines(), full.setup(), std::move(jobs));
    const Schedule sched = offline.solve(sub);

    std::int64_t finish = batch.start;
    for (std::size_t mi = 0; mi < sched.machines.size(); ++mi) {
        std::int64_t t = batch.start;
        for (const Segment& seg : sched.machines[mi]) {
            TimedSegment ts;
            ts.kind = seg.kind;
            ts.start = t;
            if (seg.is_setup()) {
                ts.id = global_class[static_cast<std::size_t>(seg.id)];
                t += full.setup();
            } else {
                ts.id = batch.jobs[static_cast<std::size_t>(seg.id)];
                t += sub.job(seg.id).size;
            }
            ts.end = t;
            tl.machines[mi].push_back(ts);
        }
        finish = std::max(finish, t);
    }
    batch.finish = finish;
}

}  // namespace

Timeline simulate_online(const TimedInstance& tinst, const OfflineSolver& offline) {
    const Instance& inst = tinst.instance;
    Timeline tl;
    tl.machines.resize(static_cast<std::size_t>(inst.num_machines()));

    std::vector<int> order(static_cast<std::size_t>(inst.num_jobs()));
    for (int i = 0; i < inst.num_jobs(); ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return tinst.release[static_cast<std::size_t>(a)] < tinst.release[static_cast<std::size_t>(b)];
    });

    std::size_t next = 0;
    std::int64_t lo = -1;
    std::int64_t clock = tinst.release[static_cast<std::size_t>(order.front())];
    while (next < order.size()) {
        Batch batch;
        // Idle until something is released.
        const std::int64_t first_release = tinst.release[static_cast<std::size_t>(order[next])];
        const std::int64_t hi = std::max(clock, first_release);
        batch.window_lo = lo;
        batch.window_hi = hi;
        batch.start = hi;
        while (next < order.size() && tinst.release[static_cast<std::size_t>(order[next])] <= hi)
            batch.jobs.push_back(order[next++]);
        run_batch(tinst, offline, batch, tl);
        lo = hi;
        clock = batch.finish;
        tl.batches.push_back(std::move(batch));
    }
    tl.makespan = clock;
    return tl;
}

std::vector<std::string> check_timeline(const TimedInstance& tinst, const Timeline& tl) {
    const Instance& inst = tinst.instance;
    std::vector<std::string> out;
    std::vector<int> runs(static_cast<std::size_t>(inst.num_jobs()), 0);
    std::int64_t last_end = 0;
    for (std::size_t mi = 0; mi < tl.machines.size(); ++mi) {
        std::int64_t t = std::numeric_limits<std::int64_t>::min();
        int configured = -1;
        for (const TimedSegment& seg : tl.machines[mi]) {
            const std::string where = "machine " + std::to_string(mi) + " at " + std::to_string(seg.start);
            if (seg.start < t) out.push_back(where + ": overlapping segments");
            t = seg.end;
            last_end = std::max(last_end, seg.end);
            if (seg.kind == Segment::Kind::Setup) {
                if (seg.end - seg.start != inst.setup()) out.push_back(where + ": setup has wrong length");
                configured = seg.id;
                continue;
            }
            const Job& j = inst.job(seg.id);
            ++runs[static_cast<std::size_t>(seg.id)];
            if (seg.end - seg.start != j.size) out.push_back(where + ": job has wrong length");
            if (seg.start < tinst.release[static_cast<std::size_t>(seg.id)])
                out.push_back(where + ": job " + std::to_string(seg.id) + " starts before its release");
            if (configured != j.class_id) out.push_back(where + ": run without preceding setup");
        }
    }
    for (int id = 0; id < inst.num_jobs(); ++id)
        if (runs[static_cast<std::size_t>(id)] != 1)
            out.push_back("job " + std::to_string(id) + " runs " + std::to_string(runs[static_cast<std::size_t>(id)]) + " times");

    std::vector<int> batch_of(static_cast<std::size_t>(inst.num_jobs()), -1);
    for (std::size_t b = 0; b < tl.batches.size(); ++b) {
        const Batch& batch = tl.batches[b];
        if (b > 0 && batch.window_lo != tl.batches[b - 1].window_hi) out.push_back("batch windows are not contiguous");
        if (batch.start < batch.window_hi) out.push_back("batch starts before its window closes");
        if (b > 0 && batch.start < tl.batches[b - 1].finish) out.push_back("batches overlap");
        for (int id : batch.jobs) {
            const std::int64_t r = tinst.release[static_cast<std::size_t>(id)];
            if (r <= batch.window_lo || r > batch.window_hi)
                out.push_back("job " + std::to_string(id) + " outside its batch window");
            batch_of[static_cast<std::size_t>(id)] = static_cast<int>(b);
        }
    }
    for (int id = 0; id < inst.num_jobs(); ++id)
        if (batch_of[static_cast<std::size_t>(id)] < 0) out.push_back("job " + std::to_string(id) + " in no batch");
    if (last_end != tl.makespan) out.push_back("makespan does not match the last segment");
    return out;
}

RatioReport competitive_ratio(const Timeline& timeline, const TimedInstance& tinst, SearchLimit limit) {
    const ExactTimedResult opt = exact_makespan_with_releases(tinst.instance, tinst.release, limit);
    RatioReport rep;
    rep.online_makespan = timeline.makespan;
    rep.exact = opt.optimal;
    rep.clairvoyant = opt.optimal ? opt.makespan : opt.lower_bound;
    rep.ratio = Rational(rep.online_makespan, rep.clairvoyant);
    return rep;
}

}  // namespace setupsched
