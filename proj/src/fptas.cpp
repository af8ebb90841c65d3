#include "setupsched/fptas.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "setupsched/greedy.hpp"

namespace setupsched {

RoundedInstance round_instance_fptas(const Instance& inst, std::int64_t T, Rational eps) {
    if (T < 1) throw std::invalid_argument("candidate makespan must be >= 1");
    if (eps <= 0) throw std::invalid_argument("eps must be positive");
    RoundedInstance r;
    r.grid = eps * T / static_cast<std::int64_t>(inst.num_jobs() + inst.num_classes());
    r.setup_units = ceil_of(Rational(inst.setup()) / r.grid);
    r.job_units.reserve(inst.jobs().size());
    for (const Job& j : inst.jobs()) r.job_units.push_back(ceil_of(Rational(j.size) / r.grid));
    return r;
}

namespace {

struct Slot {
    std::int64_t load = 0;
    bool ready = false;  // set up for the class currently being placed

    friend auto operator<=>(const Slot&, const Slot&) = default;
};

struct PartialState {
    std::vector<Slot> slots;
    int parent = -1;
    /// slot (in this state's order) that received the job
    int placed = -1;
    /// origin[q] = parent slot index of slot q
    std::vector<std::uint8_t> origin;
};

// Sorts slots ascending and records where each came from.
void canonicalize(PartialState& st) {
    const std::size_t m = st.slots.size();
    std::vector<std::uint8_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](std::uint8_t a, std::uint8_t b) { return st.slots[a] < st.slots[b]; });
    std::vector<Slot> slots(m);
    std::vector<std::uint8_t> origin(m);
    int placed = -1;
    for (std::size_t q = 0; q < m; ++q) {
        slots[q] = st.slots[perm[q]];
        origin[q] = st.origin[perm[q]];
        if (perm[q] == st.placed) placed = static_cast<int>(q);
    }
    st.slots = std::move(slots);
    st.origin = std::move(origin);
    st.placed = placed;
}

}  // namespace

FptasResult fptas_schedule(const Instance& inst, Rational eps, FptasOptions opts) {
    const int m = inst.num_machines();
    if (m > 16) throw std::invalid_argument("fptas supports at most 16 machines");

    const std::int64_t T = trivial_lower_bound(inst);
    FptasResult res;
    res.rounded = round_instance_fptas(inst, T, eps);
    const RoundedInstance& rnd = res.rounded;

    // An optimal schedule has rounded makespan <= OPT + eps*T <= greedy + eps*T.
    const std::int64_t upper = greedy_schedule(inst).upper;
    const std::int64_t cap_units = floor_of((Rational(upper) + eps * T) / rnd.grid);

    std::vector<int> order;
    for (int c = 0; c < inst.num_classes(); ++c)
        for (int id : inst.class_jobs(c)) order.push_back(id);
    const std::size_t n = order.size();

    std::vector<std::vector<PartialState>> layers(n);
    PartialState root;
    root.slots.assign(static_cast<std::size_t>(m), Slot{});
    root.origin.resize(static_cast<std::size_t>(m));
    std::iota(root.origin.begin(), root.origin.end(), 0);

    for (std::size_t i = 0; i < n; ++i) {
        const int job = order[i];
        const int cls = inst.job(job).class_id;
        const bool boundary = i == 0 || inst.job(order[i - 1]).class_id != cls;
        const bool continues = i + 1 < n && inst.job(order[i + 1]).class_id == cls;
        const std::int64_t p = rnd.job_units[static_cast<std::size_t>(job)];

        std::vector<PartialState>& next = layers[i];
        std::map<std::vector<std::int64_t>, std::size_t> index;

        auto offer = [&](PartialState child) {
            for (const Slot& sl : child.slots)
                if (sl.load > cap_units) return;
            if (!opts.prune) {
                next.push_back(std::move(child));
                return;
            }
            if (!continues)
                for (Slot& sl : child.slots) sl.ready = false;
            canonicalize(child);
            // Dominance: same first m-1 slots (and same readiness when the class
            // continues), keep the smaller last load.
            std::vector<std::int64_t> key;
            key.reserve(child.slots.size());
            for (std::size_t q = 0; q + 1 < child.slots.size(); ++q)
                key.push_back(child.slots[q].load * 2 + (child.slots[q].ready ? 1 : 0));
            key.push_back(child.slots.back().ready ? 1 : 0);
            auto [it, inserted] = index.try_emplace(std::move(key), next.size());
            if (inserted) {
                next.push_back(std::move(child));
            } else if (child.slots.back().load < next[it->second].slots.back().load) {
                next[it->second] = std::move(child);
            }
        };

        const std::vector<PartialState> seed{root};
        const std::vector<PartialState>& prev = i == 0 ? seed : layers[i - 1];
        for (std::size_t pi = 0; pi < prev.size(); ++pi) {
            const PartialState& parent = prev[pi];
            PartialState base;
            base.parent = static_cast<int>(pi);
            base.origin.resize(static_cast<std::size_t>(m));
            std::iota(base.origin.begin(), base.origin.end(), 0);
            if (boundary) {
                for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
                    base.slots = parent.slots;
                    for (int q = 0; q < m; ++q) {
                        const bool set = (mask >> q) & 1u;
                        base.slots[static_cast<std::size_t>(q)].ready = set;
                        if (set) base.slots[static_cast<std::size_t>(q)].load += rnd.setup_units;
                    }
                    for (int q = 0; q < m; ++q) {
                        if (!((mask >> q) & 1u)) continue;
                        PartialState child = base;
                        child.slots[static_cast<std::size_t>(q)].load += p;
                        child.placed = q;
                        offer(std::move(child));
                    }
                }
            } else {
                for (int q = 0; q < m; ++q) {
                    if (!parent.slots[static_cast<std::size_t>(q)].ready) continue;
                    PartialState child = base;
                    child.slots = parent.slots;
                    child.slots[static_cast<std::size_t>(q)].load += p;
                    child.placed = q;
                    offer(std::move(child));
                }
            }
        }
        res.layer_sizes.push_back(next.size());
    }

    const std::vector<PartialState>& last = layers[n - 1];
    std::size_t best = 0;
    std::int64_t best_value = -1;
    for (std::size_t si = 0; si < last.size(); ++si) {
        std::int64_t v = 0;
        for (const Slot& sl : last[si].slots) v = std::max(v, sl.load);
        if (best_value < 0 || v < best_value) {
            best_value = v;
            best = si;
        }
    }
    res.rounded_makespan_units = best_value;

    // Walk the provenance chain back, tracking which machine each slot is.
    std::vector<int> machine_of(static_cast<std::size_t>(m));
    std::iota(machine_of.begin(), machine_of.end(), 0);
    std::vector<int> assigned(n, -1);
    int cursor = static_cast<int>(best);
    for (std::size_t i = n; i-- > 0;) {
        const PartialState& st = layers[i][static_cast<std::size_t>(cursor)];
        assigned[order[i]] = machine_of[static_cast<std::size_t>(st.placed)];
        std::vector<int> parent_machine(static_cast<std::size_t>(m));
        for (std::size_t q = 0; q < static_cast<std::size_t>(m); ++q) parent_machine[st.origin[q]] = machine_of[q];
        machine_of = std::move(parent_machine);
        cursor = st.parent;
    }

    res.schedule = Schedule(m);
    for (int job : order) res.schedule.append_job(inst, assigned[static_cast<std::size_t>(job)], job);
    return res;
}

}  // namespace setupsched
