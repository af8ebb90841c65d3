#include "setupsched/blocksched.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "setupsched/greedy.hpp"

namespace setupsched::block {

BudgetParams make_params(std::int64_t T, int lambda, std::int64_t p_max, std::int64_t setup) {
    if (lambda < 1) throw std::invalid_argument("lambda must be >= 1");
    if (T < 1) throw std::invalid_argument("candidate makespan must be >= 1");
    BudgetParams p;
    p.T = T;
    p.lambda = lambda;
    const Rational by_pmax(T + p_max - 1);
    const Rational by_half(3 * T, 2);
    p.three_halves = by_half <= by_pmax;
    p.B = std::min(by_pmax, by_half);
    const std::int64_t l = lambda;
    p.grid = p.B / (l * l);
    p.tiny = p.B / l;
    p.eps_eff = Rational(9, l) + Rational(8, l * l);
    p.budget = (1 + p.eps_eff) * p.B;

    p.unit = 2 * l * l;
    const Rational scale(p.unit);
    auto exact = [](const Rational& r) {
        assert(r.denominator() == 1);
        return r.numerator();
    };
    p.setup_u = setup * p.unit;
    p.grid_u = exact(p.grid * scale);
    p.tiny_u = exact(p.tiny * scale);
    p.budget_u = exact(p.budget * scale);
    return p;
}

BudgetParams make_params(const Instance& inst, std::int64_t T, int lambda) {
    return make_params(T, lambda, profile(inst).p_max, inst.setup());
}

JobClassification classify_jobs(const Instance& inst, const BudgetParams& params) {
    JobClassification out;
    out.classes.resize(static_cast<std::size_t>(inst.num_classes()));
    const std::int64_t T = params.T;
    const std::int64_t s = inst.setup();
    for (int c = 0; c < inst.num_classes(); ++c) {
        ClassSplit& split = out.classes[static_cast<std::size_t>(c)];
        for (int id : inst.class_jobs(c)) {
            const std::int64_t twice = 2 * inst.job(id).size;
            if (twice >= T) {
                split.huge.push_back(id);
            } else if (twice > T - 2 * s) {
                split.large.push_back(id);
                if (split.q < 0 || inst.job(id).size < inst.job(split.q).size) split.q = id;
            }
        }
    }
    return out;
}

std::int64_t WorkClass::workload_u() const {
    std::int64_t w = 0;
    for (const WorkJob& j : jobs) w += j.size_u;
    return w;
}

int WorkInstance::num_jobs() const {
    int n = 0;
    for (const WorkClass& c : classes) n += static_cast<int>(c.jobs.size());
    return n;
}

WorkInstance lift(const Instance& inst, const BudgetParams& params) {
    WorkInstance work;
    work.setup_u = params.to_units(inst.setup());
    for (int c = 0; c < inst.num_classes(); ++c) {
        WorkClass wc;
        wc.origin_class = c;
        for (int id : inst.class_jobs(c)) wc.jobs.push_back(WorkJob{params.to_units(inst.job(id).size), {id}});
        work.classes.push_back(std::move(wc));
    }
    return work;
}

std::string to_string(TransformKind kind) {
    switch (kind) {
        case TransformKind::IsolateHuge: return "isolate_huge";
        case TransformKind::IsolateQ: return "isolate_q";
        case TransformKind::GroupTinyJobs: return "group_tiny_jobs";
        case TransformKind::ConsolidateTinyClasses: return "consolidate_tiny_classes";
        case TransformKind::Round: return "round";
    }
    return "unknown";
}

const TransformEntry* TransformStack::find(TransformKind kind) const {
    for (const TransformEntry& e : entries)
        if (e.kind == kind) return &e;
    return nullptr;
}

namespace {

TransformEntry begin_entry(TransformKind kind, const WorkInstance& before) {
    TransformEntry e;
    e.kind = kind;
    e.classes_before = static_cast<int>(before.classes.size());
    e.jobs_before = before.num_jobs();
    return e;
}

void finish_entry(TransformEntry e, const WorkInstance& after, TransformStack& stack) {
    e.classes_after = static_cast<int>(after.classes.size());
    e.jobs_after = after.num_jobs();
    stack.entries.push_back(std::move(e));
}

// Moves every job whose (single) original member satisfies `pick` into its own
// class, appended after the existing ones.
WorkInstance isolate_if(const WorkInstance& work, const std::function<bool(int)>& pick) {
    WorkInstance out;
    out.setup_u = work.setup_u;
    std::vector<WorkClass> singles;
    for (const WorkClass& wc : work.classes) {
        WorkClass rest;
        rest.origin_class = wc.origin_class;
        for (const WorkJob& j : wc.jobs) {
            if (j.members.size() == 1 && pick(j.members.front())) {
                singles.push_back(WorkClass{{j}, wc.origin_class});
            } else {
                rest.jobs.push_back(j);
            }
        }
        if (!rest.jobs.empty()) out.classes.push_back(std::move(rest));
    }
    for (WorkClass& wc : singles) out.classes.push_back(std::move(wc));
    return out;
}

}  // namespace

WorkInstance isolate_special_jobs(const WorkInstance& work, const JobClassification& cls, TransformStack& stack) {
    std::vector<char> huge;
    std::vector<char> q;
    auto mark = [](std::vector<char>& v, int id) {
        if (static_cast<std::size_t>(id) >= v.size()) v.resize(static_cast<std::size_t>(id) + 1, 0);
        v[static_cast<std::size_t>(id)] = 1;
    };
    for (const ClassSplit& split : cls.classes) {
        for (int id : split.huge) mark(huge, id);
        if (split.q >= 0) mark(q, split.q);
    }
    auto in = [](const std::vector<char>& v, int id) {
        return static_cast<std::size_t>(id) < v.size() && v[static_cast<std::size_t>(id)] != 0;
    };

    TransformEntry e1 = begin_entry(TransformKind::IsolateHuge, work);
    WorkInstance step1 = isolate_if(work, [&](int id) { return in(huge, id); });
    finish_entry(std::move(e1), step1, stack);

    TransformEntry e2 = begin_entry(TransformKind::IsolateQ, step1);
    WorkInstance step2 = isolate_if(step1, [&](int id) { return in(q, id); });
    finish_entry(std::move(e2), step2, stack);
    return step2;
}

WorkInstance group_tiny_jobs(const WorkInstance& work, const BudgetParams& params, TransformStack& stack) {
    TransformEntry entry = begin_entry(TransformKind::GroupTinyJobs, work);
    const std::int64_t tiny = params.tiny_u;
    WorkInstance out;
    out.setup_u = work.setup_u;
    for (const WorkClass& wc : work.classes) {
        if (wc.placeholder() || wc.workload_u() <= tiny) {
            out.classes.push_back(wc);
            continue;
        }
        // (position of first member, job)
        std::vector<std::pair<std::size_t, WorkJob>> items;
        std::optional<std::size_t> first_big;
        WorkJob bundle;
        std::size_t bundle_pos = 0;
        for (std::size_t pos = 0; pos < wc.jobs.size(); ++pos) {
            const WorkJob& j = wc.jobs[pos];
            if (j.size_u > tiny) {
                if (!first_big) first_big = items.size();
                items.emplace_back(pos, j);
                continue;
            }
            if (bundle.members.empty()) bundle_pos = pos;
            bundle.size_u += j.size_u;
            bundle.members.insert(bundle.members.end(), j.members.begin(), j.members.end());
            if (bundle.size_u >= tiny) {
                items.emplace_back(bundle_pos, std::move(bundle));
                bundle = WorkJob{};
            }
        }
        if (!bundle.members.empty()) {
            // The class is not tiny, so some other job or bundle exists.
            WorkJob& dst = items[first_big.value_or(items.size() - 1)].second;
            dst.size_u += bundle.size_u;
            dst.members.insert(dst.members.end(), bundle.members.begin(), bundle.members.end());
        }
        std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        WorkClass grouped;
        grouped.origin_class = wc.origin_class;
        for (auto& it : items) grouped.jobs.push_back(std::move(it.second));
        out.classes.push_back(std::move(grouped));
    }
    finish_entry(std::move(entry), out, stack);
    return out;
}

WorkInstance consolidate_tiny_classes(const WorkInstance& work, const BudgetParams& params, TransformStack& stack) {
    TransformEntry entry = begin_entry(TransformKind::ConsolidateTinyClasses, work);
    const std::int64_t tiny = params.tiny_u;
    const std::int64_t s = work.setup_u;
    WorkInstance out;
    out.setup_u = s;

    if (tiny > s) {
        std::int64_t length = 0;
        for (const WorkClass& wc : work.classes) {
            const std::int64_t w = wc.workload_u();
            if (wc.placeholder() || w > tiny) {
                out.classes.push_back(wc);
                continue;
            }
            TinyClassRecord rec;
            rec.origin_class = wc.origin_class;
            rec.workload_u = w;
            for (const WorkJob& j : wc.jobs) rec.jobs.insert(rec.jobs.end(), j.members.begin(), j.members.end());
            entry.tiny_classes.push_back(std::move(rec));
            length += w + s;
        }
        const std::int64_t count = (length + tiny - 1) / tiny;
        for (std::int64_t i = 0; i < count; ++i) out.classes.push_back(WorkClass{{WorkJob{tiny - s, {}}}, -1});
    } else {
        for (const WorkClass& wc : work.classes) {
            if (wc.placeholder() || wc.workload_u() > tiny || wc.jobs.size() == 1) {
                out.classes.push_back(wc);
                continue;
            }
            WorkJob merged;
            for (const WorkJob& j : wc.jobs) {
                merged.size_u += j.size_u;
                merged.members.insert(merged.members.end(), j.members.begin(), j.members.end());
            }
            out.classes.push_back(WorkClass{{std::move(merged)}, wc.origin_class});
        }
    }
    finish_entry(std::move(entry), out, stack);
    return out;
}

RoundedWork round_to_grid(const WorkInstance& work, const BudgetParams& params, TransformStack& stack) {
    TransformEntry entry = begin_entry(TransformKind::Round, work);
    RoundedWork r;
    r.work = work;
    r.grid_u = params.grid_u;
    r.max_index = params.lambda * params.lambda;
    for (const WorkClass& wc : work.classes) {
        std::vector<int> idx;
        for (const WorkJob& j : wc.jobs) {
            const auto k = static_cast<int>((j.size_u + r.grid_u - 1) / r.grid_u);
            idx.push_back(std::max(k, 1));
            r.max_index = std::max(r.max_index, idx.back());
        }
        r.size_index.push_back(std::move(idx));
    }
    finish_entry(std::move(entry), r.work, stack);
    return r;
}

int ClassTypeTable::total_classes() const {
    int n = 0;
    for (const ClassType& t : types) n += t.multiplicity;
    return n;
}

ClassTypeTable ClassTypeTable::from_tuples(const std::vector<std::vector<int>>& tuples,
                                           const std::vector<int>& multiplicities, std::int64_t grid_u) {
    if (tuples.size() != multiplicities.size()) throw std::invalid_argument("tuple/multiplicity size mismatch");
    ClassTypeTable table;
    table.grid_u = grid_u;
    for (const auto& t : tuples) table.max_index = std::max(table.max_index, static_cast<int>(t.size()));
    int next_member = 0;
    for (std::size_t p = 0; p < tuples.size(); ++p) {
        ClassType ct;
        ct.counts = tuples[p];
        ct.counts.resize(static_cast<std::size_t>(table.max_index), 0);
        ct.multiplicity = multiplicities[p];
        for (std::size_t k = 0; k < ct.counts.size(); ++k)
            ct.workload_u += ct.counts[k] * static_cast<std::int64_t>(k + 1) * grid_u;
        for (int i = 0; i < ct.multiplicity; ++i) ct.members.push_back(next_member++);
        table.types.push_back(std::move(ct));
    }
    return table;
}

ClassTypeTable compute_class_types(const RoundedWork& rounded) {
    ClassTypeTable table;
    table.max_index = rounded.max_index;
    table.grid_u = rounded.grid_u;
    std::map<std::vector<int>, std::vector<int>> by_tuple;
    for (std::size_t c = 0; c < rounded.size_index.size(); ++c) {
        std::vector<int> counts(static_cast<std::size_t>(rounded.max_index), 0);
        for (int k : rounded.size_index[c]) ++counts[static_cast<std::size_t>(k - 1)];
        by_tuple[counts].push_back(static_cast<int>(c));
    }
    for (auto& [tuple, members] : by_tuple) {
        ClassType ct;
        ct.counts = tuple;
        ct.multiplicity = static_cast<int>(members.size());
        for (std::size_t k = 0; k < tuple.size(); ++k)
            ct.workload_u += tuple[k] * static_cast<std::int64_t>(k + 1) * table.grid_u;
        ct.members = members;
        table.types.push_back(std::move(ct));
    }
    return table;
}

std::size_t ConfigurationHash::operator()(const Configuration& c) const {
    std::size_t h = static_cast<std::size_t>(c.split_type + 1) * 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](int v) { h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    for (int v : c.finished) mix(v);
    for (int v : c.progress) mix(v);
    return h;
}

Configuration source_configuration(const ClassTypeTable& table) {
    Configuration c;
    c.finished.assign(table.types.size(), 0);
    c.progress.assign(static_cast<std::size_t>(table.max_index), 0);
    return c;
}

Configuration target_configuration(const ClassTypeTable& table) {
    Configuration c = source_configuration(table);
    for (std::size_t p = 0; p < table.types.size(); ++p) c.finished[p] = table.types[p].multiplicity;
    return c;
}

bool is_valid(const Configuration& c, const ClassTypeTable& table) {
    if (c.finished.size() != table.types.size()) return false;
    if (c.progress.size() != static_cast<std::size_t>(table.max_index)) return false;
    for (std::size_t p = 0; p < table.types.size(); ++p)
        if (c.finished[p] < 0 || c.finished[p] > table.types[p].multiplicity) return false;
    if (c.split_type < 0) {
        return std::all_of(c.progress.begin(), c.progress.end(), [](int v) { return v == 0; });
    }
    if (c.split_type >= table.num_types()) return false;
    const ClassType& t = table.types[static_cast<std::size_t>(c.split_type)];
    if (c.finished[static_cast<std::size_t>(c.split_type)] > t.multiplicity - 1) return false;
    bool any = false;
    bool short_somewhere = false;
    for (std::size_t k = 0; k < c.progress.size(); ++k) {
        if (c.progress[k] < 0 || c.progress[k] > t.counts[k]) return false;
        any = any || c.progress[k] > 0;
        short_somewhere = short_somewhere || c.progress[k] < t.counts[k];
    }
    return any && short_somewhere;
}

std::int64_t edge_load(const Configuration& from, const Configuration& to, const ClassTypeTable& table,
                       const BudgetParams& params) {
    std::int64_t load = 0;
    if (from.split_type != to.split_type || from.progress != to.progress) load += params.setup_u;
    for (std::size_t k = 0; k < from.progress.size(); ++k)
        load += (to.progress[k] - from.progress[k]) * static_cast<std::int64_t>(k + 1) * table.grid_u;
    for (std::size_t p = 0; p < table.types.size(); ++p)
        load += (to.finished[p] - from.finished[p]) * (params.setup_u + table.types[p].workload_u);
    return load;
}

namespace {

bool abandons_split(const Configuration& from, const Configuration& to) {
    if (from.split_type < 0) return false;
    if (from.split_type != to.split_type) return true;
    for (std::size_t k = 0; k < from.progress.size(); ++k)
        if (to.progress[k] < from.progress[k]) return true;
    return false;
}

}  // namespace

bool edge_feasible(const Configuration& from, const Configuration& to, const ClassTypeTable& table,
                   const BudgetParams& params) {
    if (from == to) return false;
    for (std::size_t p = 0; p < from.finished.size(); ++p)
        if (to.finished[p] < from.finished[p]) return false;
    if (abandons_split(from, to)) {
        const auto j = static_cast<std::size_t>(from.split_type);
        if (to.finished[j] < from.finished[j] + 1) return false;
    }
    return edge_load(from, to, table, params) <= params.budget_u;
}

std::vector<Configuration> successors(const Configuration& from, const ClassTypeTable& table,
                                      const BudgetParams& params) {
    std::vector<Configuration> out;
    const std::size_t P = table.types.size();
    const std::int64_t budget = params.budget_u;

    std::int64_t base = 0;
    for (std::size_t k = 0; k < from.progress.size(); ++k)
        base -= from.progress[k] * static_cast<std::int64_t>(k + 1) * table.grid_u;

    Configuration cand = from;
    cand.split_type = -1;
    std::fill(cand.progress.begin(), cand.progress.end(), 0);

    auto consider = [&](const Configuration& w) {
        if (is_valid(w, table) && edge_feasible(from, w, table, params)) out.push_back(w);
    };

    // Enumerate split-class progress vectors for type j of cand.
    std::function<void(int, std::size_t, std::int64_t)> enum_progress = [&](int j, std::size_t k, std::int64_t cost) {
        if (cost > budget) return;
        const ClassType& t = table.types[static_cast<std::size_t>(j)];
        if (k == cand.progress.size()) {
            consider(cand);
            return;
        }
        const int limit = t.counts[k];
        const std::int64_t step = static_cast<std::int64_t>(k + 1) * table.grid_u;
        for (int u = 0; u <= limit; ++u) {
            if (cost + u * step > budget) break;
            cand.progress[k] = u;
            enum_progress(j, k + 1, cost + u * step);
        }
        cand.progress[k] = 0;
    };

    std::function<void(std::size_t, std::int64_t)> enum_finished = [&](std::size_t p, std::int64_t cost) {
        if (cost > budget) return;
        if (p == P) {
            cand.split_type = -1;
            consider(cand);
            for (std::size_t j = 0; j < P; ++j) {
                if (cand.finished[j] > table.types[j].multiplicity - 1) continue;
                cand.split_type = static_cast<int>(j);
                enum_progress(static_cast<int>(j), 0, cost);
            }
            cand.split_type = -1;
            return;
        }
        const std::int64_t per_class = params.setup_u + table.types[p].workload_u;
        const int lo = from.finished[p];
        for (int n = lo; n <= table.types[p].multiplicity; ++n) {
            const std::int64_t c = cost + (n - lo) * per_class;
            if (c > budget) break;
            cand.finished[p] = n;
            enum_finished(p + 1, c);
        }
        cand.finished[p] = lo;
    };

    enum_finished(0, base);
    return out;
}

BfsResult bfs_block_schedule(const ClassTypeTable& table, const BudgetParams& params, int num_machines) {
    BfsResult res;
    const Configuration source = source_configuration(table);
    const Configuration target = target_configuration(table);

    std::vector<Configuration> nodes{source};
    std::vector<int> parent{-1};
    std::vector<int> depth{0};
    std::unordered_map<Configuration, int, ConfigurationHash> seen{{source, 0}};
    std::deque<int> queue{0};
    int found = source == target ? 0 : -1;

    while (!queue.empty() && found < 0) {
        const int cur = queue.front();
        queue.pop_front();
        if (depth[static_cast<std::size_t>(cur)] >= num_machines) continue;
        const Configuration node = nodes[static_cast<std::size_t>(cur)];
        for (Configuration& next : successors(node, table, params)) {
            if (seen.contains(next)) continue;
            const int id = static_cast<int>(nodes.size());
            seen.emplace(next, id);
            const bool hit = next == target;
            nodes.push_back(std::move(next));
            parent.push_back(cur);
            depth.push_back(depth[static_cast<std::size_t>(cur)] + 1);
            if (hit) {
                found = id;
                break;
            }
            queue.push_back(id);
        }
    }
    res.visited = nodes.size();
    if (found < 0) return res;
    for (int at = found; at >= 0; at = parent[static_cast<std::size_t>(at)])
        res.path.push_back(nodes[static_cast<std::size_t>(at)]);
    std::reverse(res.path.begin(), res.path.end());
    return res;
}

BlockAssignment assign_from_path(const std::vector<Configuration>& path, const ClassTypeTable& table,
                                 const RoundedWork& rounded) {
    BlockAssignment out;
    if (path.empty()) return out;
    const std::size_t P = table.types.size();
    std::vector<std::size_t> next_fresh(P, 0);

    auto take_fresh = [&](int type) {
        const ClassType& t = table.types[static_cast<std::size_t>(type)];
        std::size_t& at = next_fresh[static_cast<std::size_t>(type)];
        if (at >= t.members.size()) throw std::logic_error("path consumes more classes than the type holds");
        return t.members[at++];
    };
    auto all_jobs = [&](int cls) {
        std::vector<int> jobs(rounded.size_index[static_cast<std::size_t>(cls)].size());
        std::iota(jobs.begin(), jobs.end(), 0);
        return jobs;
    };

    // The open split class and, per grid index, its jobs not yet placed.
    int split_class = -1;
    std::vector<std::deque<int>> remaining;
    auto open_split = [&](int cls) {
        split_class = cls;
        remaining.assign(static_cast<std::size_t>(rounded.max_index), {});
        const auto& idx = rounded.size_index[static_cast<std::size_t>(cls)];
        for (std::size_t j = 0; j < idx.size(); ++j) remaining[static_cast<std::size_t>(idx[j] - 1)].push_back(static_cast<int>(j));
    };
    auto take_progress = [&](const std::vector<int>& delta) {
        std::vector<int> jobs;
        for (std::size_t k = 0; k < delta.size(); ++k) {
            for (int i = 0; i < delta[k]; ++i) {
                if (remaining[k].empty()) throw std::logic_error("split class has no job of the requested size");
                jobs.push_back(remaining[k].front());
                remaining[k].pop_front();
            }
        }
        std::sort(jobs.begin(), jobs.end());
        return jobs;
    };
    auto drain_split = [&]() {
        std::vector<int> jobs;
        for (auto& q : remaining) {
            jobs.insert(jobs.end(), q.begin(), q.end());
            q.clear();
        }
        std::sort(jobs.begin(), jobs.end());
        return jobs;
    };

    for (std::size_t e = 1; e < path.size(); ++e) {
        const Configuration& v = path[e - 1];
        const Configuration& w = path[e];
        std::vector<BlockAssignment::Item> items;
        std::vector<int> delta(P);
        for (std::size_t p = 0; p < P; ++p) delta[p] = w.finished[p] - v.finished[p];

        bool keep_split = false;
        if (v.split_type >= 0) {
            if (!abandons_split(v, w)) {
                keep_split = true;
                if (v.progress != w.progress) {
                    std::vector<int> step(v.progress.size());
                    for (std::size_t k = 0; k < step.size(); ++k) step[k] = w.progress[k] - v.progress[k];
                    items.push_back({split_class, take_progress(step)});
                }
            } else {
                std::vector<int> rest = drain_split();
                if (!rest.empty()) items.push_back({split_class, std::move(rest)});
                --delta[static_cast<std::size_t>(v.split_type)];
                split_class = -1;
            }
        }
        for (std::size_t p = 0; p < P; ++p) {
            for (int i = 0; i < delta[p]; ++i) {
                const int cls = take_fresh(static_cast<int>(p));
                items.push_back({cls, all_jobs(cls)});
            }
        }
        if (w.split_type >= 0 && !keep_split) {
            open_split(take_fresh(w.split_type));
            items.push_back({split_class, take_progress(w.progress)});
        }
        out.machines.push_back(std::move(items));
    }
    return out;
}

Schedule expand_assignment(const BlockAssignment& assignment, const RoundedWork& rounded,
                           const TransformStack& stack, const BudgetParams& params, const Instance& inst) {
    const int m = inst.num_machines();
    if (static_cast<int>(assignment.machines.size()) > m) throw std::logic_error("assignment uses too many machines");
    const WorkInstance& work = rounded.work;

    // Distribute recorded tiny classes over the machines holding placeholders:
    // machine i owns the window of length (#placeholders on i) * B/lambda, and a
    // tiny class goes to the machine whose window contains its start.
    std::vector<std::vector<const TinyClassRecord*>> tiny_for(static_cast<std::size_t>(m));
    if (const TransformEntry* cons = stack.find(TransformKind::ConsolidateTinyClasses);
        cons && !cons->tiny_classes.empty()) {
        std::vector<std::int64_t> window_end;
        std::int64_t acc = 0;
        for (const auto& items : assignment.machines) {
            for (const auto& it : items)
                if (work.classes[static_cast<std::size_t>(it.work_class)].placeholder()) acc += params.tiny_u;
            window_end.push_back(acc);
        }
        std::int64_t pos = 0;
        std::size_t mi = 0;
        for (const TinyClassRecord& rec : cons->tiny_classes) {
            while (mi < window_end.size() && pos >= window_end[mi]) ++mi;
            if (mi == window_end.size()) throw std::logic_error("tiny classes exceed placeholder capacity");
            tiny_for[mi].push_back(&rec);
            pos += rec.workload_u + work.setup_u;
        }
    }

    Schedule sched(m);
    for (std::size_t mi = 0; mi < assignment.machines.size(); ++mi) {
        bool tiny_done = false;
        for (const auto& it : assignment.machines[mi]) {
            const WorkClass& wc = work.classes[static_cast<std::size_t>(it.work_class)];
            if (wc.placeholder()) {
                if (tiny_done) continue;
                tiny_done = true;
                for (const TinyClassRecord* rec : tiny_for[mi])
                    for (int id : rec->jobs) sched.append_job(inst, static_cast<int>(mi), id);
                continue;
            }
            for (int j : it.jobs)
                for (int id : wc.jobs[static_cast<std::size_t>(j)].members) sched.append_job(inst, static_cast<int>(mi), id);
        }
    }
    return sched;
}

Rational certified_bound(const BudgetParams& params) {
    return params.budget + params.tiny + Rational(params.setup_u, params.unit);
}

DecisionOutcome block_decision(const Instance& inst, std::int64_t T, int lambda, DecisionTrace* trace) {
    if (T < trivial_lower_bound(inst)) return DecisionOutcome::no();

    DecisionTrace local;
    DecisionTrace& tr = trace ? *trace : local;
    tr = DecisionTrace{};
    tr.params = make_params(inst, T, lambda);
    const BudgetParams& params = tr.params;

    WorkInstance work = lift(inst, params);
    if (params.three_halves) work = isolate_special_jobs(work, classify_jobs(inst, params), tr.stack);
    work = group_tiny_jobs(work, params, tr.stack);
    work = consolidate_tiny_classes(work, params, tr.stack);
    tr.transformed = work;
    tr.rounded = round_to_grid(work, params, tr.stack);
    tr.table = compute_class_types(tr.rounded);
    tr.bfs = bfs_block_schedule(tr.table, params, inst.num_machines());
    if (!tr.bfs.found()) return DecisionOutcome::no();

    tr.assignment = assign_from_path(tr.bfs.path, tr.table, tr.rounded);
    Schedule sched = expand_assignment(*tr.assignment, tr.rounded, tr.stack, params, inst);

    const VerifyReport rep = verify_schedule(inst, sched);
    const Rational bound = certified_bound(params);
    if (!rep.feasible) throw std::logic_error("block schedule failed verification: " + rep.violations.front());
    if (Rational(rep.makespan) > bound) {
        throw std::logic_error("block schedule makespan " + std::to_string(rep.makespan) +
                               " exceeds certified bound at T=" + std::to_string(T));
    }
    return DecisionOutcome::accept(std::move(sched), bound);
}

ApproxResult approx_schedule(const Instance& inst, int lambda) {
    if (lambda < 2) throw std::invalid_argument("lambda must be >= 2");
    const GreedyResult g = greedy_schedule(inst);
    SearchResult sr = binary_search_makespan(
        inst, [lambda](const Instance& in, std::int64_t T) { return block_decision(in, T, lambda); }, g.lower,
        g.upper);
    return ApproxResult{std::move(sr.schedule), sr.t_star, sr.certified_bound, sr.probes};
}

}  // namespace setupsched::block
