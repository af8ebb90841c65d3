#include "setupsched/exact.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "setupsched/greedy.hpp"

namespace setupsched {

namespace {

class AssignmentSearch {
  public:
    AssignmentSearch(const Instance& inst, SearchLimit limit)
        : inst_(inst), limit_(limit), m_(inst.num_machines()), k_(inst.num_classes()) {
        order_.resize(static_cast<std::size_t>(inst.num_jobs()));
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(),
                         [&](int a, int b) { return inst.job(a).size > inst.job(b).size; });
        suffix_work_.assign(order_.size() + 1, 0);
        for (std::size_t i = order_.size(); i-- > 0;)
            suffix_work_[i] = suffix_work_[i + 1] + inst.job(order_[i]).size;

        span_.assign(static_cast<std::size_t>(m_), 0);
        jobs_on_.assign(static_cast<std::size_t>(m_), 0);
        class_count_.assign(static_cast<std::size_t>(m_ * k_), 0);
        class_machines_.assign(static_cast<std::size_t>(k_), 0);
        assignment_.assign(static_cast<std::size_t>(inst.num_jobs()), -1);
        lower_ = trivial_lower_bound(inst);
    }

    ExactResult run() {
        GreedyResult seed = greedy_schedule(inst_);
        incumbent_ = seed.upper;
        best_schedule_ = seed.schedule;
        if (incumbent_ > lower_) dfs(0, 0);

        ExactResult res;
        res.makespan = incumbent_;
        res.schedule = best_schedule_;
        res.optimal = !aborted_;
        res.lower_bound = aborted_ ? lower_ : incumbent_;
        res.nodes = nodes_;
        return res;
    }

  private:
    int& count(int machine, int cls) { return class_count_[static_cast<std::size_t>(machine * k_ + cls)]; }

    void dfs(std::size_t idx, int untouched_seen) {
        if (aborted_ || incumbent_ == lower_) return;
        if (++nodes_ > limit_.max_nodes) {
            aborted_ = true;
            return;
        }
        if (idx == order_.size()) {
            record();
            return;
        }

        const std::int64_t s = inst_.setup();
        std::int64_t max_span = 0;
        std::int64_t sum_span = 0;
        for (std::int64_t v : span_) {
            max_span = std::max(max_span, v);
            sum_span += v;
        }
        const std::int64_t untouched = k_ - untouched_seen;
        const std::int64_t volume = sum_span + suffix_work_[idx] + s * untouched;
        const std::int64_t bound = std::max(max_span, (volume + m_ - 1) / m_);
        if (bound >= incumbent_) return;

        const int job = order_[idx];
        const std::int64_t p = inst_.job(job).size;
        const int cls = inst_.job(job).class_id;

        std::vector<int> machines(static_cast<std::size_t>(m_));
        std::iota(machines.begin(), machines.end(), 0);
        std::stable_sort(machines.begin(), machines.end(),
                         [&](int a, int b) { return span_[static_cast<std::size_t>(a)] < span_[static_cast<std::size_t>(b)]; });

        bool tried_empty = false;
        for (int mi : machines) {
            const auto um = static_cast<std::size_t>(mi);
            if (jobs_on_[um] == 0) {
                if (tried_empty) continue;
                tried_empty = true;
            }
            const bool opens = count(mi, cls) == 0;
            const std::int64_t added = p + (opens ? s : 0);
            if (span_[um] + added >= incumbent_) continue;

            const bool first_of_class = class_machines_[static_cast<std::size_t>(cls)] == 0;
            span_[um] += added;
            ++jobs_on_[um];
            ++count(mi, cls);
            if (opens) ++class_machines_[static_cast<std::size_t>(cls)];
            assignment_[static_cast<std::size_t>(job)] = mi;

            dfs(idx + 1, untouched_seen + (first_of_class ? 1 : 0));

            assignment_[static_cast<std::size_t>(job)] = -1;
            if (opens) --class_machines_[static_cast<std::size_t>(cls)];
            --count(mi, cls);
            --jobs_on_[um];
            span_[um] -= added;
            if (aborted_ || incumbent_ == lower_) return;
        }
    }

    void record() {
        const std::int64_t value = *std::max_element(span_.begin(), span_.end());
        if (value >= incumbent_) return;
        incumbent_ = value;
        Schedule sched(m_);
        for (int c = 0; c < k_; ++c)
            for (int mi = 0; mi < m_; ++mi)
                for (int id : inst_.class_jobs(c))
                    if (assignment_[static_cast<std::size_t>(id)] == mi) sched.append_job(inst_, mi, id);
        best_schedule_ = std::move(sched);
    }

    const Instance& inst_;
    SearchLimit limit_;
    int m_;
    int k_;
    std::vector<int> order_;
    std::vector<std::int64_t> suffix_work_;
    std::vector<std::int64_t> span_;
    std::vector<int> jobs_on_;
    std::vector<int> class_count_;
    std::vector<int> class_machines_;
    std::vector<int> assignment_;
    std::int64_t incumbent_ = 0;
    std::int64_t lower_ = 0;
    Schedule best_schedule_;
    std::int64_t nodes_ = 0;
    bool aborted_ = false;
};

class SequenceSearch {
  public:
    SequenceSearch(const Instance& inst, const std::vector<std::int64_t>& release, SearchLimit limit)
        : inst_(inst), release_(release), limit_(limit), n_(inst.num_jobs()), m_(inst.num_machines()) {
        if (static_cast<int>(release.size()) != n_) throw InvalidInstance("release vector size does not match job count");
        for (std::int64_t r : release)
            if (r < 0) throw InvalidInstance("negative release time");
        used_.assign(static_cast<std::size_t>(n_), false);
    }

    ExactTimedResult run() {
        seed_incumbent();
        // A lower bound valid with and without releases.
        std::int64_t lb = trivial_lower_bound(inst_);
        for (int j = 0; j < n_; ++j)
            lb = std::max(lb, release_[static_cast<std::size_t>(j)] + inst_.job(j).size);
        lower_ = lb;

        current_.assign(1, {});
        if (incumbent_ > lower_) extend(0, 0, -1, 0, -1, 0);

        ExactTimedResult res;
        res.makespan = incumbent_;
        res.sequences = best_;
        res.sequences.resize(static_cast<std::size_t>(m_));
        res.optimal = !aborted_;
        res.lower_bound = aborted_ ? lower_ : incumbent_;
        res.nodes = nodes_;
        return res;
    }

  private:
    void seed_incumbent() {
        std::vector<int> order(static_cast<std::size_t>(n_));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return release_[static_cast<std::size_t>(a)] < release_[static_cast<std::size_t>(b)];
        });
        std::int64_t t = 0;
        int cls = -1;
        for (int j : order) {
            std::int64_t start = t + (inst_.job(j).class_id == cls ? 0 : inst_.setup());
            start = std::max(start, release_[static_cast<std::size_t>(j)]);
            t = start + inst_.job(j).size;
            cls = inst_.job(j).class_id;
        }
        incumbent_ = t;
        best_.assign(1, order);
    }

    // machine: index of the machine being filled; t/cls: its state;
    // done_max: largest completion on closed machines; first: first job of the
    // current machine (-1 when empty); placed: jobs placed so far.
    void extend(int machine, std::int64_t t, int cls, std::int64_t done_max, int first, int placed) {
        if (aborted_ || incumbent_ == lower_) return;
        if (++nodes_ > limit_.max_nodes) {
            aborted_ = true;
            return;
        }
        const std::int64_t current = std::max(done_max, t);
        if (placed == n_) {
            if (current < incumbent_) {
                incumbent_ = current;
                best_ = current_;
            }
            return;
        }
        if (current >= incumbent_) return;

        for (int j = 0; j < n_; ++j) {
            if (used_[static_cast<std::size_t>(j)]) continue;
            // Machines are identical: order them by their first job id.
            if (first < 0 && j < last_first_) continue;
            const Job& job = inst_.job(j);
            std::int64_t start = t + (job.class_id == cls ? 0 : inst_.setup());
            start = std::max(start, release_[static_cast<std::size_t>(j)]);
            const std::int64_t end = start + job.size;
            if (end >= incumbent_) continue;

            used_[static_cast<std::size_t>(j)] = true;
            current_.back().push_back(j);
            const int saved_last_first = last_first_;
            if (first < 0) last_first_ = j;
            extend(machine, end, job.class_id, done_max, first < 0 ? j : first, placed + 1);
            last_first_ = saved_last_first;
            current_.back().pop_back();
            used_[static_cast<std::size_t>(j)] = false;
            if (aborted_ || incumbent_ == lower_) return;
        }

        if (first >= 0 && machine + 1 < m_) {
            current_.emplace_back();
            extend(machine + 1, 0, -1, current, -1, placed);
            current_.pop_back();
        }
    }

    const Instance& inst_;
    const std::vector<std::int64_t>& release_;
    SearchLimit limit_;
    int n_;
    int m_;
    std::vector<bool> used_;
    std::vector<std::vector<int>> current_;
    std::vector<std::vector<int>> best_;
    int last_first_ = -1;
    std::int64_t incumbent_ = std::numeric_limits<std::int64_t>::max();
    std::int64_t lower_ = 0;
    std::int64_t nodes_ = 0;
    bool aborted_ = false;
};

}  // namespace

ExactResult exact_makespan(const Instance& inst, SearchLimit limit) { return AssignmentSearch(inst, limit).run(); }

ExactTimedResult exact_makespan_with_releases(const Instance& inst, const std::vector<std::int64_t>& release,
                                              SearchLimit limit) {
    return SequenceSearch(inst, release, limit).run();
}

}  // namespace setupsched
