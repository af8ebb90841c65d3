#pragma once

// Block-schedule decision procedure and the approximation algorithm built on
// it.
//
// For a candidate makespan T the instance is rewritten (huge and smallest
// large jobs isolated, tiny jobs bundled, tiny classes consolidated, sizes
// rounded to a grid), classes are collapsed into class-types, and a
// breadth-first search over prefix configurations looks for a block-schedule
// that uses at most m machines. A found path is unwound back into a schedule
// of the original instance.
//
// All sizes inside this module are kept in integer "units" of
// 1 / (2 * lambda^2) time steps, so B = min(T + p_max - 1, 3T/2), the grid
// B / lambda^2 and the tiny threshold B / lambda are all exact integers.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "setupsched/core.hpp"
#include "setupsched/search.hpp"

namespace setupsched::block {

struct BudgetParams {
    std::int64_t T = 0;
    int lambda = 0;
    /// B = min(T + p_max - 1, 3T/2)
    Rational B;
    /// B / lambda^2
    Rational grid;
    /// B / lambda
    Rational tiny;
    /// 9/lambda + 8/lambda^2
    Rational eps_eff;
    /// (1 + eps_eff) * B
    Rational budget;
    /// true when B is the 3T/2 branch; huge/large isolation only runs then
    bool three_halves = false;

    // Same quantities in units of 1 / (2 lambda^2).
    std::int64_t unit = 0;
    std::int64_t setup_u = 0;
    std::int64_t grid_u = 0;
    std::int64_t tiny_u = 0;
    std::int64_t budget_u = 0;

    std::int64_t to_units(std::int64_t time) const { return time * unit; }
    Rational from_units(std::int64_t units) const { return Rational(units, unit); }
};

BudgetParams make_params(std::int64_t T, int lambda, std::int64_t p_max, std::int64_t setup);
BudgetParams make_params(const Instance& inst, std::int64_t T, int lambda);

/// Huge and large jobs of one original class at candidate T.
struct ClassSplit {
    /// p >= T/2
    std::vector<int> huge;
    /// T/2 - s < p < T/2
    std::vector<int> large;
    /// smallest large job (lowest id on ties), -1 if none
    int q = -1;
};

struct JobClassification {
    std::vector<ClassSplit> classes;
};

JobClassification classify_jobs(const Instance& inst, const BudgetParams& params);

/// One job of a rewritten instance. `members` are the original job ids it
/// stands for; its size is their exact sum unless the class is a placeholder.
struct WorkJob {
    std::int64_t size_u = 0;
    std::vector<int> members;
};

struct WorkClass {
    std::vector<WorkJob> jobs;
    /// original class id, -1 for a consolidation placeholder
    int origin_class = -1;

    bool placeholder() const { return origin_class < 0; }
    std::int64_t workload_u() const;
};

struct WorkInstance {
    std::vector<WorkClass> classes;
    std::int64_t setup_u = 0;

    int num_jobs() const;
};

/// Direct image of `inst` in units.
WorkInstance lift(const Instance& inst, const BudgetParams& params);

enum class TransformKind { IsolateHuge, IsolateQ, GroupTinyJobs, ConsolidateTinyClasses, Round };

std::string to_string(TransformKind kind);

/// A tiny class removed by consolidation; restored in recorded order.
struct TinyClassRecord {
    int origin_class = -1;
    std::vector<int> jobs;
    std::int64_t workload_u = 0;
};

struct TransformEntry {
    TransformKind kind = TransformKind::Round;
    int classes_before = 0;
    int classes_after = 0;
    int jobs_before = 0;
    int jobs_after = 0;
    /// ConsolidateTinyClasses only, when B/lambda > s
    std::vector<TinyClassRecord> tiny_classes;
};

/// Rewrites applied to reach the rounded instance. Job-level inverses live in
/// WorkJob::members and WorkClass::origin_class; this records the steps and
/// the data that cannot be recovered from members (consolidated tiny classes).
struct TransformStack {
    std::vector<TransformEntry> entries;

    const TransformEntry* find(TransformKind kind) const;
};

/// Moves every huge job and every class's smallest large job into a fresh
/// singleton class. Emptied classes disappear; new classes go at the end.
WorkInstance isolate_special_jobs(const WorkInstance& work, const JobClassification& cls, TransformStack& stack);

/// Within each non-tiny class, packs tiny jobs greedily into bundles of size in
/// [B/lambda, 2B/lambda). An underweight final bundle is merged into the first
/// non-tiny job of the class, or into the last bundle when there is none.
WorkInstance group_tiny_jobs(const WorkInstance& work, const BudgetParams& params, TransformStack& stack);

/// If B/lambda > s: replaces all tiny classes by ceil(L / (B/lambda))
/// singleton placeholder classes of size B/lambda - s, where L is the summed
/// workload-plus-setup of the tiny classes. Otherwise collapses each tiny
/// class into a single job.
WorkInstance consolidate_tiny_classes(const WorkInstance& work, const BudgetParams& params, TransformStack& stack);

/// Work instance with every job size replaced by its grid index
/// k = ceil(size / grid).
struct RoundedWork {
    WorkInstance work;
    /// size_index[c][j] for job j of class c
    std::vector<std::vector<int>> size_index;
    /// largest admissible index: max(lambda^2, largest index present)
    int max_index = 0;
    std::int64_t grid_u = 0;
};

RoundedWork round_to_grid(const WorkInstance& work, const BudgetParams& params, TransformStack& stack);

struct ClassType {
    /// counts[k-1] = number of jobs of grid index k
    std::vector<int> counts;
    int multiplicity = 0;
    /// sum_k counts[k-1] * k * grid, in units
    std::int64_t workload_u = 0;
    /// classes of the rounded instance with this type, ascending
    std::vector<int> members;
};

struct ClassTypeTable {
    int max_index = 0;
    std::int64_t grid_u = 0;
    std::vector<ClassType> types;

    int num_types() const { return static_cast<int>(types.size()); }
    int total_classes() const;

    /// Table from explicit tuples, for hand-built graphs.
    static ClassTypeTable from_tuples(const std::vector<std::vector<int>>& tuples,
                                      const std::vector<int>& multiplicities, std::int64_t grid_u);
};

/// Classes with identical index tuples share a type. Types are ordered by
/// tuple, lexicographically.
ClassTypeTable compute_class_types(const RoundedWork& rounded);

/// Prefix state of a block-schedule: whole classes finished per type, plus the
/// one split class and how many of its jobs of each grid index are done.
struct Configuration {
    std::vector<int> finished;
    /// type index, -1 when no class is split
    int split_type = -1;
    /// length max_index; all zero when split_type == -1
    std::vector<int> progress;

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

struct ConfigurationHash {
    std::size_t operator()(const Configuration& c) const;
};

Configuration source_configuration(const ClassTypeTable& table);
Configuration target_configuration(const ClassTypeTable& table);
bool is_valid(const Configuration& c, const ClassTypeTable& table);

/// Left-hand side of the edge inequality, in units.
std::int64_t edge_load(const Configuration& from, const Configuration& to, const ClassTypeTable& table,
                       const BudgetParams& params);

/// True iff one more machine can take `from` to `to`: the edge load fits in
/// the budget, no finished count decreases, the split class of `from` is
/// finished whenever the machine abandons it, and `to` differs from `from`.
bool edge_feasible(const Configuration& from, const Configuration& to, const ClassTypeTable& table,
                   const BudgetParams& params);

/// All valid W with edge_feasible(V, W), by bounded enumeration.
std::vector<Configuration> successors(const Configuration& from, const ClassTypeTable& table,
                                      const BudgetParams& params);

struct BfsResult {
    /// source .. target; empty when the target is not reachable within m edges
    std::vector<Configuration> path;
    std::size_t visited = 0;

    bool found() const { return !path.empty(); }
};

BfsResult bfs_block_schedule(const ClassTypeTable& table, const BudgetParams& params, int num_machines);

/// Per-machine class loads of the rounded instance read off a path.
struct BlockAssignment {
    struct Item {
        int work_class = 0;
        /// job positions within the work class
        std::vector<int> jobs;
    };
    std::vector<std::vector<Item>> machines;
};

BlockAssignment assign_from_path(const std::vector<Configuration>& path, const ClassTypeTable& table,
                                 const RoundedWork& rounded);

/// Unwinds an assignment of the rewritten instance into a schedule of the
/// original instance: bundles and collapsed classes expand in place, tiny
/// classes replace placeholders machine by machine, isolated jobs get their
/// original class back and adjacent runs of one class share a setup.
Schedule expand_assignment(const BlockAssignment& assignment, const RoundedWork& rounded,
                           const TransformStack& stack, const BudgetParams& params, const Instance& inst);

/// Everything one decision call produces, for inspection in tests.
struct DecisionTrace {
    BudgetParams params;
    TransformStack stack;
    WorkInstance transformed;
    RoundedWork rounded;
    ClassTypeTable table;
    BfsResult bfs;
    std::optional<BlockAssignment> assignment;
};

/// (1 + eps_eff) * B + B/lambda + s
Rational certified_bound(const BudgetParams& params);

/// Relaxed decision procedure: "no" certifies OPT > T; "yes" carries a
/// feasible schedule with makespan <= certified_bound(params).
DecisionOutcome block_decision(const Instance& inst, std::int64_t T, int lambda, DecisionTrace* trace = nullptr);

struct ApproxResult {
    Schedule schedule;
    std::int64_t t_star = 0;
    Rational certified_bound;
    int probes = 0;
};

/// Binary search over [trivial lower bound, greedy makespan] driven by
/// block_decision. lambda >= 2; use lambda = ceil(10 / eps) for a target eps.
ApproxResult approx_schedule(const Instance& inst, int lambda);

}  // namespace setupsched::block
