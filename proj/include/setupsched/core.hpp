#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace setupsched {

using Rational = boost::rational<std::int64_t>;

inline std::int64_t floor_of(const Rational& r) {
    const std::int64_t q = r.numerator() / r.denominator();
    return (r.numerator() % r.denominator() != 0 && r.numerator() < 0) ? q - 1 : q;
}

inline std::int64_t ceil_of(const Rational& r) {
    const std::int64_t q = r.numerator() / r.denominator();
    return (r.numerator() % r.denominator() != 0 && r.numerator() > 0) ? q + 1 : q;
}

inline double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

/// Error raised for malformed instances or bad parameters.
class InvalidInstance : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct Job {
    int id = 0;
    std::int64_t size = 0;
    int class_id = 0;

    friend bool operator==(const Job&, const Job&) = default;
};

/// Jobs partitioned into classes, to be run on identical machines that need
/// a setup of length `setup` before each class run.
///
/// Job ids are dense (0..n-1) and class ids are dense (0..k-1). Use
/// `Instance::from_classes` or `validate_instance` to build one; both reject
/// anything that breaks those rules.
class Instance {
  public:
    Instance() = default;

    static Instance from_classes(int num_machines, std::int64_t setup,
                                 const std::vector<std::vector<std::int64_t>>& classes);

    const std::vector<Job>& jobs() const { return jobs_; }
    const Job& job(int id) const { return jobs_.at(static_cast<std::size_t>(id)); }
    int num_jobs() const { return static_cast<int>(jobs_.size()); }
    int num_machines() const { return num_machines_; }
    std::int64_t setup() const { return setup_; }
    int num_classes() const { return static_cast<int>(class_members_.size()); }

    /// Job ids of class `c`, in input order.
    const std::vector<int>& class_jobs(int c) const { return class_members_.at(static_cast<std::size_t>(c)); }

    /// Sizes grouped per class, in input order; inverse of from_classes.
    std::vector<std::vector<std::int64_t>> class_sizes() const;

    friend bool operator==(const Instance&, const Instance&) = default;

  private:
    friend Instance validate_instance(int, std::int64_t, std::vector<Job>);

    std::vector<Job> jobs_;
    std::vector<std::vector<int>> class_members_;
    int num_machines_ = 0;
    std::int64_t setup_ = 0;
};

/// Builds an Instance from loose job records. Job ids are renumbered in the
/// given order; class ids must form the dense range 0..k-1.
Instance validate_instance(int num_machines, std::int64_t setup, std::vector<Job> jobs);

struct InstanceProfile {
    std::int64_t p_max = 0;
    std::int64_t total_work = 0;
    std::vector<std::int64_t> class_workloads;
    /// max_i w(C_i) / trivial_lower_bound
    Rational gamma{0};
};

InstanceProfile profile(const Instance& inst);

/// max(s + p_max, ceil((k*s + sum p) / m)); never exceeds the optimum.
std::int64_t trivial_lower_bound(const Instance& inst);

struct Segment {
    enum class Kind { Setup, Run };
    Kind kind = Kind::Run;
    /// class id for Setup, job id for Run
    int id = 0;

    static Segment setup(int class_id) { return {Kind::Setup, class_id}; }
    static Segment run(int job_id) { return {Kind::Run, job_id}; }
    bool is_setup() const { return kind == Kind::Setup; }

    friend bool operator==(const Segment&, const Segment&) = default;
};

using MachineSequence = std::vector<Segment>;

struct Schedule {
    std::vector<MachineSequence> machines;

    Schedule() = default;
    explicit Schedule(int num_machines) : machines(static_cast<std::size_t>(num_machines)) {}

    /// Appends a job, inserting a setup when the machine is not currently
    /// configured for the job's class.
    void append_job(const Instance& inst, int machine, int job_id);

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct VerifyReport {
    bool feasible = false;
    std::int64_t makespan = 0;
    std::vector<std::int64_t> per_machine_span;
    std::vector<std::string> violations;
};

VerifyReport verify_schedule(const Instance& inst, const Schedule& sched);

/// Sum of segment durations on one machine.
std::int64_t machine_span(const Instance& inst, const MachineSequence& seq);

/// Max machine span. Does not check feasibility.
std::int64_t makespan(const Instance& inst, const Schedule& sched);

/// Drops setups that are not followed by a job of their class and setups that
/// repeat the class the machine is already configured for.
Schedule normalize(const Instance& inst, const Schedule& sched);

}  // namespace setupsched
