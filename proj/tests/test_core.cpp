#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "setupsched/core.hpp"
#include "setupsched/exact.hpp"
#include "setupsched/greedy.hpp"

using namespace setupsched;

TEST_CASE("validate_instance builds dense classes") {
    const Instance inst = fixtures::small();
    CHECK(inst.num_jobs() == 3);
    CHECK(inst.num_classes() == 2);
    CHECK(inst.class_jobs(0) == std::vector<int>{0, 1});
    CHECK(inst.class_jobs(1) == std::vector<int>{2});
    CHECK(inst.job(2).size == 4);

    const Instance one = Instance::from_classes(1, 1, {{1}});
    CHECK(one.num_jobs() == 1);
    CHECK(one.num_classes() == 1);
}

TEST_CASE("validate_instance rejects malformed input") {
    CHECK_THROWS_AS(Instance::from_classes(2, 0, {{3}}), InvalidInstance);
    CHECK_THROWS_AS(Instance::from_classes(0, 1, {{3}}), InvalidInstance);
    CHECK_THROWS_AS(Instance::from_classes(2, 1, {}), InvalidInstance);
    CHECK_THROWS_AS(Instance::from_classes(2, 1, {{3, 0}}), InvalidInstance);
    CHECK_THROWS_AS(Instance::from_classes(2, 1, {{3}, {}}), InvalidInstance);
    CHECK_THROWS_AS(validate_instance(2, 1, {Job{0, 3, 0}, Job{0, 2, 2}}), InvalidInstance);
    CHECK_THROWS_AS(validate_instance(2, 1, {Job{0, 3, -1}}), InvalidInstance);
}

TEST_CASE("trivial lower bound") {
    CHECK(trivial_lower_bound(fixtures::small()) == 7);
    CHECK(trivial_lower_bound(Instance::from_classes(1, 1, {{1}})) == 2);
    CHECK(trivial_lower_bound(Instance::from_classes(3, 5, {{9}})) == 14);
}

TEST_CASE("profile") {
    const InstanceProfile prof = profile(fixtures::small());
    CHECK(prof.p_max == 4);
    CHECK(prof.total_work == 10);
    CHECK(prof.class_workloads == std::vector<std::int64_t>{6, 4});
    CHECK(prof.gamma == Rational(6, 7));
}

TEST_CASE("verify_schedule") {
    const Instance inst = fixtures::small();
    CHECK(oracle::brute_force_opt(inst) == 8);

    Schedule good(2);
    good.machines[0] = {Segment::setup(0), Segment::run(0), Segment::run(1)};
    good.machines[1] = {Segment::setup(1), Segment::run(2)};
    VerifyReport rep = verify_schedule(inst, good);
    CHECK(rep.feasible);
    CHECK(rep.makespan == 8);
    CHECK(rep.per_machine_span == std::vector<std::int64_t>{8, 6});

    Schedule missing = good;
    missing.machines[0] = {Segment::run(0), Segment::run(1)};
    rep = verify_schedule(inst, missing);
    CHECK_FALSE(rep.feasible);
    REQUIRE_FALSE(rep.violations.empty());
    CHECK(rep.violations.front().find("run without preceding setup") != std::string::npos);

    Schedule single(2);
    single.machines[0] = {Segment::setup(0), Segment::run(0), Segment::run(1), Segment::setup(1), Segment::run(2)};
    rep = verify_schedule(inst, single);
    CHECK(rep.feasible);
    CHECK(rep.makespan == 14);
    CHECK(rep.per_machine_span == std::vector<std::int64_t>{14, 0});
}

TEST_CASE("verify_schedule reports other defects") {
    const Instance inst = fixtures::small();
    Schedule s(2);
    s.machines[0] = {Segment::setup(0), Segment::setup(0), Segment::run(0), Segment::run(0)};
    s.machines[1] = {Segment::setup(1), Segment::run(7)};
    const VerifyReport rep = verify_schedule(inst, s);
    CHECK_FALSE(rep.feasible);
    // duplicate setup, job 0 twice, unknown job 7, jobs 1 and 2 missing
    CHECK(rep.violations.size() == 5);

    Schedule wrong_class(2);
    wrong_class.machines[0] = {Segment::setup(1), Segment::run(0), Segment::run(1), Segment::run(2)};
    CHECK_FALSE(verify_schedule(inst, wrong_class).feasible);

    Schedule too_many(3);
    too_many.machines[0] = {Segment::setup(0), Segment::run(0), Segment::run(1)};
    too_many.machines[2] = {Segment::setup(1), Segment::run(2)};
    CHECK_FALSE(verify_schedule(inst, too_many).feasible);
}

TEST_CASE("normalize merges runs and drops idle setups") {
    const Instance inst = fixtures::small();
    Schedule s(2);
    s.machines[0] = {Segment::setup(1), Segment::setup(0), Segment::run(0), Segment::setup(0), Segment::run(1)};
    s.machines[1] = {Segment::setup(1), Segment::run(2), Segment::setup(0)};
    const Schedule n = normalize(inst, s);
    CHECK(n.machines[0] == MachineSequence{Segment::setup(0), Segment::run(0), Segment::run(1)});
    CHECK(n.machines[1] == MachineSequence{Segment::setup(1), Segment::run(2)});
    CHECK(verify_schedule(inst, n).feasible);
    CHECK(makespan(inst, n) <= makespan(inst, s));
}

TEST_CASE("span equals setups times s plus work, and lower bound <= OPT") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const Instance inst = fixtures::random_instance(rng, {});
        const Schedule sched = greedy_schedule(inst).schedule;
        const VerifyReport rep = verify_schedule(inst, sched);
        REQUIRE(rep.feasible);
        std::int64_t worst = 0;
        for (std::size_t mi = 0; mi < sched.machines.size(); ++mi) {
            std::int64_t setups = 0;
            std::int64_t work = 0;
            for (const Segment& seg : sched.machines[mi]) {
                if (seg.is_setup()) {
                    ++setups;
                } else {
                    work += inst.job(seg.id).size;
                }
            }
            CHECK(rep.per_machine_span[mi] == setups * inst.setup() + work);
            worst = std::max(worst, rep.per_machine_span[mi]);
        }
        CHECK(rep.makespan == worst);
        if (inst.num_jobs() <= 8) CHECK(trivial_lower_bound(inst) <= oracle::brute_force_opt(inst));
    }
}
