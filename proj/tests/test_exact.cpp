#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "setupsched/exact.hpp"
#include "setupsched/greedy.hpp"

using namespace setupsched;

TEST_CASE("exact on the two-class example") {
    const Instance inst = fixtures::small();
    const ExactResult e = exact_makespan(inst);
    CHECK(e.optimal);
    CHECK(e.makespan == 8);
    const VerifyReport rep = verify_schedule(inst, e.schedule);
    CHECK(rep.feasible);
    CHECK(rep.makespan == 8);
}

TEST_CASE("single machine: OPT = k*s + total work") {
    const Instance inst = Instance::from_classes(1, 3, {{2, 5}, {1}, {4, 4, 1}});
    CHECK(exact_makespan(inst).makespan == 3 * 3 + 17);
}

TEST_CASE("enough machines for singleton classes: OPT = s + p_max") {
    const Instance inst = Instance::from_classes(4, 2, {{5}, {3}, {7}});
    CHECK(exact_makespan(inst).makespan == 2 + 7);
}

TEST_CASE("exact agrees with brute force") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        const Instance inst = fixtures::random_instance(rng, {});
        const ExactResult e = exact_makespan(inst);
        REQUIRE(e.optimal);
        CHECK(e.makespan == oracle::brute_force_opt(inst));
        CHECK(e.makespan >= trivial_lower_bound(inst));
        const VerifyReport rep = verify_schedule(inst, e.schedule);
        CHECK(rep.feasible);
        CHECK(rep.makespan == e.makespan);
    }
}

TEST_CASE("exact is invariant under machine relabeling and class order") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 100; ++trial) {
        const Instance inst = fixtures::random_instance(rng, {});
        auto classes = inst.class_sizes();
        std::reverse(classes.begin(), classes.end());
        for (auto& c : classes) std::reverse(c.begin(), c.end());
        const Instance mirrored = Instance::from_classes(inst.num_machines(), inst.setup(), classes);
        CHECK(exact_makespan(inst).makespan == exact_makespan(mirrored).makespan);
    }
}

TEST_CASE("node budget yields a flagged upper bound") {
    const Instance inst = Instance::from_classes(3, 2, {{9, 8, 7, 7, 6}, {5, 5, 4, 3}, {3, 2, 2}});
    const ExactResult e = exact_makespan(inst, SearchLimit{5});
    CHECK_FALSE(e.optimal);
    CHECK(e.lower_bound <= e.makespan);
    CHECK(verify_schedule(inst, e.schedule).feasible);
    const ExactResult full = exact_makespan(inst);
    CHECK(full.optimal);
    CHECK(full.makespan <= e.makespan);
    CHECK(full.makespan >= e.lower_bound);
}

TEST_CASE("release oracle") {
    // Adversary fixture: both setups can run before the second release.
    const Instance adv = Instance::from_classes(2, 10, {{1}, {1}});
    const ExactTimedResult r = exact_makespan_with_releases(adv, {0, 10});
    CHECK(r.optimal);
    CHECK(r.makespan == 11);

    const Instance one = Instance::from_classes(1, 2, {{3}, {1}});
    CHECK(exact_makespan_with_releases(one, {0, 20}).makespan == 21);
    CHECK(exact_makespan_with_releases(one, {0, 0}).makespan == 8);
}

TEST_CASE("release oracle agrees with permutation brute force") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 150; ++trial) {
        fixtures::RandomSpec spec;
        spec.n_max = 6;
        const Instance inst = fixtures::random_instance(rng, spec);
        std::vector<std::int64_t> release(static_cast<std::size_t>(inst.num_jobs()));
        for (auto& r : release) r = std::uniform_int_distribution<std::int64_t>(0, 15)(rng);
        const ExactTimedResult r = exact_makespan_with_releases(inst, release);
        REQUIRE(r.optimal);
        CHECK(r.makespan == oracle::brute_force_released(inst, release));

        std::vector<std::int64_t> zero(release.size(), 0);
        CHECK(exact_makespan_with_releases(inst, zero).makespan == exact_makespan(inst).makespan);
    }
}
