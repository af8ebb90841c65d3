#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "setupsched/exact.hpp"
#include "setupsched/online.hpp"

using namespace setupsched;

namespace {

TimedInstance random_timed(std::mt19937_64& rng, int n_max) {
    GenParams gp;
    gp.seed = rng();
    gp.n = 1 + static_cast<int>(rng() % static_cast<unsigned>(n_max));
    gp.m = 1 + static_cast<int>(rng() % 3);
    gp.k = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::min(gp.n, 4)));
    gp.s = 1 + static_cast<std::int64_t>(rng() % 5);
    gp.p_max = 1 + static_cast<std::int64_t>(rng() % 9);
    gp.release_density = std::uniform_real_distribution<double>(0.0, 3.0)(rng);
    const io::InstanceFile f = generate_instance(gp);
    return make_timed(f.instance, *f.release);
}

}  // namespace

TEST_CASE("adversary fixture") {
    const TimedInstance t = make_timed(Instance::from_classes(2, 10, {{1}, {1}}), {0, 10});
    for (const OfflineSolver& solver : {offline_exact(), offline_block(10), offline_greedy(), offline_fptas(Rational(1, 2))}) {
        const Timeline tl = simulate_online(t, solver);
        CHECK(check_timeline(t, tl).empty());
        CHECK(tl.makespan >= 21);
        const RatioReport r = competitive_ratio(tl, t);
        CHECK(r.exact);
        CHECK(r.clairvoyant == 11);
        CHECK(r.ratio >= Rational(21, 11));
        REQUIRE(tl.batches.size() == 2);
        CHECK(tl.batches[1].start == 11);
        CHECK(tl.batches[1].jobs == std::vector<int>{1});
    }
}

TEST_CASE("all jobs released together form one batch") {
    const Instance inst = Instance::from_classes(2, 2, {{3, 3}, {4}});
    const TimedInstance t = make_timed(inst, {0, 0, 0});
    const Timeline tl = simulate_online(t, offline_exact());
    REQUIRE(tl.batches.size() == 1);
    CHECK(tl.batches[0].start == 0);
    CHECK(tl.makespan == 8);
    CHECK(competitive_ratio(tl, t).ratio == Rational(1));

    const TimedInstance late = make_timed(inst, {6, 6, 6});
    const Timeline shifted = simulate_online(late, offline_exact());
    CHECK(shifted.batches.size() == 1);
    CHECK(shifted.makespan == 14);
    CHECK(check_timeline(late, shifted).empty());
}

TEST_CASE("single job") {
    const TimedInstance t = make_timed(Instance::from_classes(3, 2, {{5}}), {0});
    const Timeline tl = simulate_online(t, offline_block(5));
    CHECK(tl.makespan == 7);
    CHECK(competitive_ratio(tl, t).ratio == Rational(1));
}

TEST_CASE("far-apart releases make an idle gap") {
    const TimedInstance t = make_timed(Instance::from_classes(1, 1, {{2}, {1}}), {0, 100});
    const Timeline tl = simulate_online(t, offline_exact());
    REQUIRE(tl.batches.size() == 2);
    CHECK(tl.batches[0].finish == 3);
    CHECK(tl.batches[1].window_lo == 0);
    CHECK(tl.batches[1].window_hi == 100);
    CHECK(tl.batches[1].start == 100);
    CHECK(tl.makespan == 102);
    CHECK(check_timeline(t, tl).empty());
}

TEST_CASE("release exactly at a batch finish joins the next batch") {
    // first batch: setup 2 + job 3 finishes at 5; the job released at 5 waits
    const TimedInstance t = make_timed(Instance::from_classes(1, 2, {{3, 1}}), {0, 5});
    const Timeline tl = simulate_online(t, offline_exact());
    REQUIRE(tl.batches.size() == 2);
    CHECK(tl.batches[1].window_lo == 0);
    CHECK(tl.batches[1].window_hi == 5);
    CHECK(tl.batches[1].jobs == std::vector<int>{1});
}

TEST_CASE("check_timeline catches defects") {
    const TimedInstance t = make_timed(Instance::from_classes(1, 2, {{3}}), {4});
    Timeline tl = simulate_online(t, offline_exact());
    CHECK(check_timeline(t, tl).empty());
    Timeline early = tl;
    for (auto& seg : early.machines[0]) {
        seg.start -= 4;
        seg.end -= 4;
    }
    early.makespan -= 4;
    CHECK_FALSE(check_timeline(t, early).empty());
    Timeline dropped = tl;
    dropped.machines[0].pop_back();
    CHECK_FALSE(check_timeline(t, dropped).empty());
}

TEST_CASE("make_timed validates releases") {
    CHECK_THROWS_AS(make_timed(fixtures::small(), {0, 1}), InvalidInstance);
    CHECK_THROWS_AS(make_timed(fixtures::small(), {0, -1, 2}), InvalidInstance);
}

TEST_CASE("doubling bounds on random traces") {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 80; ++trial) {
        const TimedInstance t = random_timed(rng, 7);
        const auto prof = profile(t.instance);
        for (const OfflineSolver& solver : {offline_exact(), offline_block(10)}) {
            const Timeline tl = simulate_online(t, solver);
            CHECK(check_timeline(t, tl).empty());
            const RatioReport r = competitive_ratio(tl, t);
            REQUIRE(r.exact);
            CHECK(r.online_makespan >= r.clairvoyant);
            CHECK(Rational(tl.makespan) <= 4 * (1 + solver.eps) * r.clairvoyant);
            if (solver.name == "exact") CHECK(tl.makespan <= 2 * (r.clairvoyant + prof.p_max + t.instance.setup()));
        }
    }
}
