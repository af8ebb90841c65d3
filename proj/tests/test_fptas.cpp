#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "setupsched/exact.hpp"
#include "setupsched/fptas.hpp"

using namespace setupsched;

TEST_CASE("rounding to the grid") {
    const Instance inst = fixtures::small();  // n=3, k=2
    const RoundedInstance r = round_instance_fptas(inst, 7, Rational(1, 2));
    CHECK(r.grid == Rational(7, 10));
    CHECK(r.value(r.job_units[0]) == Rational(7, 2));
    CHECK(r.value(r.setup_units) == Rational(21, 10));

    const Instance four = Instance::from_classes(2, 2, {{3, 5}, {1, 7}});  // n=4, k=2
    const RoundedInstance g = round_instance_fptas(four, 12, Rational(1, 2));
    CHECK(g.grid == Rational(1));
    CHECK(g.job_units == std::vector<std::int64_t>{3, 5, 1, 7});
    CHECK(g.setup_units == 2);

    const RoundedInstance coarse = round_instance_fptas(four, 12, Rational(6));
    CHECK(coarse.grid >= Rational(7));
    for (auto u : coarse.job_units) CHECK(u == 1);

    CHECK_THROWS(round_instance_fptas(four, 0, Rational(1)));
    CHECK_THROWS(round_instance_fptas(four, 5, Rational(0)));
}

TEST_CASE("rounding error stays below one grid cell") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const Instance inst = fixtures::random_instance(rng, {});
        const std::int64_t T = trivial_lower_bound(inst);
        const Rational eps(1, 1 + static_cast<int>(rng() % 5));
        const RoundedInstance r = round_instance_fptas(inst, T, eps);
        for (const Job& j : inst.jobs()) {
            const Rational v = r.value(r.job_units[static_cast<std::size_t>(j.id)]);
            CHECK(v >= Rational(j.size));
            CHECK(v - j.size < r.grid);
        }
        CHECK(r.value(r.setup_units) >= Rational(inst.setup()));
        CHECK(r.value(r.setup_units) - inst.setup() < r.grid);
    }
}

TEST_CASE("fptas on small fixtures") {
    const FptasResult r = fptas_schedule(fixtures::small(), Rational(1, 4));
    CHECK(verify_schedule(fixtures::small(), r.schedule).feasible);
    CHECK(makespan(fixtures::small(), r.schedule) == 8);

    const Instance one = Instance::from_classes(1, 3, {{5}});
    for (const Rational eps : {Rational(1), Rational(1, 10), Rational(3)})
        CHECK(makespan(one, fptas_schedule(one, eps).schedule) == 8);

    const Instance pair = Instance::from_classes(2, 2, {{5}, {3}});
    CHECK(makespan(pair, fptas_schedule(pair, Rational(1)).schedule) == 7);
}

TEST_CASE("fptas stays within (1 + eps) of the optimum") {
    std::mt19937_64 rng(32);
    fixtures::RandomSpec spec;
    spec.n_max = 7;
    for (int trial = 0; trial < 150; ++trial) {
        const Instance inst = fixtures::random_instance(rng, spec);
        const std::int64_t opt = exact_makespan(inst).makespan;
        for (const Rational eps : {Rational(1), Rational(1, 2), Rational(1, 4)}) {
            const FptasResult r = fptas_schedule(inst, eps);
            const VerifyReport rep = verify_schedule(inst, r.schedule);
            REQUIRE(rep.feasible);
            CHECK(Rational(rep.makespan) <= (1 + eps) * opt);
            CHECK(r.rounded.value(r.rounded_makespan_units) >= Rational(rep.makespan));
        }
    }
}

TEST_CASE("pruning does not change the rounded optimum") {
    std::mt19937_64 rng(33);
    fixtures::RandomSpec spec;
    spec.n_max = 6;
    spec.m_max = 2;
    for (int trial = 0; trial < 80; ++trial) {
        const Instance inst = fixtures::random_instance(rng, spec);
        const Rational eps(1, 2);
        const FptasResult on = fptas_schedule(inst, eps);
        const FptasResult off = fptas_schedule(inst, eps, FptasOptions{false});
        CHECK(on.rounded_makespan_units == off.rounded_makespan_units);
        CHECK(verify_schedule(inst, off.schedule).feasible);
        for (std::size_t i = 0; i < on.layer_sizes.size(); ++i) CHECK(on.layer_sizes[i] <= off.layer_sizes[i]);
    }
}

TEST_CASE("state sets respect the size bound") {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 100; ++trial) {
        const Instance inst = fixtures::random_instance(rng, {});
        const int m = inst.num_machines();
        for (const double eps : {1.0, 0.5, 0.25}) {
            const FptasResult r = fptas_schedule(inst, Rational(static_cast<int>(eps * 4), 4));
            const double bound = std::pow(2.0, m) * std::pow((inst.num_jobs() + inst.num_classes()) / eps, m);
            for (std::size_t size : r.layer_sizes) CHECK(static_cast<double>(size) <= bound);
        }
    }
}

TEST_CASE("fptas rejects too many machines") {
    const Instance wide = Instance::from_classes(17, 1, {{1}});
    CHECK_THROWS(fptas_schedule(wide, Rational(1)));
}
