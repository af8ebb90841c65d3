#pragma once

// Shared instances and a seeded random-instance source for the test suites.

#include <cstdint>
#include <random>
#include <vector>

#include "setupsched/core.hpp"
#include "setupsched/generator.hpp"

namespace fixtures {

/// m=2, s=2, classes [[3,3],[4]]; OPT = 8.
inline setupsched::Instance small() { return setupsched::Instance::from_classes(2, 2, {{3, 3}, {4}}); }

struct RandomSpec {
    int n_min = 1;
    int n_max = 8;
    int m_min = 1;
    int m_max = 3;
    int k_max = 4;
    std::int64_t s_max = 5;
    std::int64_t p_max = 9;
};

/// Random instance drawn through the public generator.
inline setupsched::Instance random_instance(std::mt19937_64& rng, const RandomSpec& spec) {
    auto pick = [&rng](std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
    };
    setupsched::GenParams gp;
    gp.seed = rng();
    gp.n = static_cast<int>(pick(spec.n_min, spec.n_max));
    gp.m = static_cast<int>(pick(spec.m_min, spec.m_max));
    gp.k = static_cast<int>(pick(1, std::min<std::int64_t>(spec.k_max, gp.n)));
    gp.s = pick(1, spec.s_max);
    gp.p_min = 1;
    gp.p_max = pick(1, spec.p_max);
    return setupsched::generate_instance(gp).instance;
}

}  // namespace fixtures
