#pragma once

#include <cstdint>
#include <optional>

#include "setupsched/io.hpp"

namespace setupsched {

struct GenParams {
    std::uint64_t seed = 1;
    int n = 8;
    int m = 2;
    int k = 3;
    std::int64_t s = 2;
    std::int64_t p_min = 1;
    std::int64_t p_max = 9;
    /// When set, releases are drawn uniformly from
    /// [0, floor(density * ceil(total work / m))].
    std::optional<double> release_density;
};

/// Deterministic for a given parameter set. The first k jobs seed one class
/// each so no class is empty; the rest pick a class uniformly.
io::InstanceFile generate_instance(const GenParams& params);

}  // namespace setupsched
