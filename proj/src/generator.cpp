#include "setupsched/generator.hpp"

#include <cmath>
#include <random>

namespace setupsched {

io::InstanceFile generate_instance(const GenParams& gp) {
    if (gp.n < 1 || gp.m < 1 || gp.k < 1 || gp.s < 1) throw InvalidInstance("n, m, k and s must be positive");
    if (gp.k > gp.n) throw InvalidInstance("k > n would leave a class empty");
    if (gp.p_min < 1 || gp.p_min > gp.p_max) throw InvalidInstance("size range must satisfy 1 <= p_min <= p_max");
    if (gp.release_density && (*gp.release_density < 0 || !std::isfinite(*gp.release_density)))
        throw InvalidInstance("release density must be a non-negative number");

    std::mt19937_64 rng(gp.seed);
    std::uniform_int_distribution<int> pick_class(0, gp.k - 1);
    std::uniform_int_distribution<std::int64_t> pick_size(gp.p_min, gp.p_max);

    std::vector<std::vector<std::int64_t>> classes(static_cast<std::size_t>(gp.k));
    std::int64_t total = 0;
    for (int i = 0; i < gp.n; ++i) {
        const int c = i < gp.k ? i : pick_class(rng);
        const std::int64_t p = pick_size(rng);
        classes[static_cast<std::size_t>(c)].push_back(p);
        total += p;
    }

    io::InstanceFile file;
    file.instance = Instance::from_classes(gp.m, gp.s, classes);
    if (gp.release_density) {
        const std::int64_t avg_load = (total + gp.m - 1) / gp.m;
        const auto horizon = static_cast<std::int64_t>(std::floor(*gp.release_density * static_cast<double>(avg_load)));
        std::uniform_int_distribution<std::int64_t> pick_release(0, horizon);
        std::vector<std::int64_t> release(static_cast<std::size_t>(gp.n));
        for (auto& r : release) r = pick_release(rng);
        file.release = std::move(release);
    }
    return file;
}

}  // namespace setupsched
