#include "otoc/classical.hpp"

#include <cmath>

#include "otoc/rng.hpp"

namespace otoc::classical {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double mod1(double x) {
    double r = x - std::floor(x);
    return r < 1.0 ? r : 0.0;  // floor rounding can leave exactly 1.0
}
}  // namespace

PhasePoint step(const PhasePoint& point, double kick_strength) {
    double p = mod1(point.p + kick_strength / kTwoPi * std::sin(kTwoPi * point.q));
    double q = mod1(point.q + p);
    return {q, p};
}

PhasePoint step_back(const PhasePoint& point, double kick_strength) {
    double q = mod1(point.q - point.p);
    double p = mod1(point.p - kick_strength / kTwoPi * std::sin(kTwoPi * q));
    return {q, p};
}

std::vector<PhasePoint> trajectory(const PhasePoint& start, double kick_strength, int n) {
    if (n < 1) throw std::invalid_argument("trajectory: n must be >= 1");
    std::vector<PhasePoint> points;
    points.reserve(static_cast<std::size_t>(n) + 1);
    points.push_back(start);
    for (int i = 0; i < n; ++i) points.push_back(step(points.back(), kick_strength));
    return points;
}

std::vector<PortraitPoint> phase_portrait(double kick_strength, int n_ic, int n_steps,
                                          std::uint64_t seed) {
    if (n_ic < 1 || n_steps < 1)
        throw std::invalid_argument("phase_portrait: counts must be positive");
    std::vector<PortraitPoint> cloud;
    cloud.reserve(static_cast<std::size_t>(n_ic) * (n_steps + 1));
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (int i = 0; i < n_ic; ++i) {
        auto rng = stream_rng(seed, static_cast<std::uint64_t>(i));
        PhasePoint pt{uniform(rng), uniform(rng)};
        cloud.push_back({pt.q, pt.p, i});
        for (int s = 0; s < n_steps; ++s) {
            pt = step(pt, kick_strength);
            cloud.push_back({pt.q, pt.p, i});
        }
    }
    return cloud;
}

RegularAreaEstimate estimate_regular_area(double kick_strength, long n_total, int steps,
                                          const Rectangle& hole, std::uint64_t seed) {
    if (n_total < 1 || steps < 1)
        throw std::invalid_argument("estimate_regular_area: counts must be positive");
    if (hole.area() <= 0.0 || hole.q_min < 0.0 || hole.q_max > 1.0 || hole.p_min < 0.0 ||
        hole.p_max > 1.0)
        throw std::invalid_argument("estimate_regular_area: hole must be a nondegenerate "
                                    "rectangle inside the unit square");
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    long remaining = 0;
    for (long i = 0; i < n_total; ++i) {
        auto rng = stream_rng(seed, static_cast<std::uint64_t>(i));
        PhasePoint pt{uniform(rng), uniform(rng)};
        bool absorbed = hole.contains(pt);
        for (int s = 0; s < steps && !absorbed; ++s) {
            pt = step(pt, kick_strength);
            absorbed = hole.contains(pt);
        }
        if (!absorbed) ++remaining;
    }
    RegularAreaEstimate estimate;
    estimate.kick_strength = kick_strength;
    estimate.n_total = n_total;
    estimate.n_remaining = remaining;
    estimate.steps = steps;
    estimate.hole = hole;
    estimate.area = static_cast<double>(remaining) / static_cast<double>(n_total);
    return estimate;
}

}  // namespace otoc::classical
