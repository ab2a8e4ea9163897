#pragma once

#include <cstdint>
#include <vector>

#include "otoc/types.hpp"

namespace otoc::classical {

struct PhasePoint {
    double q = 0.0;
    double p = 0.0;
};

struct Rectangle {
    double q_min = 0.0, q_max = 0.1;
    double p_min = 0.0, p_max = 0.1;

    bool contains(const PhasePoint& pt) const {
        return pt.q >= q_min && pt.q <= q_max && pt.p >= p_min && pt.p <= p_max;
    }
    double area() const { return (q_max - q_min) * (p_max - p_min); }
};

struct RegularAreaEstimate {
    double kick_strength = 0.0;
    double area = 0.0;  // n_remaining / n_total
    long n_total = 0;
    long n_remaining = 0;
    int steps = 0;
    Rectangle hole;
};

/// One standard-map step on the unit torus; momentum updates first.
PhasePoint step(const PhasePoint& point, double kick_strength);

/// Exact inverse map step.
PhasePoint step_back(const PhasePoint& point, double kick_strength);

/// n map iterations; returns n+1 points including the start.
std::vector<PhasePoint> trajectory(const PhasePoint& start, double kick_strength, int n);

/// All points visited by n_ic random initial conditions over n_steps
/// iterations each, tagged with their trajectory index.
struct PortraitPoint {
    double q, p;
    int trajectory_id;
};
std::vector<PortraitPoint> phase_portrait(double kick_strength, int n_ic, int n_steps,
                                          std::uint64_t seed);

/// Surviving fraction of random initial conditions when trajectories
/// entering the hole are absorbed.
RegularAreaEstimate estimate_regular_area(double kick_strength, long n_total, int steps,
                                          const Rectangle& hole, std::uint64_t seed);

}  // namespace otoc::classical
