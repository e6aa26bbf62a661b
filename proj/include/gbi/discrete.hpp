#pragma once

#include <cstdint>
#include <vector>

#include "gbi/qcorr.hpp"

namespace gbi {

// Finite-settings Bell scenario: M settings per observer and the quantum
// correlation tensor over all M^N combinations.
struct DiscreteScenario {
    Scenario scenario;
    FrameKind frame = FrameKind::Recursive;
    std::vector<std::vector<SettingVector>> settings; // [observer][setting][phase]
    std::vector<double> tensor;                       // M^N cells x (d-1) components, row-major
    long long cells = 0;

    int m_of(int observer) const { return static_cast<int>(settings[observer].size()); }
    const double* cell(long long index) const { return tensor.data() + index * (scenario.d - 1); }
    double self_overlap() const; // sum over cells of |T|^2
};

// One label in Z_d per observer per setting.
struct DeterministicStrategy {
    std::vector<std::vector<int>> labels; // [observer][setting]
};

DiscreteScenario build_scenario(const Scenario& sc,
                                const std::vector<std::vector<SettingVector>>& settings,
                                FrameKind kind = FrameKind::Recursive);

struct ClassicalOpt {
    DeterministicStrategy strategy;
    double overlap = 0.0; // sum over cells of dot(T_cell, v_{sum of labels mod d})
};

// Exhaustive enumeration of all product deterministic strategies.
// Throws resource_limit_error when d^(sum of M) exceeds max_enumerations.
ClassicalOpt classical_opt_exact(const DiscreteScenario& ds, long long max_enumerations = 10'000'000);

// Coordinate ascent over observers (each observer's labels set optimally in
// closed form given the others), repeated to a fixed point, best over random
// restarts.  Deterministic in (seed, restarts).
ClassicalOpt classical_opt_heuristic(const DiscreteScenario& ds, int restarts, std::uint64_t seed);

struct DiscreteTrajectoryPoint {
    int m = 0;
    double qcr = 0.0;       // keep-best (monotone non-decreasing in M)
    double qcr_fresh = 0.0; // this M's own optimized value
    double quantum = 0.0;   // self-overlap at the best settings of this M
    double classical = 0.0; // classical overlap at the best settings of this M
    std::vector<std::vector<SettingVector>> settings;
};

// For M = 2..M_max, maximize QCR = (sum |T|^2) / (max classical overlap) over
// the continuous setting parameters by multi-start pattern search, warm-started
// from the previous M's optimum plus one fresh setting per observer.
std::vector<DiscreteTrajectoryPoint> optimize_settings(const Scenario& sc, int m_max,
                                                       std::uint64_t seed, int starts = 3,
                                                       int threads = 0);

} // namespace gbi
