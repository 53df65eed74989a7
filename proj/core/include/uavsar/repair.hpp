#pragma once

#include <cstddef>
#include <vector>

#include "uavsar/geo.hpp"
#include "uavsar/model.hpp"

namespace uavsar::repair {

struct RepairConfig {
    int max_iter = 100;
    /// Step weight applied to the averaged repulsive force.
    double alpha_r = 0.9;
    /// Pairs closer than r_i + r_j - tolerance count as overlapping.
    double overlap_tolerance_m = 0.0;

    /// Throws ConfigError on out-of-range values.
    void validate() const;
};

/// Pairwise repulsion for one iteration, in the tangent plane at the
/// search-area centre. Forces are the raw accumulated sums (before dividing
/// by the interaction counts), so they sum to the zero vector.
struct ForceField {
    std::vector<geo::LocalVector> forces;
    std::vector<int> interactions;
    bool overlapping = false;
};

[[nodiscard]] ForceField accumulate_repulsion(const model::Deployment& deployment,
                                              double overlap_tolerance_m = 0.0);

[[nodiscard]] std::size_t count_overlapping_pairs(const model::Deployment& deployment,
                                                  double overlap_tolerance_m = 0.0);

/// Number of UAVs farther than radius + tolerance_km from the centre.
[[nodiscard]] std::size_t count_boundary_violations(const model::Deployment& deployment,
                                                    double tolerance_km = 1e-6);

struct RepairTrace {
    /// Positions after boundary correction and after every force iteration.
    std::vector<std::vector<geo::GeoPoint>> snapshots;
    int iterations = 0;
    bool converged = false;
};

/// Boundary correction followed by up to max_iter rounds of repulsion with
/// boundary clamping. The result always lies inside the search area;
/// overlap removal is best effort. Deterministic.
[[nodiscard]] model::Deployment repair(const model::Deployment& deployment, const RepairConfig& config = {},
                                       RepairTrace* trace = nullptr);

}  // namespace uavsar::repair
