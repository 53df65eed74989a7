#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "uavsar/geo.hpp"
#include "uavsar/ingest.hpp"
#include "uavsar/model.hpp"

namespace uavsar::evaluate {

struct EvaluationConfig {
    double unit_m = 1.0;
    std::size_t k0 = 100;
    /// Report the as-printed exponent form `(1 - P(D_{i-1}))^(i-1)` as the
    /// headline coverage instead of the running survival product.
    bool literal_formula = false;

    void validate() const;
};

struct EvaluationReport {
    /// Headline score, in [0, k0].
    double coverage = 0.0;
    /// Both readings are always computed so they can be compared.
    double coverage_survival = 0.0;
    double coverage_literal = 0.0;
    std::vector<double> segment_pods;
    bool detected_any = false;
    double trajectory_length_km = 0.0;
    std::size_t n_segments = 0;
    std::size_t n_covered = 0;
};

/// Midpoints of consecutive `unit_m` pieces of the piecewise-linear path
/// through records from_index..to_index (the last piece may be shorter).
/// Interpolation happens in the tangent plane at records[from_index].
/// Throws EmptySlice unless from_index < to_index < track.size().
[[nodiscard]] std::vector<geo::GeoPoint> segment_trajectory(const ingest::DrifterTrack& track,
                                                           std::size_t from_index, std::size_t to_index,
                                                           double unit_m);

/// Length of the same path in km, measured in the tangent plane.
[[nodiscard]] double trajectory_length_km(const ingest::DrifterTrack& track, std::size_t from_index,
                                          std::size_t to_index);

/// Detection probability per midpoint: the PoD of the best covering UAV, or 0.
[[nodiscard]] std::vector<double> segment_pods(const model::Deployment& deployment,
                                               std::span<const geo::GeoPoint> midpoints);

/// k0 * sum_i P_i * prod_{j<i} (1 - P_j): expected number of k0 drifters
/// detected when each is spotted at segment i with probability P_i and
/// leaves the search once detected.
[[nodiscard]] double survival_coverage(std::span<const double> pods, std::size_t k0);

/// k0 * sum_i (1 - P_{i-1})^(i-1) * P_i with P_0 = 0, i counted from 1.
[[nodiscard]] double literal_coverage(std::span<const double> pods, std::size_t k0);

[[nodiscard]] EvaluationReport coverage(const model::Deployment& deployment, const ingest::DrifterTrack& track,
                                        std::size_t from_index, std::size_t to_index,
                                        const EvaluationConfig& config = {});

/// Simulates `trials` cohorts of k0 drifters passing the segments in order;
/// returns the mean number detected per cohort.
[[nodiscard]] double monte_carlo_survival(std::span<const double> pods, std::size_t k0, std::size_t trials,
                                          std::uint64_t seed);

[[nodiscard]] double monte_carlo_coverage(const model::Deployment& deployment, const ingest::DrifterTrack& track,
                                          std::size_t from_index, std::size_t to_index,
                                          const EvaluationConfig& config, std::size_t trials, std::uint64_t seed);

/// {coverage, coverage_survival, coverage_literal, trajectory_length_km, n_segments, n_covered}.
[[nodiscard]] std::string to_json(const EvaluationReport& report);

}  // namespace uavsar::evaluate
