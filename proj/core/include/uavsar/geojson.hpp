#pragma once

#include <cstddef>
#include <filesystem>
#include <string>

#include "uavsar/evaluate.hpp"
#include "uavsar/ingest.hpp"
#include "uavsar/model.hpp"
#include "uavsar/scenario.hpp"

namespace uavsar::geojson {

/// Layers of a deployment map. Only the scenario is mandatory.
struct MapLayers {
    const scenario::Scenario* scenario = nullptr;
    const model::Deployment* deployment = nullptr;
    /// Actual trajectory records from_index..to_index.
    const ingest::DrifterTrack* track = nullptr;
    std::size_t from_index = 0;
    std::size_t to_index = 0;
    /// Paired with `track`; its segment_pods must come from the same slice
    /// segmented at `unit_m`.
    const evaluate::EvaluationReport* report = nullptr;
    double unit_m = 1.0;
};

inline constexpr int kCircleVertices = 64;

/// FeatureCollection; every feature carries a `role` property:
/// accident, uav-center, search-area, particle, candidate-line, uav-disc,
/// uav, trajectory, covered-segment.
[[nodiscard]] std::string to_geojson(const MapLayers& layers);

/// Throws IoError when the file cannot be written.
void export_geojson(const MapLayers& layers, const std::filesystem::path& path);

}  // namespace uavsar::geojson
