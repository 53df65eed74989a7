#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uavsar/forecast.hpp"
#include "uavsar/geo.hpp"
#include "uavsar/ingest.hpp"

namespace uavsar::scenario {

/// Circle of admissible UAV positions around the predicted drifter position.
struct SearchArea {
    geo::GeoPoint center;
    double radius_km = 0.0;
};

struct Particle {
    geo::GeoPoint position;
};

/// Straight hypothesised drift path from the accident point to one particle.
struct CandidateLine {
    geo::GeoPoint start;
    geo::GeoPoint end;
    double length_km = 0.0;
};

struct Scenario {
    geo::GeoPoint accident;
    SearchArea area;
    std::vector<Particle> particles;
    std::vector<CandidateLine> lines;
    double sigma_km = 0.0;
};

struct ScenarioConfig {
    double radius_multiplier = 4.0;
    double sigma_multiplier = 4.0;
    double radius_floor_km = 0.5;
    /// Optional cap on how far from the centre a UAV may be placed.
    std::optional<double> max_uav_distance_km;
};

/// radius = max(multiplier * previous-step error, floor), optionally capped.
[[nodiscard]] SearchArea build_search_area(const forecast::Forecast& forecast, double radius_multiplier = 4.0,
                                           double radius_floor_km = 0.5,
                                           std::optional<double> max_uav_distance_km = std::nullopt);

/// k draws from N(predicted, sigma^2 I) with sigma = multiplier * previous-step
/// error (km), sampled in the tangent plane at the prediction.
[[nodiscard]] std::vector<Particle> sample_particles(const forecast::Forecast& forecast, std::size_t k,
                                                     double sigma_multiplier, std::uint64_t seed);

[[nodiscard]] Scenario build_scenario(const ingest::DrifterTrack& track, const ingest::AccidentSpec& spec,
                                      const forecast::Forecast& forecast, std::size_t k, std::uint64_t seed,
                                      const ScenarioConfig& config = {});

/// Assemble a scenario from explicit parts (lines are derived).
[[nodiscard]] Scenario make_scenario(const geo::GeoPoint& accident, const SearchArea& area,
                                     std::vector<Particle> particles, double sigma_km);

/// JSON document: {accident, center, radius_km, sigma_km, particles[]},
/// points as {"lat":..,"lon":..}.
[[nodiscard]] std::string to_json(const Scenario& s);
[[nodiscard]] Scenario scenario_from_json(const std::string& text);

}  // namespace uavsar::scenario
