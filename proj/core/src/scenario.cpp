#include "uavsar/scenario.hpp"

#include <algorithm>

#include <json.hpp>

#include "uavsar/errors.hpp"
#include "uavsar/rng.hpp"

namespace uavsar::scenario {

SearchArea build_search_area(const forecast::Forecast& forecast, double radius_multiplier, double radius_floor_km,
                             std::optional<double> max_uav_distance_km) {
    if (!(radius_multiplier > 0.0)) throw ConfigError("radius multiplier must be positive");
    if (!(radius_floor_km > 0.0)) throw ConfigError("radius floor must be positive");
    double r = std::max(radius_multiplier * forecast.prev_step_error_km, radius_floor_km);
    if (max_uav_distance_km) {
        if (!(*max_uav_distance_km > 0.0)) throw ConfigError("max UAV distance must be positive");
        r = std::min(r, *max_uav_distance_km);
    }
    return {forecast.predicted, r};
}

std::vector<Particle> sample_particles(const forecast::Forecast& forecast, std::size_t k, double sigma_multiplier,
                                       std::uint64_t seed) {
    if (k < 1) throw ConfigError("need at least one particle");
    if (!(sigma_multiplier >= 0.0)) throw ConfigError("sigma multiplier must be non-negative");
    const double sigma_m = sigma_multiplier * forecast.prev_step_error_km * 1000.0;
    std::vector<Particle> out;
    out.reserve(k);
    if (sigma_m == 0.0) {
        out.assign(k, Particle{forecast.predicted});
        return out;
    }
    Rng rng = make_rng(seed);
    std::normal_distribution<double> normal(0.0, sigma_m);
    for (std::size_t i = 0; i < k; ++i) {
        const double east = normal(rng);
        const double north = normal(rng);
        out.push_back(Particle{geo::from_local({east, north}, forecast.predicted)});
    }
    return out;
}

Scenario make_scenario(const geo::GeoPoint& accident, const SearchArea& area, std::vector<Particle> particles,
                       double sigma_km) {
    if (!(area.radius_km > 0.0)) throw ConfigError("search area radius must be positive");
    if (!(sigma_km >= 0.0)) throw ConfigError("sigma must be non-negative");
    Scenario s{accident, area, std::move(particles), {}, sigma_km};
    s.lines.reserve(s.particles.size());
    for (const auto& p : s.particles) {
        s.lines.push_back(CandidateLine{accident, p.position, geo::haversine_km(accident, p.position)});
    }
    return s;
}

Scenario build_scenario(const ingest::DrifterTrack& track, const ingest::AccidentSpec& spec,
                        const forecast::Forecast& forecast, std::size_t k, std::uint64_t seed,
                        const ScenarioConfig& config) {
    ingest::validate(spec, track);
    const SearchArea area = build_search_area(forecast, config.radius_multiplier, config.radius_floor_km,
                                              config.max_uav_distance_km);
    auto particles = sample_particles(forecast, k, config.sigma_multiplier, seed);
    return make_scenario(track.position(spec.accident_index), area, std::move(particles),
                         config.sigma_multiplier * forecast.prev_step_error_km);
}

namespace {

using nlohmann::json;

json point_json(const geo::GeoPoint& p) { return json{{"lat", p.lat()}, {"lon", p.lon()}}; }

geo::GeoPoint point_from(const json& j) { return {j.at("lat").get<double>(), j.at("lon").get<double>()}; }

}  // namespace

std::string to_json(const Scenario& s) {
    json particles = json::array();
    for (const auto& p : s.particles) particles.push_back(point_json(p.position));
    const json doc{{"accident", point_json(s.accident)},
                   {"center", point_json(s.area.center)},
                   {"radius_km", s.area.radius_km},
                   {"sigma_km", s.sigma_km},
                   {"particles", particles}};
    return doc.dump(2);
}

Scenario scenario_from_json(const std::string& text) {
    try {
        const json doc = json::parse(text);
        std::vector<Particle> particles;
        for (const auto& p : doc.at("particles")) particles.push_back(Particle{point_from(p)});
        return make_scenario(point_from(doc.at("accident")),
                             SearchArea{point_from(doc.at("center")), doc.at("radius_km").get<double>()},
                             std::move(particles), doc.at("sigma_km").get<double>());
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid scenario JSON: ") + e.what());
    }
}

}  // namespace uavsar::scenario
