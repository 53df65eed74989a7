#include "uavsar/geojson.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "uavsar/errors.hpp"

namespace uavsar::geojson {

namespace {

using nlohmann::json;

json position(const geo::GeoPoint& p) { return json::array({p.lon(), p.lat()}); }

json feature(json geometry, json properties) {
    return json{{"type", "Feature"}, {"geometry", std::move(geometry)}, {"properties", std::move(properties)}};
}

json point(const geo::GeoPoint& p) { return json{{"type", "Point"}, {"coordinates", position(p)}}; }

json line(const std::vector<geo::GeoPoint>& pts) {
    json coords = json::array();
    for (const auto& p : pts) coords.push_back(position(p));
    return json{{"type", "LineString"}, {"coordinates", coords}};
}

// Counter-clockwise closed ring (RFC 7946 exterior ring orientation).
json circle(const geo::GeoPoint& center, double radius_km) {
    json ring = json::array();
    for (int k = 0; k < kCircleVertices; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / kCircleVertices;
        ring.push_back(position(geo::point_at_distance(center, {std::cos(theta), std::sin(theta)}, radius_km)));
    }
    ring.push_back(ring.front());
    return json{{"type", "Polygon"}, {"coordinates", json::array({ring})}};
}

}  // namespace

std::string to_geojson(const MapLayers& layers) {
    if (layers.scenario == nullptr) throw ConfigError("map needs a scenario");
    const auto& sc = *layers.scenario;
    json features = json::array();

    features.push_back(feature(point(sc.accident), {{"role", "accident"}}));
    features.push_back(feature(point(sc.area.center), {{"role", "uav-center"}}));
    features.push_back(feature(circle(sc.area.center, sc.area.radius_km),
                               {{"role", "search-area"}, {"radius_km", sc.area.radius_km}}));
    for (std::size_t i = 0; i < sc.particles.size(); ++i) {
        features.push_back(feature(point(sc.particles[i].position), {{"role", "particle"}, {"index", i}}));
    }
    for (std::size_t i = 0; i < sc.lines.size(); ++i) {
        features.push_back(feature(line({sc.lines[i].start, sc.lines[i].end}),
                                   {{"role", "candidate-line"}, {"index", i}, {"length_km", sc.lines[i].length_km}}));
    }

    if (layers.deployment != nullptr) {
        for (std::size_t i = 0; i < layers.deployment->size(); ++i) {
            const auto& u = (*layers.deployment)[i];
            features.push_back(feature(circle(u.position(), u.detection_radius_m() / 1000.0),
                                       {{"role", "uav-disc"},
                                        {"index", i},
                                        {"radius_m", u.detection_radius_m()},
                                        {"pod", model::pod(u)}}));
            features.push_back(feature(point(u.position()), {{"role", "uav"}, {"index", i}}));
        }
    }

    if (layers.track != nullptr) {
        const auto& t = *layers.track;
        std::vector<geo::GeoPoint> path;
        for (std::size_t i = layers.from_index; i <= layers.to_index && i < t.size(); ++i) path.push_back(t.position(i));
        features.push_back(feature(line(path), {{"role", "trajectory"}, {"track_id", t.id}}));

        if (layers.report != nullptr) {
            const auto mids = evaluate::segment_trajectory(t, layers.from_index, layers.to_index, layers.unit_m);
            const auto& pods = layers.report->segment_pods;
            if (pods.size() != mids.size()) throw ConfigError("report does not match the trajectory segmentation");
            for (std::size_t i = 0; i < pods.size();) {
                if (pods[i] <= 0.0) {
                    ++i;
                    continue;
                }
                std::size_t j = i;
                double best = 0.0;
                while (j < pods.size() && pods[j] > 0.0) best = std::max(best, pods[j++]);
                const json geom = (j - i >= 2) ? line({mids[i], mids[j - 1]}) : point(mids[i]);
                features.push_back(feature(geom, {{"role", "covered-segment"},
                                                  {"first_segment", i},
                                                  {"segments", j - i},
                                                  {"pod", best}}));
                i = j;
            }
        }
    }

    return json{{"type", "FeatureCollection"}, {"features", features}}.dump();
}

void export_geojson(const MapLayers& layers, const std::filesystem::path& path) {
    const std::string doc = to_geojson(layers);
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << doc << '\n';
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace uavsar::geojson
