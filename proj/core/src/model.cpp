#include "uavsar/model.hpp"

#include <algorithm>
#include <cmath>

#include "uavsar/errors.hpp"

namespace uavsar::model {

double detection_radius_m(double distance_from_center_km) noexcept {
    return std::clamp(-kRadiusSlopeMPerKm * distance_from_center_km + kMaxDetectionRadiusM, kMinDetectionRadiusM,
                      kMaxDetectionRadiusM);
}

double detection_radius_m(const geo::GeoPoint& uav, const geo::GeoPoint& center) noexcept {
    return detection_radius_m(geo::haversine_km(uav, center));
}

double pod_for_radius(double detection_radius_m) noexcept {
    return 1.0 - std::exp(-detection_radius_m / kMaxDetectionRadiusM);
}

double pod(const UavPosition& uav) noexcept { return pod_for_radius(uav.detection_radius_m()); }

bool covers(const UavPosition& uav, const geo::GeoPoint& p) noexcept {
    return geo::haversine_km(uav.position(), p) * 1000.0 < uav.detection_radius_m();
}

Deployment::Deployment(const scenario::SearchArea& area, std::span<const geo::GeoPoint> positions) : area_(area) {
    if (positions.empty()) throw ConfigError("a deployment needs at least one UAV");
    uavs_.reserve(positions.size());
    for (const auto& p : positions) uavs_.emplace_back(p, area_.center);
}

std::vector<geo::GeoPoint> Deployment::positions() const {
    std::vector<geo::GeoPoint> out;
    out.reserve(uavs_.size());
    for (const auto& u : uavs_) out.push_back(u.position());
    return out;
}

void Deployment::set_position(std::size_t i, const geo::GeoPoint& p) { uavs_.at(i) = UavPosition(p, area_.center); }

}  // namespace uavsar::model
