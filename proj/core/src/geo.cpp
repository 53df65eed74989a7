#include "uavsar/geo.hpp"

#include <algorithm>

#include "uavsar/errors.hpp"

namespace uavsar::geo {

EarthModel::EarthModel(double radius_km) : radius_km_(radius_km) {
    if (!(radius_km > 0.0) || !std::isfinite(radius_km)) {
        throw ConfigError("earth radius must be a positive number of kilometres");
    }
}

namespace {

double wrap_lon(double lon) {
    if (lon >= -180.0 && lon <= 180.0) return lon;
    double w = std::fmod(lon + 180.0, 360.0);
    if (w < 0.0) w += 360.0;
    return w - 180.0;
}

}  // namespace

GeoPoint::GeoPoint(double lat_deg, double lon_deg) {
    if (!std::isfinite(lat_deg) || !std::isfinite(lon_deg)) {
        throw Error("GeoPoint coordinates must be finite");
    }
    lat_ = std::clamp(lat_deg, -90.0, 90.0);
    lon_ = wrap_lon(lon_deg);
}

LocalVector to_local(const GeoPoint& p, const GeoPoint& anchor, const EarthModel& earth) noexcept {
    const double mpd = earth.meters_per_degree();
    const double dlon = wrap_lon(p.lon() - anchor.lon());
    return {dlon * std::cos(deg2rad(anchor.lat())) * mpd, (p.lat() - anchor.lat()) * mpd};
}

GeoPoint from_local(const LocalVector& v, const GeoPoint& anchor, const EarthModel& earth) {
    const double mpd = earth.meters_per_degree();
    const double coslat = std::cos(deg2rad(anchor.lat()));
    return {anchor.lat() + v.north_m / mpd, anchor.lon() + v.east_m / (mpd * coslat)};
}

GeoPoint point_at_distance(const GeoPoint& anchor, const LocalVector& direction, double distance_km,
                           const EarthModel& earth) {
    const double len = direction.norm();
    if (len == 0.0 || distance_km <= 0.0) return anchor;
    const LocalVector unit{direction.east_m / len, direction.north_m / len};

    // Along a ray the haversine distance is near-linear in the local-plane
    // length, so a fixed-point rescale converges in a handful of steps.
    double s = distance_km * 1000.0;
    GeoPoint q = from_local(s * unit, anchor, earth);
    for (int it = 0; it < 32; ++it) {
        const double d = haversine_km(q, anchor, earth);
        if (d <= 0.0) break;
        if (std::abs(d - distance_km) <= 1e-13 * std::max(1.0, distance_km)) break;
        s *= distance_km / d;
        q = from_local(s * unit, anchor, earth);
    }
    while (haversine_km(q, anchor, earth) > distance_km) {
        s *= 1.0 - 1e-12;
        q = from_local(s * unit, anchor, earth);
    }
    return q;
}

GeoPoint project_to_circle(const GeoPoint& p, const GeoPoint& center, double radius_km,
                           const EarthModel& earth) {
    if (haversine_km(p, center, earth) <= radius_km) return p;
    const LocalVector v = to_local(p, center, earth);
    if (v.norm() == 0.0) return center;
    return point_at_distance(center, v, radius_km, earth);
}

}  // namespace uavsar::geo
