#pragma once

// Spherical and local-planar geometry shared by every module.
//
// Distances are kilometres unless a name says otherwise. Vector arithmetic
// (forces, interpolation, crossover) happens in an equirectangular tangent
// plane anchored at a reference point, in metres.

#include <cmath>
#include <numbers>

namespace uavsar::geo {

class EarthModel {
public:
    static constexpr double kMeanRadiusKm = 6371.0;

    constexpr EarthModel() = default;
    explicit EarthModel(double radius_km);

    [[nodiscard]] constexpr double radius_km() const noexcept { return radius_km_; }
    [[nodiscard]] constexpr double meters_per_degree() const noexcept {
        return radius_km_ * 1000.0 * std::numbers::pi / 180.0;
    }

private:
    double radius_km_ = kMeanRadiusKm;
};

/// Latitude/longitude in degrees. Latitude is clamped to [-90, 90] and
/// longitude wrapped into [-180, 180] on construction; non-finite input throws.
class GeoPoint {
public:
    GeoPoint() = default;
    GeoPoint(double lat_deg, double lon_deg);

    [[nodiscard]] double lat() const noexcept { return lat_; }
    [[nodiscard]] double lon() const noexcept { return lon_; }

    friend bool operator==(const GeoPoint&, const GeoPoint&) = default;

private:
    double lat_ = 0.0;
    double lon_ = 0.0;
};

/// Displacement in the tangent plane of some anchor point.
struct LocalVector {
    double east_m = 0.0;
    double north_m = 0.0;

    [[nodiscard]] double norm() const noexcept { return std::hypot(east_m, north_m); }

    LocalVector& operator+=(const LocalVector& o) noexcept {
        east_m += o.east_m;
        north_m += o.north_m;
        return *this;
    }
    LocalVector& operator-=(const LocalVector& o) noexcept {
        east_m -= o.east_m;
        north_m -= o.north_m;
        return *this;
    }
    friend LocalVector operator+(LocalVector a, const LocalVector& b) noexcept { return a += b; }
    friend LocalVector operator-(LocalVector a, const LocalVector& b) noexcept { return a -= b; }
    friend LocalVector operator*(double s, const LocalVector& v) noexcept {
        return {s * v.east_m, s * v.north_m};
    }
    friend LocalVector operator*(const LocalVector& v, double s) noexcept { return s * v; }
    friend bool operator==(const LocalVector&, const LocalVector&) = default;
};

inline constexpr EarthModel kEarth{};

[[nodiscard]] constexpr double deg2rad(double deg) noexcept { return deg * std::numbers::pi / 180.0; }
[[nodiscard]] constexpr double rad2deg(double rad) noexcept { return rad * 180.0 / std::numbers::pi; }

namespace detail {

// Central angle in radians from latitudes (radians), their cosines and the
// longitude difference (radians). Split out so hot loops can cache cos(lat)
// and still produce bit-identical distances to haversine_km().
[[nodiscard]] inline double central_angle(double lat1, double cos_lat1, double lat2, double cos_lat2,
                                          double dlon) noexcept {
    const double s_lat = std::sin(0.5 * (lat2 - lat1));
    const double s_lon = std::sin(0.5 * dlon);
    double h = s_lat * s_lat + cos_lat1 * cos_lat2 * s_lon * s_lon;
    if (h > 1.0) h = 1.0;
    return 2.0 * std::asin(std::sqrt(h));
}

}  // namespace detail

/// Great-circle distance by the haversine formula.
[[nodiscard]] inline double haversine_km(const GeoPoint& a, const GeoPoint& b,
                                         const EarthModel& earth = kEarth) noexcept {
    const double lat1 = deg2rad(a.lat());
    const double lat2 = deg2rad(b.lat());
    return earth.radius_km() *
           detail::central_angle(lat1, std::cos(lat1), lat2, std::cos(lat2), deg2rad(b.lon() - a.lon()));
}

/// Equirectangular projection of `p` into the tangent plane at `anchor`.
[[nodiscard]] LocalVector to_local(const GeoPoint& p, const GeoPoint& anchor,
                                   const EarthModel& earth = kEarth) noexcept;

/// Inverse of to_local().
[[nodiscard]] GeoPoint from_local(const LocalVector& v, const GeoPoint& anchor,
                                  const EarthModel& earth = kEarth);

/// The point whose haversine distance from `anchor` equals `distance_km`
/// (never exceeding it) along the local-plane direction `direction`.
/// A zero direction or zero distance yields `anchor`.
[[nodiscard]] GeoPoint point_at_distance(const GeoPoint& anchor, const LocalVector& direction,
                                         double distance_km, const EarthModel& earth = kEarth);

/// Returns `p` when it lies within `radius_km` of `center`; otherwise the
/// point on the ray center->p exactly on the circle.
[[nodiscard]] GeoPoint project_to_circle(const GeoPoint& p, const GeoPoint& center, double radius_km,
                                         const EarthModel& earth = kEarth);

}  // namespace uavsar::geo
