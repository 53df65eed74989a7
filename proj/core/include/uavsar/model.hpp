#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "uavsar/geo.hpp"
#include "uavsar/scenario.hpp"

namespace uavsar::model {

inline constexpr double kMaxDetectionRadiusM = 600.0;
inline constexpr double kMinDetectionRadiusM = 200.0;
inline constexpr double kRadiusSlopeMPerKm = 200.0;

/// Effective detection radius: 600 m at the centre, shrinking by 200 m per
/// km of haversine distance, clamped to [200, 600] m.
[[nodiscard]] double detection_radius_m(double distance_from_center_km) noexcept;
[[nodiscard]] double detection_radius_m(const geo::GeoPoint& uav, const geo::GeoPoint& center) noexcept;

/// 1 - exp(-r / 600).
[[nodiscard]] double pod_for_radius(double detection_radius_m) noexcept;

/// A UAV position with its radius kept in sync with the distance to the
/// search-area centre.
class UavPosition {
public:
    UavPosition(const geo::GeoPoint& position, const geo::GeoPoint& center)
        : position_(position), radius_m_(model::detection_radius_m(position, center)) {}

    [[nodiscard]] const geo::GeoPoint& position() const noexcept { return position_; }
    [[nodiscard]] double detection_radius_m() const noexcept { return radius_m_; }

    friend bool operator==(const UavPosition&, const UavPosition&) = default;

private:
    geo::GeoPoint position_;
    double radius_m_;
};

[[nodiscard]] double pod(const UavPosition& uav) noexcept;

/// True iff the haversine distance from the UAV to `p` is strictly below its radius.
[[nodiscard]] bool covers(const UavPosition& uav, const geo::GeoPoint& p) noexcept;

class Deployment {
public:
    Deployment(const scenario::SearchArea& area, std::span<const geo::GeoPoint> positions);

    [[nodiscard]] const scenario::SearchArea& area() const noexcept { return area_; }
    [[nodiscard]] std::size_t size() const noexcept { return uavs_.size(); }
    [[nodiscard]] const UavPosition& operator[](std::size_t i) const { return uavs_[i]; }
    [[nodiscard]] std::span<const UavPosition> uavs() const noexcept { return uavs_; }
    [[nodiscard]] std::vector<geo::GeoPoint> positions() const;

    void set_position(std::size_t i, const geo::GeoPoint& p);

    friend bool operator==(const Deployment& a, const Deployment& b) { return a.uavs_ == b.uavs_; }

private:
    scenario::SearchArea area_;
    std::vector<UavPosition> uavs_;
};

}  // namespace uavsar::model
