#include <gtest/gtest.h>

#include <random>

#include "uavsar/model.hpp"

using namespace uavsar;
using geo::GeoPoint;

TEST(DetectionRadius, EndpointsAndMidpoint) {
    EXPECT_EQ(model::detection_radius_m(0.0), 600.0);
    EXPECT_EQ(model::detection_radius_m(1.0), 400.0);
    EXPECT_EQ(model::detection_radius_m(2.0), 200.0);
}

TEST(DetectionRadius, ClampsBeyondTwoKm) {
    EXPECT_EQ(model::detection_radius_m(3.0), 200.0);
    EXPECT_EQ(model::detection_radius_m(3.5), 200.0);
    EXPECT_EQ(model::detection_radius_m(5.0), 200.0);
}

TEST(DetectionRadius, MonotoneNonIncreasing) {
    double prev = model::detection_radius_m(0.0);
    for (int i = 1; i <= 1000; ++i) {
        const double r = model::detection_radius_m(i * 0.005);
        EXPECT_LE(r, prev);
        EXPECT_GE(r, 200.0);
        EXPECT_LE(r, 600.0);
        prev = r;
    }
}

TEST(DetectionRadius, FromPointsUsesHaversine) {
    const GeoPoint c{0.0, 0.0};
    const GeoPoint p{0.0, 1.0 / 111.19492664455873};
    EXPECT_NEAR(model::detection_radius_m(p, c), 400.0, 1e-6);
}

TEST(Pod, ReferenceValues) {
    EXPECT_NEAR(model::pod_for_radius(600.0), 0.6321, 1e-4);
    EXPECT_NEAR(model::pod_for_radius(200.0), 0.2835, 1e-4);
    EXPECT_EQ(model::pod_for_radius(0.0), 0.0);
}

TEST(Pod, StrictlyIncreasingInRadius) {
    for (double r = 200.0; r < 600.0; r += 1.0) EXPECT_LT(model::pod_for_radius(r), model::pod_for_radius(r + 1.0));
}

TEST(Pod, DeploymentPodsWithinBounds) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> off(-8000.0, 8000.0);
    const GeoPoint c{34.0, 127.0};
    for (int i = 0; i < 1000; ++i) {
        const model::UavPosition u(geo::from_local({off(rng), off(rng)}, c), c);
        EXPECT_GE(model::pod(u), 0.2835 - 1e-4);
        EXPECT_LE(model::pod(u), 0.6321 + 1e-4);
    }
}

TEST(Covers, BoundaryIsStrict) {
    const GeoPoint c{0.0, 0.0};
    const model::UavPosition u(c, c);
    ASSERT_EQ(u.detection_radius_m(), 600.0);
    EXPECT_TRUE(model::covers(u, c));
    EXPECT_TRUE(model::covers(u, geo::point_at_distance(c, {1.0, 0.0}, 0.599)));
    EXPECT_FALSE(model::covers(u, geo::point_at_distance(c, {1.0, 0.0}, 0.601)));
}

TEST(Deployment, RejectsEmptyAndKeepsRadiiInSync) {
    const scenario::SearchArea area{{0.0, 0.0}, 5.0};
    EXPECT_THROW(model::Deployment(area, std::vector<GeoPoint>{}), std::exception);

    std::vector<GeoPoint> pts{{0.0, 0.0}, geo::point_at_distance(area.center, {0.0, 1.0}, 1.0)};
    model::Deployment d(area, pts);
    EXPECT_EQ(d.size(), 2u);
    EXPECT_EQ(d[0].detection_radius_m(), 600.0);
    EXPECT_NEAR(d[1].detection_radius_m(), 400.0, 1e-6);

    d.set_position(0, geo::point_at_distance(area.center, {1.0, 0.0}, 2.5));
    EXPECT_EQ(d[0].detection_radius_m(), 200.0);
}
