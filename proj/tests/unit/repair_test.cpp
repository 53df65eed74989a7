#include <gtest/gtest.h>

#include "uavsar/errors.hpp"
#include "uavsar/optimize.hpp"
#include "uavsar/repair.hpp"

using namespace uavsar;
using geo::GeoPoint;

namespace {

const scenario::SearchArea kArea{{34.0, 127.0}, 5.0};

GeoPoint at(double east_km, double north_km) {
    return geo::from_local({1000.0 * east_km, 1000.0 * north_km}, kArea.center);
}

double sum_norm(const std::vector<geo::LocalVector>& forces) {
    geo::LocalVector total;
    for (const auto& f : forces) total += f;
    return total.norm();
}

}  // namespace

TEST(Repair, FeasibleInputIsIdentity) {
    const std::vector<GeoPoint> pts{at(0, 0), at(2.5, 0), at(-2.5, 0), at(0, 3.0)};
    const model::Deployment d(kArea, pts);
    ASSERT_EQ(repair::count_overlapping_pairs(d), 0u);
    repair::RepairTrace trace;
    const auto r = repair::repair(d, {}, &trace);
    EXPECT_EQ(r, d);
    EXPECT_TRUE(trace.converged);
    EXPECT_EQ(trace.iterations, 0);
}

TEST(Repair, FarUavProjectedToBoundary) {
    const model::Deployment d(kArea, std::vector<GeoPoint>{at(10.0, 0.0)});
    const auto r = repair::repair(d);
    EXPECT_NEAR(geo::haversine_km(r[0].position(), kArea.center), kArea.radius_km, 1e-6);
    EXPECT_EQ(r[0].detection_radius_m(), 200.0);
}

TEST(Repair, CoLocatedPairSeparates) {
    const model::Deployment d(kArea, std::vector<GeoPoint>{kArea.center, kArea.center});
    const auto r = repair::repair(d);
    const double sep_m = geo::haversine_km(r[0].position(), r[1].position()) * 1000.0;
    EXPECT_GE(sep_m, r[0].detection_radius_m() + r[1].detection_radius_m());
    EXPECT_EQ(repair::count_overlapping_pairs(r), 0u);
}

TEST(Repair, RadiiFollowFinalPositions) {
    const model::Deployment d(kArea, std::vector<GeoPoint>{at(0.1, 0), at(0.2, 0), at(0.1, 0.1)});
    const auto r = repair::repair(d);
    for (const auto& u : r.uavs()) {
        EXPECT_DOUBLE_EQ(u.detection_radius_m(), model::detection_radius_m(u.position(), kArea.center));
    }
}

TEST(Repair, InfeasiblePackingStaysInBounds) {
    const scenario::SearchArea tiny{kArea.center, 0.8};
    Rng rng = make_rng(3);
    const auto d = optimize::initialize(8, tiny, rng);
    repair::RepairTrace trace;
    const auto r = repair::repair(d, {}, &trace);
    EXPECT_EQ(trace.iterations, 100);
    EXPECT_FALSE(trace.converged);
    EXPECT_EQ(repair::count_boundary_violations(r), 0u);
    EXPECT_GT(repair::count_overlapping_pairs(r), 0u);
}

TEST(Repair, ForcesSumToZero) {
    Rng rng = make_rng(19);
    for (int t = 0; t < 200; ++t) {
        const auto d = optimize::initialize(8, scenario::SearchArea{kArea.center, 1.5}, rng);
        const auto field = repair::accumulate_repulsion(d);
        EXPECT_LT(sum_norm(field.forces), 1e-6);
        int total = 0;
        for (int n : field.interactions) total += n;
        EXPECT_EQ(total % 2, 0);
    }
}

TEST(Repair, DeterministicAndBoundaryFeasible) {
    Rng rng = make_rng(23);
    for (int t = 0; t < 300; ++t) {
        const double radius = 1.0 + 9.0 * uniform01(rng);
        const scenario::SearchArea area{kArea.center, radius};
        const auto wide = optimize::initialize(t % 2 ? 6 : 8, scenario::SearchArea{kArea.center, 2.5 * radius}, rng);
        const model::Deployment d(area, wide.positions());
        const auto a = repair::repair(d);
        const auto b = repair::repair(d);
        EXPECT_EQ(a, b);
        EXPECT_EQ(repair::count_boundary_violations(a), 0u);
    }
}

TEST(Repair, TwoUavSeparationNonDecreasing) {
    const model::Deployment d(kArea, std::vector<GeoPoint>{at(-0.1, 0.05), at(0.15, -0.02)});
    repair::RepairTrace trace;
    (void)repair::repair(d, {}, &trace);
    ASSERT_GE(trace.snapshots.size(), 2u);
    double prev = 0.0;
    for (const auto& snap : trace.snapshots) {
        const double sep = geo::haversine_km(snap[0], snap[1]);
        EXPECT_GE(sep, prev);
        prev = sep;
    }
    EXPECT_TRUE(trace.converged);
}

TEST(Repair, ToleranceIgnoresSmallOverlaps) {
    // 600 m and 406 m discs 0.97 km apart overlap by 36 m.
    const model::Deployment d(kArea, std::vector<GeoPoint>{at(0, 0), at(0.97, 0)});
    EXPECT_EQ(repair::count_overlapping_pairs(d), 1u);
    EXPECT_EQ(repair::count_overlapping_pairs(d, 100.0), 0u);
    repair::RepairConfig cfg;
    cfg.overlap_tolerance_m = 100.0;
    EXPECT_EQ(repair::repair(d, cfg), d);
}

TEST(RepairConfig, Validates) {
    repair::RepairConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.alpha_r = 0.0;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg.alpha_r = 0.9;
    cfg.max_iter = 0;
    EXPECT_THROW(cfg.validate(), ConfigError);
}
