#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "uavsar/errors.hpp"
#include "uavsar/evaluate.hpp"

using namespace uavsar;
using geo::GeoPoint;

namespace {

const GeoPoint kOrigin{34.0, 127.0};

ingest::DrifterTrack polyline(const std::vector<geo::LocalVector>& pts) {
    ingest::DrifterTrack t{"P", {}};
    const auto t0 = *ingest::parse_timestamp("2024-01-01T00:00:00Z");
    for (std::size_t i = 0; i < pts.size(); ++i) {
        ingest::DrifterRecord r;
        r.timestamp = t0 + std::chrono::hours(static_cast<long>(i));
        r.position = geo::from_local(pts[i], kOrigin);
        t.records.push_back(r);
    }
    return t;
}

}  // namespace

TEST(SegmentTrajectory, TenMetresInOneMetreUnits) {
    const auto t = polyline({{0, 0}, {10, 0}});
    const auto mids = evaluate::segment_trajectory(t, 0, 1, 1.0);
    ASSERT_EQ(mids.size(), 10u);
    for (std::size_t i = 0; i < mids.size(); ++i) {
        EXPECT_NEAR(geo::to_local(mids[i], kOrigin).east_m, i + 0.5, 1e-6);
        EXPECT_NEAR(geo::to_local(mids[i], kOrigin).north_m, 0.0, 1e-6);
    }
}

TEST(SegmentTrajectory, UnitLongerThanPathGivesMidpoint) {
    const auto t = polyline({{0, 0}, {30, 40}});
    const auto mids = evaluate::segment_trajectory(t, 0, 1, 500.0);
    ASSERT_EQ(mids.size(), 1u);
    EXPECT_NEAR(geo::to_local(mids[0], kOrigin).east_m, 15.0, 1e-6);
    EXPECT_NEAR(geo::to_local(mids[0], kOrigin).north_m, 20.0, 1e-6);
}

TEST(SegmentTrajectory, CountTimesUnitApproximatesLength) {
    const auto t = ingest::synthesize_track(4, 24, kOrigin, 1.3, 0.5);
    for (double unit : {1.0, 7.5, 100.0}) {
        const auto mids = evaluate::segment_trajectory(t, 5, 17, unit);
        const double len_m = evaluate::trajectory_length_km(t, 5, 17) * 1000.0;
        EXPECT_NEAR(mids.size() * unit, len_m, unit);
    }
}

TEST(SegmentTrajectory, ShortLastPieceAndCorners) {
    const auto t = polyline({{0, 0}, {10, 0}, {10, 5}});
    const auto mids = evaluate::segment_trajectory(t, 0, 2, 4.0);
    ASSERT_EQ(mids.size(), 4u);
    EXPECT_NEAR(geo::to_local(mids[2], kOrigin).east_m, 10.0, 1e-6);
    EXPECT_NEAR(geo::to_local(mids[2], kOrigin).north_m, 0.0, 1e-6);
    // Last piece covers arc length 12..15, midpoint 13.5 -> (10, 3.5).
    EXPECT_NEAR(geo::to_local(mids[3], kOrigin).north_m, 3.5, 1e-6);
}

TEST(SegmentTrajectory, RejectsEmptySlices) {
    const auto t = polyline({{0, 0}, {10, 0}, {20, 0}});
    EXPECT_THROW((void)evaluate::segment_trajectory(t, 1, 1, 1.0), EmptySlice);
    EXPECT_THROW((void)evaluate::segment_trajectory(t, 2, 1, 1.0), EmptySlice);
    EXPECT_THROW((void)evaluate::segment_trajectory(t, 0, 3, 1.0), EmptySlice);
}

TEST(Coverage, NothingCoveredIsZero) {
    const auto t = polyline({{0, 0}, {1000, 0}});
    const model::Deployment d({kOrigin, 10.0}, std::vector<GeoPoint>{geo::from_local({0, 5000}, kOrigin)});
    const auto r = evaluate::coverage(d, t, 0, 1);
    EXPECT_EQ(r.coverage, 0.0);
    EXPECT_FALSE(r.detected_any);
    EXPECT_EQ(r.n_segments, 1000u);
    EXPECT_NEAR(r.trajectory_length_km, 1.0, 1e-9);
}

TEST(Coverage, SingleSegmentHalfProbability) {
    const std::vector<double> p{0.5};
    EXPECT_DOUBLE_EQ(evaluate::survival_coverage(p, 100), 50.0);
    EXPECT_DOUBLE_EQ(evaluate::literal_coverage(p, 100), 50.0);
    EXPECT_EQ(evaluate::survival_coverage(std::vector<double>{}, 100), 0.0);
}

TEST(Coverage, ManyCentreSegmentsApproachK0) {
    const double p = 1.0 - std::exp(-1.0);
    const std::vector<double> pods(1000, p);
    const double c = evaluate::survival_coverage(pods, 100);
    EXPECT_LT(c, 100.0);
    EXPECT_NEAR(c, 100.0 * (1.0 - std::pow(1.0 - p, 1000)), 1e-9);
    EXPECT_NEAR(c, 100.0, 1e-9);
}

TEST(Coverage, LiteralReadingAgreesWithSurvivalOnlyForFlatRuns) {
    const std::vector<double> flat(5, 0.3);
    EXPECT_NEAR(evaluate::literal_coverage(flat, 100), evaluate::survival_coverage(flat, 100), 1e-9);
    const std::vector<double> mixed{0.6321, 0.2835, 0.5};
    EXPECT_GT(std::abs(evaluate::literal_coverage(mixed, 100) - evaluate::survival_coverage(mixed, 100)), 1.0);
}

TEST(Coverage, MatchesOracleAndSimulation) {
    const std::vector<double> pods{0.6321, 0.2835, 0.5};
    const double analytic = evaluate::survival_coverage(pods, 100);
    EXPECT_NEAR(analytic, oracle::survival_expectation(pods, 100.0), 1e-9);
    const double mc = evaluate::monte_carlo_survival(pods, 100, 10000, 3);
    EXPECT_LT(std::abs(mc - analytic) / analytic, 0.005);
    EXPECT_NEAR(100.0 * oracle::simulate_drifters(pods, 200000, 5), analytic, 0.5);
}

TEST(Coverage, MonotoneInEachProbability) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, 0.63);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> pods(30);
        for (auto& p : pods) p = u(rng) < 0.2 ? 0.0 : u(rng);
        const double base = evaluate::survival_coverage(pods, 100);
        EXPECT_LT(base, 100.0);
        auto raised = pods;
        raised[t % pods.size()] = std::min(0.6321, raised[t % pods.size()] + 0.1);
        EXPECT_GE(evaluate::survival_coverage(raised, 100), base - 1e-12);
    }
}

TEST(MonteCarlo, Degenerate) {
    EXPECT_EQ(evaluate::monte_carlo_survival(std::vector<double>{0.0, 0.0}, 100, 10, 1), 0.0);
    EXPECT_EQ(evaluate::monte_carlo_survival(std::vector<double>{1.0}, 100, 10, 1), 100.0);
    EXPECT_THROW((void)evaluate::monte_carlo_survival(std::vector<double>{0.5}, 100, 0, 1), ConfigError);
}

TEST(MonteCarlo, WithinThreeSigmaOnRandomFixtures) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int f = 0; f < 20; ++f) {
        std::vector<double> pods(10, 0.0);
        for (auto& p : pods) {
            if (u(rng) < 0.4) p = 1.0 - std::exp(-(200.0 + 400.0 * u(rng)) / 600.0);
        }
        const double exact = evaluate::survival_coverage(pods, 100);
        const std::size_t trials = 1000;
        const double mc = evaluate::monte_carlo_survival(pods, 100, trials, 100 + f);
        const double q = exact / 100.0;
        const double sigma = 100.0 * std::sqrt(q * (1.0 - q) / (trials * 100.0));
        EXPECT_LE(std::abs(mc - exact), 3.0 * sigma + 1e-12) << "fixture " << f;
    }
}

TEST(Coverage, DeploymentPodsUseBestCoveringUav) {
    const auto t = polyline({{-300, 0}, {300, 0}});
    const GeoPoint near_center = kOrigin;
    const GeoPoint far = geo::from_local({0, 150}, kOrigin);
    const model::Deployment d({kOrigin, 5.0}, std::vector<GeoPoint>{far, near_center});
    const auto r = evaluate::coverage(d, t, 0, 1, {10.0, 100, false});
    for (double p : r.segment_pods) EXPECT_NEAR(p, model::pod(d[1]), 1e-12);
    EXPECT_EQ(r.n_covered, r.n_segments);
    for (double p : r.segment_pods) EXPECT_LE(p, 1.0 - std::exp(-1.0) + 1e-12);
}

TEST(Coverage, DiscretisationStable) {
    const auto t = polyline({{-1500, -200}, {-200, 100}, {900, 400}});
    const model::Deployment d({kOrigin, 5.0}, std::vector<GeoPoint>{geo::from_local({-800, 0}, kOrigin)});
    evaluate::EvaluationConfig fine;
    fine.unit_m = 0.5;
    const double c1 = evaluate::coverage(d, t, 0, 2).coverage;
    const double c2 = evaluate::coverage(d, t, 0, 2, fine).coverage;
    EXPECT_GT(c1, 1.0);
    EXPECT_LT(std::abs(c1 - c2) / c1, 1e-3);
}

TEST(Coverage, ReportJsonAndLiteralFlag) {
    const auto t = polyline({{-300, 0}, {300, 0}});
    const model::Deployment d({kOrigin, 5.0}, std::vector<GeoPoint>{kOrigin});
    evaluate::EvaluationConfig cfg;
    cfg.literal_formula = true;
    const auto r = evaluate::coverage(d, t, 0, 1, cfg);
    EXPECT_EQ(r.coverage, r.coverage_literal);
    const auto j = nlohmann::json::parse(evaluate::to_json(r));
    for (const char* key : {"coverage", "trajectory_length_km", "n_segments", "n_covered"}) EXPECT_TRUE(j.contains(key));
    cfg.unit_m = 0.0;
    EXPECT_THROW((void)evaluate::coverage(d, t, 0, 1, cfg), ConfigError);
}
