#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "uavsar/errors.hpp"
#include "uavsar/forecast.hpp"

using namespace uavsar;
using forecast::PredictorSpec;

namespace {

// Straight track sampled hourly, `east_kmh` / `north_kmh` in the tangent
// plane of the start point.
ingest::DrifterTrack straight_track(std::size_t n, double east_kmh, double north_kmh, std::string id = "S") {
    ingest::DrifterTrack t{std::move(id), {}};
    const geo::GeoPoint start{34.0, 127.0};
    const auto t0 = *ingest::parse_timestamp("2024-05-01T00:00:00Z");
    for (std::size_t i = 0; i < n; ++i) {
        ingest::DrifterRecord r;
        r.timestamp = t0 + std::chrono::hours(static_cast<long>(i));
        r.position = geo::from_local({1000.0 * east_kmh * i, 1000.0 * north_kmh * i}, start);
        t.records.push_back(r);
    }
    return t;
}

std::filesystem::path write_truth_file(const ingest::DrifterTrack& t, std::size_t accident, std::size_t steps,
                                       const std::string& name) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    std::vector<geo::GeoPoint> truth;
    for (std::size_t k = 1; k <= steps; ++k) truth.push_back(t.position(accident + k));
    forecast::write_external_forecast(out, truth);
    return path;
}

}  // namespace

TEST(PredictRecursive, PersistenceRepeatsLastObservation) {
    const auto t = ingest::synthesize_track(3, 20, {34.0, 127.0}, 1.0, 0.3);
    const auto preds = forecast::predict_recursive(t, 10, 6, PredictorSpec::persistence());
    ASSERT_EQ(preds.size(), 6u);
    for (const auto& p : preds) EXPECT_EQ(p, t.position(10));
    const auto one = forecast::predict_recursive(t, 10, 1, PredictorSpec::persistence());
    EXPECT_EQ(one.front(), preds.front());
}

TEST(PredictRecursive, LinearContinuesCollinearHistory) {
    ingest::DrifterTrack track{"L", {}};
    const auto t0 = *ingest::parse_timestamp("2024-05-01T00:00:00Z");
    for (int i = 0; i < 20; ++i) {
        ingest::DrifterRecord r;
        r.timestamp = t0 + std::chrono::hours(i);
        r.position = geo::GeoPoint{34.0 + 0.004 * i, 127.0 - 0.007 * i};
        track.records.push_back(r);
    }
    const auto preds = forecast::predict_recursive(track, 9, 6, PredictorSpec::linear());
    for (std::size_t k = 0; k < preds.size(); ++k) {
        EXPECT_NEAR(preds[k].lat() - track.position(9).lat(), (k + 1) * 0.004, 1e-9);
        EXPECT_NEAR(preds[k].lon() - track.position(9).lon(), (k + 1) * -0.007, 1e-9);
    }
    const auto windowed = forecast::predict_recursive(track, 9, 6, PredictorSpec::linear(3));
    for (std::size_t k = 0; k < preds.size(); ++k) EXPECT_NEAR(windowed[k].lat(), preds[k].lat(), 1e-9);
}

TEST(PredictRecursive, LinearNeedsTwoHistoryPoints) {
    const auto t = straight_track(10, 1.0, 0.0);
    EXPECT_THROW((void)forecast::predict_recursive(t, 0, 3, PredictorSpec::linear()), InsufficientHistory);
    EXPECT_THROW((void)forecast::predict_recursive(t, 4, 3, PredictorSpec::linear(), 4), InsufficientHistory);
    EXPECT_THROW((void)forecast::predict_recursive(t, 4, 0, PredictorSpec::linear()), ConfigError);
    EXPECT_THROW((void)forecast::predict_recursive(t, 40, 3, PredictorSpec::persistence()), InsufficientHistory);
}

TEST(PredictRecursive, NeverReadsTruthAfterAccident) {
    auto t = ingest::synthesize_track(5, 24, {34.0, 127.0}, 1.4, 0.3);
    auto poisoned = t;
    for (std::size_t i = 13; i < poisoned.size(); ++i) poisoned.records[i].position = geo::GeoPoint{-80.0, 10.0};
    for (const auto& spec : {PredictorSpec::persistence(), PredictorSpec::linear(), PredictorSpec::linear(4)}) {
        EXPECT_EQ(forecast::predict_recursive(t, 12, 6, spec), forecast::predict_recursive(poisoned, 12, 6, spec));
    }
}

TEST(PredictRecursive, ExternalFileIsPassthrough) {
    const auto t = ingest::synthesize_track(8, 24, {34.0, 127.0}, 1.1, 0.3);
    const auto path = write_truth_file(t, 12, 6, "uavsar_external_passthrough.csv");
    const auto preds = forecast::predict_recursive(t, 12, 6, PredictorSpec::external(path));
    const auto file = forecast::load_external_forecast(path);
    std::filesystem::remove(path);
    ASSERT_EQ(file.count(""), 1u);
    EXPECT_EQ(preds, file.at(""));
}

TEST(ExternalForecast, ParsesIdColumnAndRejectsGaps) {
    std::istringstream ok("id,step,lat,lon\nA,1,34.0,127.0\nA,2,34.1,127.1\nB,1,33.0,126.0\n");
    const auto f = forecast::parse_external_forecast(ok);
    EXPECT_EQ(f.at("A").size(), 2u);
    EXPECT_EQ(f.at("B").size(), 1u);

    std::istringstream gap("step,lat,lon\n1,34.0,127.0\n3,34.1,127.1\n");
    EXPECT_THROW((void)forecast::parse_external_forecast(gap), ParseError);
    std::istringstream header("when,lat,lon\n1,34.0,127.0\n");
    EXPECT_THROW((void)forecast::parse_external_forecast(header), ParseError);
    EXPECT_THROW((void)forecast::load_external_forecast("/nonexistent/forecast.csv"), IoError);
}

TEST(PredictorSpec, ParsesNames) {
    EXPECT_EQ(PredictorSpec::parse("persistence").kind, forecast::PredictorKind::persistence);
    EXPECT_EQ(PredictorSpec::parse("linear").kind, forecast::PredictorKind::linear_extrapolation);
    EXPECT_EQ(PredictorSpec::parse("external", "f.csv").params.at("path"), "f.csv");
    EXPECT_THROW((void)PredictorSpec::parse("external"), ConfigError);
    EXPECT_THROW((void)PredictorSpec::parse("chronos"), ConfigError);
    EXPECT_EQ(PredictorSpec::linear(5).name(), "linear(window=5)");
}

TEST(ForecastScenario, StationaryPersistenceHasZeroError) {
    const auto t = ingest::synthesize_track(1, 20, {34.0, 127.0}, 0.0, 0.0);
    const auto f = forecast::forecast_scenario(t, {"", 10, 6, 0}, PredictorSpec::persistence());
    EXPECT_EQ(f.prev_step_error_km, 0.0);
    EXPECT_EQ(f.predicted, t.position(10));
}

TEST(ForecastScenario, PersistenceLagsByElapsedSteps) {
    const auto t = straight_track(20, 1.0, 0.0);
    const auto f = forecast::forecast_scenario(t, {"", 10, 6, 0}, PredictorSpec::persistence());
    EXPECT_NEAR(f.prev_step_error_km, 5.0, 0.1);
    EXPECT_EQ(f.history_used, 11u);
}

TEST(ForecastScenario, ExactExternalForecastHasZeroError) {
    const auto t = ingest::synthesize_track(4, 24, {34.0, 127.0}, 1.3, 0.4);
    const auto path = write_truth_file(t, 12, 6, "uavsar_external_exact.csv");
    const auto f = forecast::forecast_scenario(t, {"", 12, 6, 0}, PredictorSpec::external(path));
    std::filesystem::remove(path);
    EXPECT_EQ(f.prev_step_error_km, 0.0);
    EXPECT_EQ(f.predicted, t.position(18));
}

TEST(ForecastScenario, SingleStepHorizonHasNoPreviousError) {
    const auto t = straight_track(20, 1.0, 0.5);
    const auto f = forecast::forecast_scenario(t, {"", 10, 1, 0}, PredictorSpec::persistence());
    EXPECT_EQ(f.prev_step_error_km, 0.0);
}

TEST(ForecastScenario, RelabellingTrackIdDoesNotChangeError) {
    auto t = ingest::synthesize_track(12, 24, {34.0, 127.0}, 1.3, 0.4);
    const auto a = forecast::forecast_scenario(t, {t.id, 12, 6, 0}, PredictorSpec::linear());
    t.id = "renamed";
    const auto b = forecast::forecast_scenario(t, {t.id, 12, 6, 0}, PredictorSpec::linear());
    EXPECT_EQ(a.prev_step_error_km, b.prev_step_error_km);
}

TEST(BenchmarkPredictors, StationaryPersistenceScoresZero) {
    const auto t = ingest::synthesize_track(1, 20, {34.0, 127.0}, 0.0, 0.0);
    const auto scores = forecast::benchmark_predictors({t}, {PredictorSpec::persistence()}, {10, 6, 0});
    ASSERT_EQ(scores.size(), 1u);
    EXPECT_EQ(scores[0].mean_error_km, 0.0);
    EXPECT_EQ(scores[0].pairs, 6u);
}

TEST(BenchmarkPredictors, LinearBeatsPersistenceOnLinearTracks) {
    const std::vector<ingest::DrifterTrack> tracks{straight_track(24, 1.2, 0.3, "a"), straight_track(24, -0.4, 0.9, "b")};
    const auto scores =
        forecast::benchmark_predictors(tracks, {PredictorSpec::persistence(), PredictorSpec::linear()}, {12, 6, 0});
    ASSERT_EQ(scores.size(), 2u);
    EXPECT_EQ(scores[0].predictor, "persistence");
    EXPECT_EQ(scores[1].predictor, "linear");
    EXPECT_LT(scores[1].mean_error_km, scores[0].mean_error_km);
    EXPECT_EQ(scores[0].pairs, 12u);
}

TEST(BenchmarkPredictors, OracleFileScoresZero) {
    const std::vector<ingest::DrifterTrack> tracks{ingest::synthesize_track(1, 24, {34.0, 127.0}, 1.0, 0.3),
                                                   ingest::synthesize_track(2, 24, {33.0, 126.0}, 1.5, 0.3)};
    auto named = tracks;
    named[0].id = "x";
    named[1].id = "y";
    const auto path = std::filesystem::temp_directory_path() / "uavsar_oracle_multi.csv";
    {
        std::ofstream out(path);
        out << "id,step,lat,lon\n";
        out.precision(17);
        for (const auto& t : named) {
            for (std::size_t k = 1; k <= 6; ++k) {
                out << t.id << ',' << k << ',' << t.position(12 + k).lat() << ',' << t.position(12 + k).lon() << '\n';
            }
        }
    }
    const auto scores = forecast::benchmark_predictors(named, {PredictorSpec::external(path)}, {12, 6, 0});
    std::filesystem::remove(path);
    EXPECT_EQ(scores[0].mean_error_km, 0.0);
}
