#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "uavsar/geo.hpp"
#include "uavsar/ingest.hpp"

namespace uavsar::forecast {

enum class PredictorKind { persistence, linear_extrapolation, external_file };

/// Kind plus kind-specific parameters:
///  - linear_extrapolation: `window` (points used by the least-squares fit, 0 = all)
///  - external_file: `path` (CSV `step,lat,lon`, optionally prefixed by an `id` column)
struct PredictorSpec {
    PredictorKind kind = PredictorKind::persistence;
    std::map<std::string, std::string> params;

    [[nodiscard]] static PredictorSpec persistence();
    [[nodiscard]] static PredictorSpec linear(std::size_t window = 0);
    [[nodiscard]] static PredictorSpec external(const std::filesystem::path& path);

    /// `persistence`, `linear` (or `linear-extrapolation`), `external`
    /// (or `external-file`); `path` is required for the external kind.
    [[nodiscard]] static PredictorSpec parse(const std::string& name, const std::string& path = {});

    [[nodiscard]] std::string name() const;
};

struct Forecast {
    geo::GeoPoint predicted;
    /// Haversine distance between the prediction and the truth one step
    /// before the target time.
    double prev_step_error_km = 0.0;
    std::size_t history_used = 0;
};

/// Predictions for records accident_index+1 .. accident_index+steps. Each
/// step sees the real history context_start..accident_index followed by the
/// earlier predictions; latitude and longitude are modelled separately.
[[nodiscard]] std::vector<geo::GeoPoint> predict_recursive(const ingest::DrifterTrack& track,
                                                           std::size_t accident_index, std::size_t steps,
                                                           const PredictorSpec& predictor,
                                                           std::size_t context_start = 0);

[[nodiscard]] Forecast forecast_scenario(const ingest::DrifterTrack& track, const ingest::AccidentSpec& spec,
                                         const PredictorSpec& predictor);

/// External forecast rows keyed by track id ("" for files without an id column).
using ExternalForecast = std::map<std::string, std::vector<geo::GeoPoint>>;
[[nodiscard]] ExternalForecast parse_external_forecast(std::istream& in);
[[nodiscard]] ExternalForecast load_external_forecast(const std::filesystem::path& path);
void write_external_forecast(std::ostream& out, const std::vector<geo::GeoPoint>& steps);

struct BenchmarkOptions {
    std::size_t accident_index = 0;
    std::size_t horizon = 6;
    std::size_t context_start = 0;
};

struct PredictorScore {
    std::string predictor;
    double mean_error_km = 0.0;
    std::size_t pairs = 0;
};

/// Mean haversine error over every (track, horizon step) pair, one row per
/// predictor in input order.
[[nodiscard]] std::vector<PredictorScore> benchmark_predictors(const std::vector<ingest::DrifterTrack>& tracks,
                                                               const std::vector<PredictorSpec>& specs,
                                                               const BenchmarkOptions& options = {});

}  // namespace uavsar::forecast
