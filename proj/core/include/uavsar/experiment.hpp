#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "uavsar/evaluate.hpp"
#include "uavsar/forecast.hpp"
#include "uavsar/ingest.hpp"
#include "uavsar/model.hpp"
#include "uavsar/optimize.hpp"
#include "uavsar/scenario.hpp"

namespace uavsar::experiment {

struct SyntheticTrack {
    std::uint64_t seed = 1;
    std::size_t hours = 24;
    double start_lat = 34.0;
    double start_lon = 127.0;
    double drift_kmh = 1.5;
    double turn_sigma_rad = 0.25;
};

/// Either a synthetic track or a track loaded from a drifter CSV.
struct TrackSource {
    std::optional<SyntheticTrack> synthetic;
    std::filesystem::path csv_path;
    std::string track_id;
};

struct InstanceSpec {
    std::string name;
    TrackSource source;
    ingest::AccidentSpec accident;
    forecast::PredictorSpec predictor = forecast::PredictorSpec::linear();
};

struct ExperimentSpec {
    std::vector<InstanceSpec> instances;
    std::vector<optimize::Algorithm> algorithms{optimize::Algorithm::random, optimize::Algorithm::sa,
                                                optimize::Algorithm::pso, optimize::Algorithm::ga};
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    std::vector<std::size_t> uav_counts{6, 8};
    std::vector<std::size_t> particle_counts{10, 15};
    /// Algorithm-independent settings; `algorithm`, `n_uavs` and `seed` are
    /// overwritten per run.
    optimize::OptimizerConfig optimizer;
    scenario::ScenarioConfig scenario;
    evaluate::EvaluationConfig evaluation;
    /// 0 = one worker per hardware thread.
    std::size_t workers = 0;

    void validate() const;
};

/// Three synthetic instances with every tabulated default filled in.
[[nodiscard]] ExperimentSpec default_spec();

/// Parses a JSON document mirroring ExperimentSpec; absent keys keep the
/// default_spec() values.
[[nodiscard]] ExperimentSpec spec_from_json(const std::string& text);
[[nodiscard]] std::string to_json(const ExperimentSpec& spec);

/// Materialised instance: the track, the forecast and the trajectory slice
/// used for evaluation.
struct PreparedInstance {
    std::string name;
    ingest::DrifterTrack track;
    ingest::AccidentSpec accident;
    forecast::Forecast forecast;
};

[[nodiscard]] PreparedInstance prepare_instance(const InstanceSpec& spec);

/// Particle seed shared by every algorithm and UAV count of a cell so runs
/// are paired.
[[nodiscard]] std::uint64_t scenario_seed(std::uint64_t seed, std::size_t instance_index, std::size_t n_particles);
[[nodiscard]] std::uint64_t optimizer_seed(std::uint64_t seed, std::size_t instance_index, std::size_t n_uavs,
                                           std::size_t n_particles);

struct ResultRow {
    std::string instance;
    std::size_t n_uavs = 0;
    std::size_t n_particles = 0;
    std::string algorithm;
    std::uint64_t seed = 0;
    double coverage = 0.0;
    double coverage_literal = 0.0;
    std::size_t best_fitness = 0;
    std::size_t total_segments = 0;
    std::size_t evals_used = 0;
    double wall_time_ms = 0.0;
};

struct SummaryRow {
    std::string instance;
    std::size_t n_uavs = 0;
    std::size_t n_particles = 0;
    std::string algorithm;
    double avg = 0.0;
    double best = 0.0;
    std::size_t runs = 0;
};

struct CellFailure {
    std::string cell;
    std::string message;
};

/// Best-coverage run of each (instance, uavs, particles, algorithm) cell,
/// kept for map output.
struct CellMap {
    std::string cell;
    std::size_t instance_index = 0;
    scenario::Scenario scenario;
    model::Deployment deployment;
    evaluate::EvaluationReport report;
};

struct ExperimentResult {
    std::vector<PreparedInstance> instances;
    std::vector<ResultRow> rows;
    std::vector<SummaryRow> summary;
    std::vector<CellFailure> failures;
    std::vector<CellMap> maps;
};

/// One run of the grid: build the paired scenario, optimise, score against
/// the true trajectory between the accident and the target record.
struct RunOutput {
    ResultRow row;
    scenario::Scenario scenario;
    optimize::OptimizationResult result;
    evaluate::EvaluationReport report;
};

[[nodiscard]] RunOutput run_cell(const ExperimentSpec& spec, const PreparedInstance& instance,
                                 std::size_t instance_index, std::size_t n_uavs, std::size_t n_particles,
                                 optimize::Algorithm algorithm, std::uint64_t seed);

using Progress = std::function<void(std::size_t done, std::size_t total)>;

/// Full Cartesian product instance x uavs x particles x algorithm x seed.
/// Rows come back in that nesting order whatever the worker count.
[[nodiscard]] ExperimentResult run_experiment(const ExperimentSpec& spec, const Progress& progress = {});

/// Average and best coverage per cell, in row order of first appearance.
[[nodiscard]] std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_timings_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

/// results.csv, timings.csv, summary.csv and maps/<cell>.geojson under `dir`.
void write_outputs(const std::filesystem::path& dir, const ExperimentResult& result, bool write_maps = true);

[[nodiscard]] std::string cell_label(const std::string& instance, std::size_t n_uavs, std::size_t n_particles,
                                     std::string_view algorithm);

}  // namespace uavsar::experiment
