#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uavsar/model.hpp"
#include "uavsar/repair.hpp"
#include "uavsar/rng.hpp"
#include "uavsar/scenario.hpp"

namespace uavsar::optimize {

enum class Algorithm { random, sa, pso, ga };

[[nodiscard]] std::string_view to_string(Algorithm a) noexcept;
/// Accepts `random` (or `rs`), `sa`, `pso`, `ga`.
[[nodiscard]] Algorithm parse_algorithm(std::string_view name);

struct GaParams {
    std::size_t pop_size = 50;
    std::size_t generations = 50;
    double crossover_rate = 1.0;
    double mutation_rate = 0.1;
    double blx_alpha = 0.5;
};

struct PsoParams {
    std::size_t pop_size = 50;
    std::size_t generations = 50;
    double inertia_w = 0.7;
    double c1 = 2.0;
    double c2 = 2.0;
};

struct SaParams {
    double t0 = 1.0;
    double cooling = 0.95;
    /// Number of cooling epochs the evaluation budget is divided into.
    std::size_t iterations = 10;
    /// Neighbour step sigma as a fraction of the search radius at T = t0.
    double step_fraction = 0.1;
};

struct OptimizerConfig {
    Algorithm algorithm = Algorithm::ga;
    std::size_t n_uavs = 6;
    /// Fitness evaluations every algorithm performs, exactly.
    std::size_t budget_evals = 2500;
    std::uint64_t seed = 1;
    GaParams ga;
    PsoParams pso;
    SaParams sa;
    repair::RepairConfig repair;
    double fitness_unit_m = 100.0;

    void validate() const;
};

struct FitnessValue {
    std::size_t detected_segments = 0;
    std::size_t total_segments = 0;

    [[nodiscard]] std::size_t score() const noexcept { return detected_segments; }
    friend bool operator==(const FitnessValue&, const FitnessValue&) = default;
};

/// Midpoints of the `ceil(length / unit)` (at least one) equal pieces of a
/// candidate line, interpolated in the tangent plane at the line start.
[[nodiscard]] std::vector<geo::GeoPoint> segment_line(const scenario::CandidateLine& line, double unit_m);

/// Segment-coverage objective with the candidate-line discretisation cached.
/// Every call counts as one evaluation.
class FitnessEvaluator {
public:
    FitnessEvaluator(const scenario::Scenario& scenario, double unit_m);

    [[nodiscard]] FitnessValue operator()(const model::Deployment& deployment);

    [[nodiscard]] std::size_t evaluations() const noexcept { return evaluations_; }
    [[nodiscard]] std::size_t total_segments() const noexcept { return midpoints_.size(); }
    [[nodiscard]] std::vector<geo::GeoPoint> midpoints() const;

private:
    struct Midpoint {
        double lat_rad;
        double cos_lat;
        double lon_deg;
    };
    std::vector<Midpoint> midpoints_;
    std::size_t evaluations_ = 0;
};

/// One-shot fitness of a deployment; see FitnessEvaluator.
[[nodiscard]] FitnessValue fitness(const model::Deployment& deployment, const scenario::Scenario& scenario,
                                   double unit_m);

/// Each UAV at angle U[0, 2pi) and distance U[0, R] from the centre.
[[nodiscard]] model::Deployment initialize(std::size_t n_uavs, const scenario::SearchArea& area, Rng& rng);
[[nodiscard]] model::Deployment initialize(std::size_t n_uavs, const scenario::SearchArea& area,
                                           std::uint64_t seed);

/// Index-aligned blend crossover on tangent-plane coordinates: each offspring
/// coordinate uniform in [min - alpha*D, max + alpha*D], D = |x - y|.
[[nodiscard]] model::Deployment blx_crossover(const model::Deployment& a, const model::Deployment& b,
                                              double alpha, Rng& rng);

/// Replaces each UAV, with probability `rate`, by a fresh initialize()-style draw.
[[nodiscard]] model::Deployment mutate(const model::Deployment& d, double rate, Rng& rng);

struct OptimizationResult {
    model::Deployment best;
    FitnessValue best_fitness;
    /// Best-so-far score after every fitness evaluation.
    std::vector<std::size_t> history;
    std::size_t evals_used = 0;
};

/// Independent initialize() draws; no repair.
[[nodiscard]] OptimizationResult run_random(const scenario::Scenario& scenario, const OptimizerConfig& config);
[[nodiscard]] OptimizationResult run_ga(const scenario::Scenario& scenario, const OptimizerConfig& config);
[[nodiscard]] OptimizationResult run_pso(const scenario::Scenario& scenario, const OptimizerConfig& config);
[[nodiscard]] OptimizationResult run_sa(const scenario::Scenario& scenario, const OptimizerConfig& config);

/// Dispatches on config.algorithm.
[[nodiscard]] OptimizationResult run(const scenario::Scenario& scenario, const OptimizerConfig& config);

}  // namespace uavsar::optimize
