#include "uavsar/validation.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "uavsar/evaluate.hpp"
#include "uavsar/geo.hpp"
#include "uavsar/model.hpp"
#include "uavsar/optimize.hpp"
#include "uavsar/repair.hpp"
#include "uavsar/rng.hpp"
#include "uavsar/scenario.hpp"

namespace uavsar::validation {

namespace {

std::string fmt(const char* format, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), format, a, b);
    return buf;
}

scenario::Scenario small_scenario(std::uint64_t seed) {
    const geo::GeoPoint center{34.0, 127.0};
    const geo::GeoPoint accident = geo::point_at_distance(center, {-1.0, -0.5}, 4.0);
    forecast::Forecast f{center, 0.8, 1};
    auto particles = scenario::sample_particles(f, 10, 4.0, seed);
    return scenario::make_scenario(accident, scenario::build_search_area(f), std::move(particles), 3.2);
}

CheckResult check_geometry() {
    const geo::GeoPoint o{0.0, 0.0};
    const double degree = geo::haversine_km(o, {0.0, 1.0});
    const double quarter = geo::haversine_km(o, {90.0, 0.0});
    const double e1 = std::abs(degree - 6371.0 * std::numbers::pi / 180.0) / degree;
    const double e2 = std::abs(quarter - 6371.0 * std::numbers::pi / 2.0) / quarter;
    return {"geometry: haversine fixtures", e1 < 1e-4 && e2 < 1e-4,
            fmt("1 deg = %.4f km, quarter meridian = %.2f km", degree, quarter)};
}

CheckResult check_radius_law() {
    const bool ok = model::detection_radius_m(0.0) == 600.0 && model::detection_radius_m(1.0) == 400.0 &&
                    model::detection_radius_m(2.0) == 200.0 && model::detection_radius_m(3.5) == 200.0;
    return {"model: detection radius law", ok, "d = 0, 1, 2, 3.5 km -> 600, 400, 200, 200 m"};
}

CheckResult check_pod() {
    const double hi = model::pod_for_radius(600.0);
    const double lo = model::pod_for_radius(200.0);
    const bool ok = std::abs(hi - 0.6321) < 1e-4 && std::abs(lo - 0.2835) < 1e-4;
    return {"model: PoD bounds", ok, fmt("PoD(600 m) = %.5f, PoD(200 m) = %.5f", hi, lo)};
}

CheckResult check_repair(std::size_t trials) {
    Rng rng = make_rng(2024);
    std::size_t violations = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const double r = 1.0 + 9.0 * uniform01(rng);
        const scenario::SearchArea area{{34.0, 127.0}, r};
        const std::size_t n = (t % 2 == 0) ? 6 : 8;
        // Start from a spread twice the area so phase 1 has work to do.
        auto d = optimize::initialize(n, scenario::SearchArea{area.center, 2.0 * r}, rng);
        const model::Deployment wide(area, d.positions());
        violations += repair::count_boundary_violations(repair::repair(wide));
    }
    return {"repair: boundary feasibility", violations == 0,
            fmt("%.0f violations over %.0f deployments", static_cast<double>(violations), static_cast<double>(trials))};
}

CheckResult check_monte_carlo(std::size_t fixtures) {
    Rng rng = make_rng(77);
    double worst = 0.0;
    for (std::size_t f = 0; f < fixtures; ++f) {
        std::vector<double> pods(20, 0.0);
        for (auto& p : pods) {
            if (uniform01(rng) < 0.3) p = model::pod_for_radius(200.0 + 400.0 * uniform01(rng));
        }
        pods[f % pods.size()] = model::pod_for_radius(600.0);
        const double exact = evaluate::survival_coverage(pods, 100);
        const double mc = evaluate::monte_carlo_survival(pods, 100, 10000, 1000 + f);
        worst = std::max(worst, std::abs(mc - exact) / exact);
    }
    return {"evaluate: coverage vs Monte-Carlo", worst < 0.005, fmt("worst relative error %.4f%%", 100.0 * worst)};
}

CheckResult check_determinism_and_budget(std::size_t budget) {
    const auto sc = small_scenario(5);
    bool deterministic = true;
    bool parity = true;
    std::string detail;
    for (auto a : {optimize::Algorithm::random, optimize::Algorithm::sa, optimize::Algorithm::pso,
                   optimize::Algorithm::ga}) {
        optimize::OptimizerConfig cfg;
        cfg.algorithm = a;
        cfg.budget_evals = budget;
        cfg.ga.pop_size = cfg.pso.pop_size = 20;
        cfg.seed = 9;
        const auto r1 = optimize::run(sc, cfg);
        const auto r2 = optimize::run(sc, cfg);
        deterministic = deterministic && r1.best == r2.best && r1.history == r2.history;
        parity = parity && r1.evals_used == budget && r1.history.size() == budget;
        detail += std::string(optimize::to_string(a)) + "=" + std::to_string(r1.evals_used) + " ";
    }
    return {"optimize: determinism and budget parity", deterministic && parity, "evaluations: " + detail};
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidationOptions& options) {
    return {check_geometry(),
            check_radius_law(),
            check_pod(),
            check_repair(options.repair_trials),
            check_monte_carlo(options.monte_carlo_fixtures),
            check_determinism_and_budget(options.budget_evals)};
}

}  // namespace uavsar::validation
