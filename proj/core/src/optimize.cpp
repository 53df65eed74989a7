#include "uavsar/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "uavsar/errors.hpp"

namespace uavsar::optimize {

std::string_view to_string(Algorithm a) noexcept {
    switch (a) {
        case Algorithm::random: return "random";
        case Algorithm::sa: return "sa";
        case Algorithm::pso: return "pso";
        case Algorithm::ga: return "ga";
    }
    return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
    if (name == "random" || name == "rs") return Algorithm::random;
    if (name == "sa") return Algorithm::sa;
    if (name == "pso") return Algorithm::pso;
    if (name == "ga") return Algorithm::ga;
    throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

void OptimizerConfig::validate() const {
    const auto rate = [](double r) { return r >= 0.0 && r <= 1.0; };
    if (n_uavs < 1) throw ConfigError("n_uavs must be >= 1");
    if (budget_evals < 1) throw ConfigError("budget_evals must be >= 1");
    if (!(fitness_unit_m > 0.0)) throw ConfigError("fitness_unit_m must be positive");
    repair.validate();
    switch (algorithm) {
        case Algorithm::random:
            break;
        case Algorithm::ga:
            if (ga.pop_size < 2 || ga.pop_size % 2 != 0) throw ConfigError("GA pop_size must be even and >= 2");
            if (ga.generations < 1) throw ConfigError("GA generations must be >= 1");
            if (!rate(ga.crossover_rate) || !rate(ga.mutation_rate)) {
                throw ConfigError("GA rates must lie in [0, 1]");
            }
            if (!(ga.blx_alpha >= 0.0)) throw ConfigError("BLX alpha must be non-negative");
            if (budget_evals < ga.pop_size) throw ConfigError("budget_evals must cover the initial GA population");
            break;
        case Algorithm::pso:
            if (pso.pop_size < 1 || pso.generations < 1) throw ConfigError("PSO sizes must be >= 1");
            if (budget_evals < pso.pop_size) throw ConfigError("budget_evals must cover the initial PSO swarm");
            break;
        case Algorithm::sa:
            if (!(sa.t0 > 0.0)) throw ConfigError("SA t0 must be positive");
            if (!(sa.cooling > 0.0 && sa.cooling <= 1.0)) throw ConfigError("SA cooling must lie in (0, 1]");
            if (sa.iterations < 1) throw ConfigError("SA iterations must be >= 1");
            if (!(sa.step_fraction >= 0.0)) throw ConfigError("SA step_fraction must be non-negative");
            break;
    }
}

std::vector<geo::GeoPoint> segment_line(const scenario::CandidateLine& line, double unit_m) {
    if (!(unit_m > 0.0)) throw ConfigError("segment unit must be positive");
    const double pieces = std::ceil(line.length_km * 1000.0 / unit_m - 1e-9);
    const auto n = static_cast<std::size_t>(std::max(1.0, pieces));
    const geo::LocalVector span = geo::to_local(line.end, line.start);
    std::vector<geo::GeoPoint> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        out.push_back(geo::from_local(t * span, line.start));
    }
    return out;
}

FitnessEvaluator::FitnessEvaluator(const scenario::Scenario& scenario, double unit_m) {
    for (const auto& line : scenario.lines) {
        for (const auto& p : segment_line(line, unit_m)) {
            const double lat = geo::deg2rad(p.lat());
            midpoints_.push_back(Midpoint{lat, std::cos(lat), p.lon()});
        }
    }
}

std::vector<geo::GeoPoint> FitnessEvaluator::midpoints() const {
    std::vector<geo::GeoPoint> out;
    out.reserve(midpoints_.size());
    for (const auto& m : midpoints_) out.emplace_back(geo::rad2deg(m.lat_rad), m.lon_deg);
    return out;
}

FitnessValue FitnessEvaluator::operator()(const model::Deployment& deployment) {
    ++evaluations_;
    struct Uav {
        double lat_rad, cos_lat, lon_deg, radius_m, lat_window_rad;
    };
    const double earth_km = geo::kEarth.radius_km();
    std::vector<Uav> uavs;
    uavs.reserve(deployment.size());
    for (const auto& u : deployment.uavs()) {
        const double lat = geo::deg2rad(u.position().lat());
        const double r = u.detection_radius_m();
        // Central angle >= |dlat|, so midpoints outside this latitude band
        // cannot be covered; the 1 m slack dwarfs rounding.
        uavs.push_back(Uav{lat, std::cos(lat), u.position().lon(), r, (r + 1.0) / (earth_km * 1000.0)});
    }

    std::size_t detected = 0;
    for (const auto& m : midpoints_) {
        for (const auto& u : uavs) {
            if (std::abs(m.lat_rad - u.lat_rad) >= u.lat_window_rad) continue;
            // Same operation order as model::covers(uav, midpoint).
            const double d_km =
                earth_km * geo::detail::central_angle(u.lat_rad, u.cos_lat, m.lat_rad, m.cos_lat,
                                                      geo::deg2rad(m.lon_deg - u.lon_deg));
            if (d_km * 1000.0 < u.radius_m) {
                ++detected;
                break;
            }
        }
    }
    return FitnessValue{detected, midpoints_.size()};
}

FitnessValue fitness(const model::Deployment& deployment, const scenario::Scenario& scenario, double unit_m) {
    FitnessEvaluator eval(scenario, unit_m);
    return eval(deployment);
}

namespace {

geo::GeoPoint random_position(const scenario::SearchArea& area, Rng& rng) {
    const double theta = 2.0 * std::numbers::pi * uniform01(rng);
    const double h = area.radius_km * uniform01(rng);
    return geo::point_at_distance(area.center, {std::cos(theta), std::sin(theta)}, h);
}

std::vector<geo::LocalVector> to_local_all(const model::Deployment& d) {
    std::vector<geo::LocalVector> out;
    out.reserve(d.size());
    for (const auto& u : d.uavs()) out.push_back(geo::to_local(u.position(), d.area().center));
    return out;
}

model::Deployment from_local_all(const scenario::SearchArea& area, const std::vector<geo::LocalVector>& local) {
    std::vector<geo::GeoPoint> pts;
    pts.reserve(local.size());
    for (const auto& v : local) pts.push_back(geo::from_local(v, area.center));
    return model::Deployment(area, pts);
}

// Tracks the evaluation count, best-so-far and history shared by all runners.
class Search {
public:
    Search(const scenario::Scenario& scenario, const OptimizerConfig& config)
        : eval_(scenario, config.fitness_unit_m), budget_(config.budget_evals) {
        history_.reserve(budget_);
    }

    [[nodiscard]] bool exhausted() const noexcept { return eval_.evaluations() >= budget_; }
    [[nodiscard]] std::size_t remaining() const noexcept { return budget_ - eval_.evaluations(); }

    FitnessValue evaluate(const model::Deployment& d) {
        const FitnessValue f = eval_(d);
        if (!best_ || f.score() > best_fitness_.score()) {
            best_ = d;
            best_fitness_ = f;
        }
        history_.push_back(best_fitness_.score());
        return f;
    }

    OptimizationResult finish() && {
        return OptimizationResult{std::move(*best_), best_fitness_, std::move(history_), eval_.evaluations()};
    }

private:
    FitnessEvaluator eval_;
    std::size_t budget_;
    std::optional<model::Deployment> best_;
    FitnessValue best_fitness_;
    std::vector<std::size_t> history_;
};

struct Individual {
    model::Deployment deployment;
    FitnessValue fitness;
};

}  // namespace

model::Deployment initialize(std::size_t n_uavs, const scenario::SearchArea& area, Rng& rng) {
    if (n_uavs < 1) throw ConfigError("n_uavs must be >= 1");
    std::vector<geo::GeoPoint> pts;
    pts.reserve(n_uavs);
    for (std::size_t i = 0; i < n_uavs; ++i) pts.push_back(random_position(area, rng));
    return model::Deployment(area, pts);
}

model::Deployment initialize(std::size_t n_uavs, const scenario::SearchArea& area, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    return initialize(n_uavs, area, rng);
}

model::Deployment blx_crossover(const model::Deployment& a, const model::Deployment& b, double alpha, Rng& rng) {
    if (a.size() != b.size()) throw ConfigError("BLX parents must have the same number of UAVs");
    const auto la = to_local_all(a);
    const auto lb = to_local_all(b);
    const auto blend = [&](double x, double y) {
        const double d = std::abs(x - y);
        const double lo = std::min(x, y) - alpha * d;
        const double hi = std::max(x, y) + alpha * d;
        return lo + uniform01(rng) * (hi - lo);
    };
    std::vector<geo::LocalVector> child(la.size());
    for (std::size_t i = 0; i < la.size(); ++i) {
        child[i].east_m = blend(la[i].east_m, lb[i].east_m);
        child[i].north_m = blend(la[i].north_m, lb[i].north_m);
    }
    return from_local_all(a.area(), child);
}

model::Deployment mutate(const model::Deployment& d, double rate, Rng& rng) {
    model::Deployment out = d;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (uniform01(rng) < rate) out.set_position(i, random_position(out.area(), rng));
    }
    return out;
}

OptimizationResult run_random(const scenario::Scenario& scenario, const OptimizerConfig& config) {
    config.validate();
    Rng rng = make_rng(config.seed);
    Search search(scenario, config);
    while (!search.exhausted()) search.evaluate(initialize(config.n_uavs, scenario.area, rng));
    return std::move(search).finish();
}

OptimizationResult run_ga(const scenario::Scenario& scenario, const OptimizerConfig& config) {
    config.validate();
    const auto& p = config.ga;
    Rng rng = make_rng(config.seed);
    Search search(scenario, config);

    std::vector<Individual> pop;
    pop.reserve(2 * p.pop_size);
    for (std::size_t i = 0; i < p.pop_size; ++i) {
        auto d = repair::repair(initialize(config.n_uavs, scenario.area, rng), config.repair);
        const auto f = search.evaluate(d);
        pop.push_back(Individual{std::move(d), f});
    }

    std::vector<std::size_t> order(p.pop_size);
    while (!search.exhausted()) {
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);

        std::vector<Individual> offspring;
        offspring.reserve(p.pop_size);
        for (std::size_t k = 0; k + 1 < p.pop_size && !search.exhausted(); k += 2) {
            const auto& a = pop[order[k]].deployment;
            const auto& b = pop[order[k + 1]].deployment;
            const bool cross = uniform01(rng) < p.crossover_rate;
            for (int c = 0; c < 2 && !search.exhausted(); ++c) {
                model::Deployment child = cross ? blx_crossover(a, b, p.blx_alpha, rng) : (c == 0 ? a : b);
                child = repair::repair(mutate(child, p.mutation_rate, rng), config.repair);
                const auto f = search.evaluate(child);
                offspring.push_back(Individual{std::move(child), f});
            }
        }

        // (mu + lambda) truncation; stable so earlier individuals win ties.
        for (auto& o : offspring) pop.push_back(std::move(o));
        std::stable_sort(pop.begin(), pop.end(), [](const Individual& x, const Individual& y) {
            return x.fitness.score() > y.fitness.score();
        });
        pop.erase(pop.begin() + static_cast<std::ptrdiff_t>(p.pop_size), pop.end());
    }
    return std::move(search).finish();
}

OptimizationResult run_pso(const scenario::Scenario& scenario, const OptimizerConfig& config) {
    config.validate();
    const auto& p = config.pso;
    const auto& area = scenario.area;
    Rng rng = make_rng(config.seed);
    Search search(scenario, config);

    // Positions in tangent-plane kilometres, two dimensions per UAV.
    const auto flatten = [](const model::Deployment& d) {
        std::vector<double> x;
        x.reserve(2 * d.size());
        for (const auto& v : to_local_all(d)) {
            x.push_back(v.east_m / 1000.0);
            x.push_back(v.north_m / 1000.0);
        }
        return x;
    };
    const auto unflatten = [&](const std::vector<double>& x) {
        std::vector<geo::LocalVector> local(x.size() / 2);
        for (std::size_t i = 0; i < local.size(); ++i) local[i] = {x[2 * i] * 1000.0, x[2 * i + 1] * 1000.0};
        return from_local_all(area, local);
    };

    struct Particle {
        std::vector<double> x, v, best_x;
        std::size_t best_score = 0;
    };
    std::vector<Particle> swarm;
    swarm.reserve(p.pop_size);
    std::vector<double> gbest;
    std::size_t gbest_score = 0;
    for (std::size_t i = 0; i < p.pop_size; ++i) {
        const auto d = repair::repair(initialize(config.n_uavs, area, rng), config.repair);
        const auto f = search.evaluate(d);
        auto x = flatten(d);
        if (gbest.empty() || f.score() > gbest_score) {
            gbest = x;
            gbest_score = f.score();
        }
        swarm.push_back(Particle{x, std::vector<double>(x.size(), 0.0), x, f.score()});
    }

    while (!search.exhausted()) {
        for (auto& particle : swarm) {
            if (search.exhausted()) break;
            for (std::size_t d = 0; d < particle.x.size(); ++d) {
                const double r1 = uniform01(rng);
                const double r2 = uniform01(rng);
                particle.v[d] = p.inertia_w * particle.v[d] + p.c1 * r1 * (particle.best_x[d] - particle.x[d]) +
                                p.c2 * r2 * (gbest[d] - particle.x[d]);
                particle.x[d] += particle.v[d];
            }
            const auto repaired = repair::repair(unflatten(particle.x), config.repair);
            particle.x = flatten(repaired);
            const auto f = search.evaluate(repaired);
            if (f.score() > particle.best_score) {
                particle.best_score = f.score();
                particle.best_x = particle.x;
            }
        }
        for (const auto& particle : swarm) {
            if (particle.best_score > gbest_score) {
                gbest_score = particle.best_score;
                gbest = particle.best_x;
            }
        }
    }
    return std::move(search).finish();
}

OptimizationResult run_sa(const scenario::Scenario& scenario, const OptimizerConfig& config) {
    config.validate();
    const auto& p = config.sa;
    const auto& area = scenario.area;
    Rng rng = make_rng(config.seed);
    Search search(scenario, config);

    const std::size_t epoch = std::max<std::size_t>(1, config.budget_evals / p.iterations);
    double temperature = p.t0;

    model::Deployment current = repair::repair(initialize(config.n_uavs, area, rng), config.repair);
    FitnessValue current_fit = search.evaluate(current);
    std::size_t evals = 1;
    if (evals % epoch == 0) temperature *= p.cooling;

    std::normal_distribution<double> normal(0.0, 1.0);
    while (!search.exhausted()) {
        const double sigma_m = p.step_fraction * area.radius_km * 1000.0 * temperature / p.t0;
        auto local = to_local_all(current);
        for (auto& v : local) {
            v.east_m += sigma_m * normal(rng);
            v.north_m += sigma_m * normal(rng);
        }
        model::Deployment candidate = repair::repair(from_local_all(area, local), config.repair);
        const FitnessValue cand_fit = search.evaluate(candidate);
        ++evals;

        const double delta = static_cast<double>(cand_fit.score()) - static_cast<double>(current_fit.score());
        const double u = uniform01(rng);
        if (delta >= 0.0 || u < std::exp(delta / temperature)) {
            current = std::move(candidate);
            current_fit = cand_fit;
        }
        if (evals % epoch == 0) temperature *= p.cooling;
    }
    return std::move(search).finish();
}

OptimizationResult run(const scenario::Scenario& scenario, const OptimizerConfig& config) {
    switch (config.algorithm) {
        case Algorithm::random: return run_random(scenario, config);
        case Algorithm::sa: return run_sa(scenario, config);
        case Algorithm::pso: return run_pso(scenario, config);
        case Algorithm::ga: return run_ga(scenario, config);
    }
    throw ConfigError("unknown algorithm");
}

}  // namespace uavsar::optimize
