#include "uavsar/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "uavsar/errors.hpp"
#include "uavsar/geojson.hpp"
#include "uavsar/rng.hpp"

namespace uavsar::experiment {

void ExperimentSpec::validate() const {
    if (instances.empty()) throw ConfigError("experiment needs at least one instance");
    if (algorithms.empty()) throw ConfigError("experiment needs at least one algorithm");
    if (seeds.empty()) throw ConfigError("experiment needs at least one seed");
    if (uav_counts.empty()) throw ConfigError("experiment needs at least one UAV count");
    if (particle_counts.empty()) throw ConfigError("experiment needs at least one particle count");
    for (auto n : uav_counts) {
        if (n < 1) throw ConfigError("UAV counts must be >= 1");
    }
    for (auto k : particle_counts) {
        if (k < 1) throw ConfigError("particle counts must be >= 1");
    }
    evaluation.validate();
}

namespace {

InstanceSpec synthetic_instance(std::string name, std::uint64_t seed, double lat, double lon, double drift_kmh,
                                double turn_sigma) {
    InstanceSpec inst;
    inst.name = std::move(name);
    inst.source.synthetic = SyntheticTrack{seed, 24, lat, lon, drift_kmh, turn_sigma};
    inst.accident = ingest::AccidentSpec{"", 12, 6, 0};
    inst.predictor = forecast::PredictorSpec::linear();
    return inst;
}

}  // namespace

ExperimentSpec default_spec() {
    ExperimentSpec spec;
    spec.instances = {
        synthetic_instance("I-1", 11, 35.05, 129.10, 1.2, 0.30),
        synthetic_instance("I-2", 22, 33.20, 126.55, 0.9, 0.25),
        synthetic_instance("I-3", 33, 32.85, 125.90, 1.5, 0.35),
    };
    return spec;
}

PreparedInstance prepare_instance(const InstanceSpec& spec) {
    PreparedInstance out;
    out.name = spec.name;
    if (spec.source.synthetic) {
        const auto& s = *spec.source.synthetic;
        out.track = ingest::synthesize_track(s.seed, s.hours, geo::GeoPoint{s.start_lat, s.start_lon}, s.drift_kmh,
                                             s.turn_sigma_rad);
    } else {
        if (spec.source.csv_path.empty()) throw ConfigError("instance '" + spec.name + "' has no track source");
        const auto tracks = ingest::load_tracks(spec.source.csv_path);
        if (spec.source.track_id.empty()) {
            out.track = tracks.front();
        } else {
            const auto it = std::find_if(tracks.begin(), tracks.end(),
                                         [&](const ingest::DrifterTrack& t) { return t.id == spec.source.track_id; });
            if (it == tracks.end()) {
                throw ConfigError("track '" + spec.source.track_id + "' not found in " + spec.source.csv_path.string());
            }
            out.track = *it;
        }
    }
    out.accident = spec.accident;
    out.accident.track_id = out.track.id;
    out.forecast = forecast::forecast_scenario(out.track, out.accident, spec.predictor);
    return out;
}

std::uint64_t scenario_seed(std::uint64_t seed, std::size_t instance_index, std::size_t n_particles) {
    return derive_seed(seed, {0x5CE7A410ULL, instance_index, n_particles});
}

std::uint64_t optimizer_seed(std::uint64_t seed, std::size_t instance_index, std::size_t n_uavs,
                             std::size_t n_particles) {
    return derive_seed(seed, {0x0971312EULL, instance_index, n_uavs, n_particles});
}

std::string cell_label(const std::string& instance, std::size_t n_uavs, std::size_t n_particles,
                       std::string_view algorithm) {
    return instance + "_u" + std::to_string(n_uavs) + "_p" + std::to_string(n_particles) + "_" +
           std::string(algorithm);
}

RunOutput run_cell(const ExperimentSpec& spec, const PreparedInstance& instance, std::size_t instance_index,
                   std::size_t n_uavs, std::size_t n_particles, optimize::Algorithm algorithm, std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    auto sc = scenario::build_scenario(instance.track, instance.accident, instance.forecast, n_particles,
                                       scenario_seed(seed, instance_index, n_particles), spec.scenario);
    optimize::OptimizerConfig cfg = spec.optimizer;
    cfg.algorithm = algorithm;
    cfg.n_uavs = n_uavs;
    cfg.seed = optimizer_seed(seed, instance_index, n_uavs, n_particles);
    auto result = optimize::run(sc, cfg);
    auto report = evaluate::coverage(result.best, instance.track, instance.accident.accident_index,
                                     instance.accident.target_index(), spec.evaluation);
    const auto stop = std::chrono::steady_clock::now();

    ResultRow row;
    row.instance = instance.name;
    row.n_uavs = n_uavs;
    row.n_particles = n_particles;
    row.algorithm = std::string(optimize::to_string(algorithm));
    row.seed = seed;
    row.coverage = report.coverage;
    row.coverage_literal = report.coverage_literal;
    row.best_fitness = result.best_fitness.score();
    row.total_segments = result.best_fitness.total_segments;
    row.evals_used = result.evals_used;
    row.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    return RunOutput{std::move(row), std::move(sc), std::move(result), std::move(report)};
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const Progress& progress) {
    spec.validate();
    ExperimentResult out;
    for (const auto& inst : spec.instances) out.instances.push_back(prepare_instance(inst));

    struct Job {
        std::size_t instance, n_uavs, n_particles;
        optimize::Algorithm algorithm;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < spec.instances.size(); ++i) {
        for (auto n : spec.uav_counts) {
            for (auto k : spec.particle_counts) {
                for (auto a : spec.algorithms) {
                    for (auto s : spec.seeds) jobs.push_back(Job{i, n, k, a, s});
                }
            }
        }
    }

    std::vector<std::optional<RunOutput>> outputs(jobs.size());
    std::vector<std::string> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::mutex progress_mutex;

    const auto worker = [&] {
        for (std::size_t j = next++; j < jobs.size(); j = next++) {
            const auto& job = jobs[j];
            try {
                outputs[j] = run_cell(spec, out.instances[job.instance], job.instance, job.n_uavs, job.n_particles,
                                      job.algorithm, job.seed);
            } catch (const std::exception& e) {
                errors[j] = e.what();
            }
            const std::size_t d = ++done;
            if (progress) {
                std::lock_guard lock(progress_mutex);
                progress(d, jobs.size());
            }
        }
    };
    std::size_t workers = spec.workers != 0 ? spec.workers : std::max(1U, std::thread::hardware_concurrency());
    workers = std::min(workers, jobs.size());
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }

    std::map<std::string, std::size_t> map_index;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        const auto& job = jobs[j];
        const auto label = cell_label(spec.instances[job.instance].name, job.n_uavs, job.n_particles,
                                      optimize::to_string(job.algorithm));
        if (!outputs[j]) {
            out.failures.push_back(CellFailure{label + "_s" + std::to_string(job.seed), errors[j]});
            continue;
        }
        auto& o = *outputs[j];
        out.rows.push_back(o.row);
        const auto it = map_index.find(label);
        if (it == map_index.end()) {
            map_index.emplace(label, out.maps.size());
            out.maps.push_back(CellMap{label, job.instance, o.scenario, o.result.best, o.report});
        } else if (o.report.coverage > out.maps[it->second].report.coverage) {
            out.maps[it->second] = CellMap{label, job.instance, o.scenario, o.result.best, o.report};
        }
    }
    out.summary = summarize(out.rows);
    return out;
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
    std::vector<SummaryRow> out;
    std::map<std::string, std::size_t> index;
    for (const auto& r : rows) {
        const auto label = cell_label(r.instance, r.n_uavs, r.n_particles, r.algorithm);
        auto it = index.find(label);
        if (it == index.end()) {
            it = index.emplace(label, out.size()).first;
            out.push_back(SummaryRow{r.instance, r.n_uavs, r.n_particles, r.algorithm, 0.0, r.coverage, 0});
        }
        auto& s = out[it->second];
        s.avg += r.coverage;
        s.best = std::max(s.best, r.coverage);
        ++s.runs;
    }
    for (auto& s : out) s.avg /= static_cast<double>(s.runs);
    return out;
}

namespace {

std::string fixed(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

}  // namespace

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << "instance,n_uavs,n_particles,algorithm,seed,coverage,coverage_literal,best_fitness,total_segments,"
           "evals_used\n";
    for (const auto& r : rows) {
        out << r.instance << ',' << r.n_uavs << ',' << r.n_particles << ',' << r.algorithm << ',' << r.seed << ','
            << fixed(r.coverage) << ',' << fixed(r.coverage_literal) << ',' << r.best_fitness << ','
            << r.total_segments << ',' << r.evals_used << '\n';
    }
}

void write_timings_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << "instance,n_uavs,n_particles,algorithm,seed,wall_time_ms\n";
    for (const auto& r : rows) {
        out << r.instance << ',' << r.n_uavs << ',' << r.n_particles << ',' << r.algorithm << ',' << r.seed << ','
            << fixed(r.wall_time_ms, 3) << '\n';
    }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
    out << "instance,n_uavs,n_particles,algorithm,avg,best,runs\n";
    for (const auto& s : rows) {
        out << s.instance << ',' << s.n_uavs << ',' << s.n_particles << ',' << s.algorithm << ',' << fixed(s.avg)
            << ',' << fixed(s.best) << ',' << s.runs << '\n';
    }
}

void write_outputs(const std::filesystem::path& dir, const ExperimentResult& result, bool write_maps) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    const auto write = [&](const std::string& name, auto&& fn) {
        std::ofstream f(dir / name);
        if (!f) throw IoError("cannot write " + (dir / name).string());
        fn(f);
    };
    write("results.csv", [&](std::ostream& o) { write_results_csv(o, result.rows); });
    write("timings.csv", [&](std::ostream& o) { write_timings_csv(o, result.rows); });
    write("summary.csv", [&](std::ostream& o) { write_summary_csv(o, result.summary); });
    if (!write_maps) return;
    std::filesystem::create_directories(dir / "maps", ec);
    if (ec) throw IoError("cannot create maps directory: " + ec.message());
    for (const auto& m : result.maps) {
        const auto& inst = result.instances[m.instance_index];
        geojson::MapLayers layers;
        layers.scenario = &m.scenario;
        layers.deployment = &m.deployment;
        layers.track = &inst.track;
        layers.from_index = inst.accident.accident_index;
        layers.to_index = inst.accident.target_index();
        layers.report = &m.report;
        geojson::export_geojson(layers, dir / "maps" / (m.cell + ".geojson"));
    }
}

// ---------------------------------------------------------------------------
// JSON configuration

namespace {

using nlohmann::json;

template <typename T>
void read(const json& j, const char* key, T& target) {
    if (const auto it = j.find(key); it != j.end() && !it->is_null()) target = it->get<T>();
}

json predictor_json(const forecast::PredictorSpec& p) {
    json j{{"kind", p.kind == forecast::PredictorKind::persistence            ? "persistence"
                    : p.kind == forecast::PredictorKind::linear_extrapolation ? "linear"
                                                                              : "external"}};
    for (const auto& [k, v] : p.params) j[k] = v;
    return j;
}

forecast::PredictorSpec predictor_from(const json& j) {
    const auto kind = j.value("kind", std::string("linear"));
    if (kind == "linear" || kind == "linear-extrapolation") {
        std::size_t window = 0;
        if (const auto it = j.find("window"); it != j.end()) {
            window = it->is_string() ? std::stoul(it->get<std::string>()) : it->get<std::size_t>();
        }
        return forecast::PredictorSpec::linear(window);
    }
    return forecast::PredictorSpec::parse(kind, j.value("path", std::string()));
}

}  // namespace

std::string to_json(const ExperimentSpec& spec) {
    json instances = json::array();
    for (const auto& inst : spec.instances) {
        json track;
        if (inst.source.synthetic) {
            const auto& s = *inst.source.synthetic;
            track["synthetic"] = {{"seed", s.seed},           {"hours", s.hours},
                                  {"start_lat", s.start_lat}, {"start_lon", s.start_lon},
                                  {"drift_kmh", s.drift_kmh}, {"turn_sigma_rad", s.turn_sigma_rad}};
        } else {
            track["csv"] = inst.source.csv_path.string();
            track["id"] = inst.source.track_id;
        }
        instances.push_back({{"name", inst.name},
                             {"track", track},
                             {"accident_index", inst.accident.accident_index},
                             {"horizon_hours", inst.accident.horizon_hours},
                             {"context_start", inst.accident.context_start},
                             {"predictor", predictor_json(inst.predictor)}});
    }
    json algorithms = json::array();
    for (auto a : spec.algorithms) algorithms.push_back(std::string(optimize::to_string(a)));
    const auto& o = spec.optimizer;
    json scenario_j{{"radius_multiplier", spec.scenario.radius_multiplier},
                    {"sigma_multiplier", spec.scenario.sigma_multiplier},
                    {"radius_floor_km", spec.scenario.radius_floor_km}};
    if (spec.scenario.max_uav_distance_km) scenario_j["max_uav_distance_km"] = *spec.scenario.max_uav_distance_km;
    const json doc{
        {"instances", instances},
        {"algorithms", algorithms},
        {"seeds", spec.seeds},
        {"uav_counts", spec.uav_counts},
        {"particle_counts", spec.particle_counts},
        {"optimizer",
         {{"budget_evals", o.budget_evals},
          {"fitness_unit_m", o.fitness_unit_m},
          {"ga",
           {{"pop_size", o.ga.pop_size},
            {"generations", o.ga.generations},
            {"crossover_rate", o.ga.crossover_rate},
            {"mutation_rate", o.ga.mutation_rate},
            {"blx_alpha", o.ga.blx_alpha}}},
          {"pso",
           {{"pop_size", o.pso.pop_size},
            {"generations", o.pso.generations},
            {"inertia_w", o.pso.inertia_w},
            {"c1", o.pso.c1},
            {"c2", o.pso.c2}}},
          {"sa",
           {{"t0", o.sa.t0},
            {"cooling", o.sa.cooling},
            {"iterations", o.sa.iterations},
            {"step_fraction", o.sa.step_fraction}}},
          {"repair",
           {{"max_iter", o.repair.max_iter},
            {"alpha_r", o.repair.alpha_r},
            {"overlap_tolerance_m", o.repair.overlap_tolerance_m}}}}},
        {"scenario", scenario_j},
        {"evaluation",
         {{"unit_m", spec.evaluation.unit_m}, {"k0", spec.evaluation.k0}, {"literal_formula", spec.evaluation.literal_formula}}},
        {"workers", spec.workers}};
    return doc.dump(2);
}

ExperimentSpec spec_from_json(const std::string& text) {
    ExperimentSpec spec = default_spec();
    try {
        const json doc = json::parse(text);
        if (const auto it = doc.find("instances"); it != doc.end()) {
            spec.instances.clear();
            for (const auto& ij : *it) {
                InstanceSpec inst;
                inst.name = ij.at("name").get<std::string>();
                const auto& track = ij.at("track");
                if (const auto s = track.find("synthetic"); s != track.end()) {
                    SyntheticTrack st;
                    read(*s, "seed", st.seed);
                    read(*s, "hours", st.hours);
                    read(*s, "start_lat", st.start_lat);
                    read(*s, "start_lon", st.start_lon);
                    read(*s, "drift_kmh", st.drift_kmh);
                    read(*s, "turn_sigma_rad", st.turn_sigma_rad);
                    inst.source.synthetic = st;
                } else {
                    inst.source.csv_path = track.at("csv").get<std::string>();
                    inst.source.track_id = track.value("id", std::string());
                }
                inst.accident = ingest::AccidentSpec{"", 12, 6, 0};
                read(ij, "accident_index", inst.accident.accident_index);
                read(ij, "horizon_hours", inst.accident.horizon_hours);
                read(ij, "context_start", inst.accident.context_start);
                if (const auto p = ij.find("predictor"); p != ij.end()) inst.predictor = predictor_from(*p);
                spec.instances.push_back(std::move(inst));
            }
        }
        if (const auto it = doc.find("algorithms"); it != doc.end()) {
            spec.algorithms.clear();
            for (const auto& a : *it) spec.algorithms.push_back(optimize::parse_algorithm(a.get<std::string>()));
        }
        read(doc, "seeds", spec.seeds);
        read(doc, "uav_counts", spec.uav_counts);
        read(doc, "particle_counts", spec.particle_counts);
        read(doc, "workers", spec.workers);
        if (const auto o = doc.find("optimizer"); o != doc.end()) {
            auto& cfg = spec.optimizer;
            read(*o, "budget_evals", cfg.budget_evals);
            read(*o, "fitness_unit_m", cfg.fitness_unit_m);
            if (const auto g = o->find("ga"); g != o->end()) {
                read(*g, "pop_size", cfg.ga.pop_size);
                read(*g, "generations", cfg.ga.generations);
                read(*g, "crossover_rate", cfg.ga.crossover_rate);
                read(*g, "mutation_rate", cfg.ga.mutation_rate);
                read(*g, "blx_alpha", cfg.ga.blx_alpha);
            }
            if (const auto p = o->find("pso"); p != o->end()) {
                read(*p, "pop_size", cfg.pso.pop_size);
                read(*p, "generations", cfg.pso.generations);
                read(*p, "inertia_w", cfg.pso.inertia_w);
                read(*p, "c1", cfg.pso.c1);
                read(*p, "c2", cfg.pso.c2);
            }
            if (const auto s = o->find("sa"); s != o->end()) {
                read(*s, "t0", cfg.sa.t0);
                read(*s, "cooling", cfg.sa.cooling);
                read(*s, "iterations", cfg.sa.iterations);
                read(*s, "step_fraction", cfg.sa.step_fraction);
            }
            if (const auto r = o->find("repair"); r != o->end()) {
                read(*r, "max_iter", cfg.repair.max_iter);
                read(*r, "alpha_r", cfg.repair.alpha_r);
                read(*r, "overlap_tolerance_m", cfg.repair.overlap_tolerance_m);
            }
        }
        if (const auto s = doc.find("scenario"); s != doc.end()) {
            read(*s, "radius_multiplier", spec.scenario.radius_multiplier);
            read(*s, "sigma_multiplier", spec.scenario.sigma_multiplier);
            read(*s, "radius_floor_km", spec.scenario.radius_floor_km);
            if (const auto m = s->find("max_uav_distance_km"); m != s->end() && !m->is_null()) {
                spec.scenario.max_uav_distance_km = m->get<double>();
            }
        }
        if (const auto e = doc.find("evaluation"); e != doc.end()) {
            read(*e, "unit_m", spec.evaluation.unit_m);
            read(*e, "k0", spec.evaluation.k0);
            read(*e, "literal_formula", spec.evaluation.literal_formula);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid experiment config: ") + e.what());
    }
    spec.validate();
    return spec;
}

}  // namespace uavsar::experiment
