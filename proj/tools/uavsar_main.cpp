// uavsar: plan UAV search deployments for drifting objects.
//
//   uavsar predict    --tracks drifters.csv [--predictor linear] [--horizon 6]
//   uavsar plan       [--tracks drifters.csv] [--algo ga] [--uavs 6] [--particles 10] --out plan/
//   uavsar experiment [--config spec.json] --out results/
//   uavsar validate

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "uavsar/errors.hpp"
#include "uavsar/evaluate.hpp"
#include "uavsar/experiment.hpp"
#include "uavsar/forecast.hpp"
#include "uavsar/geojson.hpp"
#include "uavsar/ingest.hpp"
#include "uavsar/optimize.hpp"
#include "uavsar/scenario.hpp"
#include "uavsar/validation.hpp"

namespace {

using namespace uavsar;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CommonOptions {
    std::string config;
    std::string tracks;
    std::string track_id;
    std::string forecast_file;
    std::string predictor = "linear";
    std::string out = "out";
    std::uint64_t seed = 1;
    std::size_t accident_index = 12;
    std::size_t horizon = 6;
};

experiment::ExperimentSpec load_spec(const CommonOptions& o) {
    auto spec = o.config.empty() ? experiment::default_spec() : experiment::spec_from_json(read_file(o.config));
    if (!o.tracks.empty()) {
        // A track file on the command line replaces the configured instances.
        auto tracks = ingest::load_tracks(o.tracks);
        spec.instances.clear();
        for (const auto& t : tracks) {
            if (!o.track_id.empty() && t.id != o.track_id) continue;
            experiment::InstanceSpec inst;
            inst.name = t.id;
            inst.source.csv_path = o.tracks;
            inst.source.track_id = t.id;
            inst.accident = ingest::AccidentSpec{t.id, o.accident_index, o.horizon, 0};
            inst.predictor = forecast::PredictorSpec::parse(o.predictor, o.forecast_file);
            spec.instances.push_back(std::move(inst));
        }
        if (spec.instances.empty()) throw ConfigError("no track matches --track-id " + o.track_id);
    } else if (!o.forecast_file.empty() || o.predictor != "linear") {
        for (auto& inst : spec.instances) inst.predictor = forecast::PredictorSpec::parse(o.predictor, o.forecast_file);
    }
    return spec;
}

int cmd_predict(const CommonOptions& o) {
    if (o.tracks.empty()) throw ConfigError("predict needs --tracks");
    std::vector<std::string> warnings;
    const auto tracks = ingest::load_tracks(o.tracks, ingest::kDrifterCsvSchema, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
    std::vector<forecast::PredictorSpec> specs{forecast::PredictorSpec::persistence(),
                                               forecast::PredictorSpec::linear()};
    if (!o.forecast_file.empty()) specs.push_back(forecast::PredictorSpec::external(o.forecast_file));
    const auto scores = forecast::benchmark_predictors(tracks, specs, {o.accident_index, o.horizon, 0});
    std::printf("%-24s %14s %8s\n", "predictor", "mean_error_km", "pairs");
    for (const auto& s : scores) std::printf("%-24s %14.4f %8zu\n", s.predictor.c_str(), s.mean_error_km, s.pairs);
    return 0;
}

int cmd_plan(const CommonOptions& o, const std::string& algo, std::size_t uavs, std::size_t particles) {
    const auto spec = load_spec(o);
    const auto instance = experiment::prepare_instance(spec.instances.front());
    const auto run = experiment::run_cell(spec, instance, 0, uavs, particles, optimize::parse_algorithm(algo), o.seed);

    std::filesystem::create_directories(o.out);
    {
        std::ofstream f(std::filesystem::path(o.out) / "scenario.json");
        f << scenario::to_json(run.scenario) << '\n';
    }
    {
        std::ofstream f(std::filesystem::path(o.out) / "report.json");
        f << evaluate::to_json(run.report) << '\n';
    }
    {
        std::ofstream f(std::filesystem::path(o.out) / "deployment.csv");
        f << "index,lat,lon,detection_radius_m,pod\n";
        for (std::size_t i = 0; i < run.result.best.size(); ++i) {
            const auto& u = run.result.best[i];
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%zu,%.8f,%.8f,%.3f,%.6f\n", i, u.position().lat(), u.position().lon(),
                          u.detection_radius_m(), model::pod(u));
            f << buf;
        }
    }
    geojson::MapLayers layers;
    layers.scenario = &run.scenario;
    layers.deployment = &run.result.best;
    layers.track = &instance.track;
    layers.from_index = instance.accident.accident_index;
    layers.to_index = instance.accident.target_index();
    layers.report = &run.report;
    layers.unit_m = spec.evaluation.unit_m;
    geojson::export_geojson(layers, std::filesystem::path(o.out) / "plan.geojson");

    std::printf("instance %s: search radius %.3f km, sigma %.3f km\n", instance.name.c_str(),
                run.scenario.area.radius_km, run.scenario.sigma_km);
    std::printf("%s with %zu UAVs, %zu particles: fitness %zu/%zu segments, coverage %.4f (literal form %.4f)\n",
                algo.c_str(), uavs, particles, run.result.best_fitness.score(), run.result.best_fitness.total_segments,
                run.report.coverage_survival, run.report.coverage_literal);
    std::printf("outputs written to %s\n", o.out.c_str());
    return 0;
}

int cmd_experiment(const CommonOptions& o, bool print_config, bool no_maps) {
    auto spec = load_spec(o);
    if (print_config) {
        std::cout << experiment::to_json(spec) << '\n';
        return 0;
    }
    const auto start = std::chrono::steady_clock::now();
    const auto result = experiment::run_experiment(spec, [](std::size_t done, std::size_t total) {
        std::fprintf(stderr, "\r%zu/%zu runs", done, total);
        if (done == total) std::fputc('\n', stderr);
    });
    experiment::write_outputs(o.out, result, !no_maps);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::printf("%-8s %5s %5s %-7s %9s %9s\n", "instance", "uavs", "parts", "algo", "avg", "best");
    for (const auto& s : result.summary) {
        std::printf("%-8s %5zu %5zu %-7s %9.2f %9.2f\n", s.instance.c_str(), s.n_uavs, s.n_particles,
                    s.algorithm.c_str(), s.avg, s.best);
    }
    for (const auto& f : result.failures) std::fprintf(stderr, "failed: %s: %s\n", f.cell.c_str(), f.message.c_str());
    std::printf("%zu runs in %.1f s; outputs in %s\n", result.rows.size(), secs, o.out.c_str());
    return result.failures.empty() ? 0 : 2;
}

int cmd_validate() {
    bool all = true;
    for (const auto& c : validation::run_validation()) {
        std::printf("[%s] %s: %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
        all = all && c.passed;
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"UAV search deployment planning for drifting objects"};
    app.require_subcommand(1);

    CommonOptions o;
    std::string algo = "ga";
    std::size_t uavs = 6;
    std::size_t particles = 10;
    bool print_config = false;
    bool no_maps = false;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "Experiment JSON config");
        sub->add_option("--tracks", o.tracks, "Drifter track CSV");
        sub->add_option("--track-id", o.track_id, "Use only this track id from --tracks");
        sub->add_option("--predictor", o.predictor, "persistence | linear | external")
            ->check(CLI::IsMember({"persistence", "linear", "external"}));
        sub->add_option("--forecast-file", o.forecast_file, "External forecast CSV (step,lat,lon)");
        sub->add_option("--accident-index", o.accident_index, "Record index of the accident");
        sub->add_option("--horizon", o.horizon, "Hours between accident and search");
        sub->add_option("--seed", o.seed, "Random seed");
        sub->add_option("--out", o.out, "Output directory");
    };

    auto* predict = app.add_subcommand("predict", "Benchmark trajectory predictors on a track file");
    add_common(predict);
    auto* plan = app.add_subcommand("plan", "Optimise one deployment and write GeoJSON");
    add_common(plan);
    plan->add_option("--algo", algo, "random | sa | pso | ga")->check(CLI::IsMember({"random", "rs", "sa", "pso", "ga"}));
    plan->add_option("--uavs", uavs, "Number of UAVs");
    plan->add_option("--particles", particles, "Number of Gaussian particles");
    auto* exp = app.add_subcommand("experiment", "Run the instance x UAV x particle x algorithm x seed grid");
    add_common(exp);
    exp->add_flag("--print-config", print_config, "Print the effective config as JSON and exit");
    exp->add_flag("--no-maps", no_maps, "Skip GeoJSON map output");
    auto* validate = app.add_subcommand("validate", "Run invariant and oracle self-checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (predict->parsed()) return cmd_predict(o);
        if (plan->parsed()) return cmd_plan(o, algo, uavs, particles);
        if (exp->parsed()) return cmd_experiment(o, print_config, no_maps);
        if (validate->parsed()) return cmd_validate();
    } catch (const uavsar::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
