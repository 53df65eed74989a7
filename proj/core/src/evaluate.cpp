#include "uavsar/evaluate.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "uavsar/errors.hpp"
#include "uavsar/rng.hpp"

namespace uavsar::evaluate {

void EvaluationConfig::validate() const {
    if (!(unit_m > 0.0)) throw ConfigError("evaluation unit_m must be positive");
    if (k0 < 1) throw ConfigError("k0 must be >= 1");
}

namespace {

void check_slice(const ingest::DrifterTrack& track, std::size_t from, std::size_t to) {
    if (!(from < to) || to >= track.size()) {
        throw EmptySlice("trajectory slice [" + std::to_string(from) + ", " + std::to_string(to) +
                         "] is empty or outside track '" + track.id + "' of " + std::to_string(track.size()) +
                         " records");
    }
}

std::vector<geo::LocalVector> local_path(const ingest::DrifterTrack& track, std::size_t from, std::size_t to) {
    const auto& anchor = track.position(from);
    std::vector<geo::LocalVector> pts;
    pts.reserve(to - from + 1);
    for (std::size_t i = from; i <= to; ++i) pts.push_back(geo::to_local(track.position(i), anchor));
    return pts;
}

}  // namespace

double trajectory_length_km(const ingest::DrifterTrack& track, std::size_t from_index, std::size_t to_index) {
    check_slice(track, from_index, to_index);
    const auto pts = local_path(track, from_index, to_index);
    double len = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) len += (pts[i] - pts[i - 1]).norm();
    return len / 1000.0;
}

std::vector<geo::GeoPoint> segment_trajectory(const ingest::DrifterTrack& track, std::size_t from_index,
                                              std::size_t to_index, double unit_m) {
    check_slice(track, from_index, to_index);
    if (!(unit_m > 0.0)) throw ConfigError("segment unit must be positive");
    const auto pts = local_path(track, from_index, to_index);
    std::vector<double> cum(pts.size(), 0.0);
    for (std::size_t i = 1; i < pts.size(); ++i) cum[i] = cum[i - 1] + (pts[i] - pts[i - 1]).norm();
    const double total = cum.back();

    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(total / unit_m - 1e-9)));
    const auto& anchor = track.position(from_index);
    std::vector<geo::GeoPoint> out;
    out.reserve(n);
    std::size_t leg = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = (i + 1 < n) ? (static_cast<double>(i) + 0.5) * unit_m
                                     : 0.5 * (static_cast<double>(n - 1) * unit_m + total);
        while (leg + 1 < pts.size() && cum[leg] < s) ++leg;
        const double leg_len = cum[leg] - cum[leg - 1];
        const double t = leg_len > 0.0 ? std::clamp((s - cum[leg - 1]) / leg_len, 0.0, 1.0) : 0.0;
        out.push_back(geo::from_local(pts[leg - 1] + t * (pts[leg] - pts[leg - 1]), anchor));
    }
    return out;
}

std::vector<double> segment_pods(const model::Deployment& deployment, std::span<const geo::GeoPoint> midpoints) {
    std::vector<double> pods(midpoints.size(), 0.0);
    for (std::size_t i = 0; i < midpoints.size(); ++i) {
        for (const auto& u : deployment.uavs()) {
            if (model::covers(u, midpoints[i])) pods[i] = std::max(pods[i], model::pod(u));
        }
    }
    return pods;
}

double survival_coverage(std::span<const double> pods, std::size_t k0) {
    double survive = 1.0;
    double expected = 0.0;
    for (double p : pods) {
        expected += survive * p;
        survive *= 1.0 - p;
    }
    return static_cast<double>(k0) * expected;
}

double literal_coverage(std::span<const double> pods, std::size_t k0) {
    double sum = 0.0;
    for (std::size_t i = 0; i < pods.size(); ++i) {
        const double prev = i == 0 ? 0.0 : pods[i - 1];
        sum += std::pow(1.0 - prev, static_cast<double>(i)) * pods[i];
    }
    return static_cast<double>(k0) * sum;
}

EvaluationReport coverage(const model::Deployment& deployment, const ingest::DrifterTrack& track,
                          std::size_t from_index, std::size_t to_index, const EvaluationConfig& config) {
    config.validate();
    const auto midpoints = segment_trajectory(track, from_index, to_index, config.unit_m);
    EvaluationReport r;
    r.segment_pods = segment_pods(deployment, midpoints);
    r.coverage_survival = survival_coverage(r.segment_pods, config.k0);
    r.coverage_literal = literal_coverage(r.segment_pods, config.k0);
    r.coverage = config.literal_formula ? r.coverage_literal : r.coverage_survival;
    r.n_segments = midpoints.size();
    r.n_covered = static_cast<std::size_t>(
        std::count_if(r.segment_pods.begin(), r.segment_pods.end(), [](double p) { return p > 0.0; }));
    r.detected_any = r.n_covered > 0;
    r.trajectory_length_km = trajectory_length_km(track, from_index, to_index);
    return r;
}

double monte_carlo_survival(std::span<const double> pods, std::size_t k0, std::size_t trials, std::uint64_t seed) {
    if (trials < 1) throw ConfigError("monte carlo needs at least one trial");
    std::vector<double> active;
    for (double p : pods) {
        if (p > 0.0) active.push_back(p);
    }
    if (active.empty()) return 0.0;
    Rng rng = make_rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t detected = 0;
    const std::size_t drifters = trials * k0;
    for (std::size_t d = 0; d < drifters; ++d) {
        for (double p : active) {
            if (u(rng) < p) {
                ++detected;
                break;
            }
        }
    }
    return static_cast<double>(detected) / static_cast<double>(trials);
}

double monte_carlo_coverage(const model::Deployment& deployment, const ingest::DrifterTrack& track,
                            std::size_t from_index, std::size_t to_index, const EvaluationConfig& config,
                            std::size_t trials, std::uint64_t seed) {
    config.validate();
    const auto midpoints = segment_trajectory(track, from_index, to_index, config.unit_m);
    return monte_carlo_survival(segment_pods(deployment, midpoints), config.k0, trials, seed);
}

std::string to_json(const EvaluationReport& report) {
    const nlohmann::json j{{"coverage", report.coverage},
                           {"coverage_survival", report.coverage_survival},
                           {"coverage_literal", report.coverage_literal},
                           {"trajectory_length_km", report.trajectory_length_km},
                           {"n_segments", report.n_segments},
                           {"n_covered", report.n_covered}};
    return j.dump(2);
}

}  // namespace uavsar::evaluate
