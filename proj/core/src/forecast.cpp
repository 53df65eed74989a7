#include "uavsar/forecast.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "uavsar/errors.hpp"

namespace uavsar::forecast {

PredictorSpec PredictorSpec::persistence() { return {PredictorKind::persistence, {}}; }

PredictorSpec PredictorSpec::linear(std::size_t window) {
    return {PredictorKind::linear_extrapolation, {{"window", std::to_string(window)}}};
}

PredictorSpec PredictorSpec::external(const std::filesystem::path& path) {
    return {PredictorKind::external_file, {{"path", path.string()}}};
}

PredictorSpec PredictorSpec::parse(const std::string& name, const std::string& path) {
    if (name == "persistence") return persistence();
    if (name == "linear" || name == "linear-extrapolation") return linear();
    if (name == "external" || name == "external-file") {
        if (path.empty()) throw ConfigError("external predictor requires a forecast file path");
        return external(path);
    }
    throw ConfigError("unknown predictor '" + name + "'");
}

std::string PredictorSpec::name() const {
    switch (kind) {
        case PredictorKind::persistence:
            return "persistence";
        case PredictorKind::linear_extrapolation: {
            const auto it = params.find("window");
            if (it == params.end() || it->second == "0") return "linear";
            return "linear(window=" + it->second + ")";
        }
        case PredictorKind::external_file:
            return "external";
    }
    return "unknown";
}

namespace {

std::size_t window_param(const PredictorSpec& spec) {
    const auto it = spec.params.find("window");
    if (it == spec.params.end() || it->second.empty()) return 0;
    std::size_t w = 0;
    const auto& s = it->second;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), w);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw ConfigError("invalid window '" + s + "'");
    return w;
}

// Least-squares line through (i, y[i]) evaluated at i = y.size().
double extrapolate_line(const std::vector<double>& y) {
    const auto n = static_cast<double>(y.size());
    const double mean_x = (n - 1.0) / 2.0;
    double mean_y = 0.0;
    for (double v : y) mean_y += v;
    mean_y /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double dx = static_cast<double>(i) - mean_x;
        sxy += dx * (y[i] - mean_y);
        sxx += dx * dx;
    }
    const double slope = sxy / sxx;
    return mean_y + slope * (n - mean_x);
}

const std::vector<geo::GeoPoint>& external_rows(const ExternalForecast& file, const std::string& track_id) {
    if (auto it = file.find(track_id); it != file.end()) return it->second;
    if (auto it = file.find(""); it != file.end()) return it->second;
    throw InsufficientHistory("external forecast has no rows for track '" + track_id + "'");
}

std::optional<double> to_double(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

}  // namespace

std::vector<geo::GeoPoint> predict_recursive(const ingest::DrifterTrack& track, std::size_t accident_index,
                                             std::size_t steps, const PredictorSpec& predictor,
                                             std::size_t context_start) {
    if (steps < 1) throw ConfigError("predict_recursive needs steps >= 1");
    if (accident_index >= track.size()) {
        throw InsufficientHistory("accident index " + std::to_string(accident_index) + " beyond track '" +
                                  track.id + "'");
    }
    if (context_start > accident_index) throw ConfigError("context_start must not exceed accident_index");

    std::vector<geo::GeoPoint> out;
    out.reserve(steps);

    switch (predictor.kind) {
        case PredictorKind::persistence: {
            out.assign(steps, track.position(accident_index));
            return out;
        }
        case PredictorKind::external_file: {
            const auto it = predictor.params.find("path");
            if (it == predictor.params.end() || it->second.empty()) {
                throw ConfigError("external predictor requires a 'path' parameter");
            }
            const auto file = load_external_forecast(it->second);
            const auto& rows = external_rows(file, track.id);
            if (rows.size() < steps) {
                throw InsufficientHistory("external forecast provides " + std::to_string(rows.size()) +
                                          " steps, " + std::to_string(steps) + " requested");
            }
            out.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(steps));
            return out;
        }
        case PredictorKind::linear_extrapolation: {
            std::vector<double> lat, lon;
            for (std::size_t i = context_start; i <= accident_index; ++i) {
                lat.push_back(track.position(i).lat());
                lon.push_back(track.position(i).lon());
            }
            if (lat.size() < 2) {
                throw InsufficientHistory("linear extrapolation needs at least 2 history points, track '" +
                                          track.id + "' has " + std::to_string(lat.size()));
            }
            const std::size_t window = window_param(predictor);
            if (window == 1) throw ConfigError("linear extrapolation window must be 0 or >= 2");
            for (std::size_t k = 0; k < steps; ++k) {
                const auto fit = [window](const std::vector<double>& series) {
                    if (window == 0 || window >= series.size()) return extrapolate_line(series);
                    return extrapolate_line(std::vector<double>(series.end() - static_cast<std::ptrdiff_t>(window),
                                                                series.end()));
                };
                const geo::GeoPoint next{fit(lat), fit(lon)};
                out.push_back(next);
                lat.push_back(next.lat());
                lon.push_back(next.lon());
            }
            return out;
        }
    }
    throw ConfigError("unknown predictor kind");
}

Forecast forecast_scenario(const ingest::DrifterTrack& track, const ingest::AccidentSpec& spec,
                           const PredictorSpec& predictor) {
    ingest::validate(spec, track);
    const auto preds =
        predict_recursive(track, spec.accident_index, spec.horizon_hours, predictor, spec.context_start);
    Forecast f;
    f.predicted = preds.back();
    f.history_used = spec.accident_index - spec.context_start + 1;
    if (spec.horizon_hours >= 2) {
        // preds[k] is the prediction for accident_index + k + 1.
        const auto& before = preds[spec.horizon_hours - 2];
        f.prev_step_error_km = geo::haversine_km(before, track.position(spec.target_index() - 1));
    }
    return f;
}

ExternalForecast parse_external_forecast(std::istream& in) {
    std::string line;
    std::size_t row = 0;
    bool has_id = false;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line == "step,lat,lon") break;
        if (line == "id,step,lat,lon") {
            has_id = true;
            break;
        }
        throw ParseError(row, "", "expected header 'step,lat,lon' or 'id,step,lat,lon'");
    }
    ExternalForecast out;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
        const std::size_t want = has_id ? 4 : 3;
        if (cells.size() != want) throw ParseError(row, "", "expected " + std::to_string(want) + " fields");
        const std::string id = has_id ? cells[0] : std::string();
        const std::size_t o = has_id ? 1 : 0;
        const auto step = to_double(cells[o]);
        const auto lat = to_double(cells[o + 1]);
        const auto lon = to_double(cells[o + 2]);
        if (!lat || *lat < -90.0 || *lat > 90.0) throw ParseError(row, "lat", "invalid latitude");
        if (!lon || *lon < -180.0 || *lon > 180.0) throw ParseError(row, "lon", "invalid longitude");
        auto& rows = out[id];
        if (!step || *step != static_cast<double>(rows.size() + 1)) {
            throw ParseError(row, "step", "steps must run 1, 2, 3, ... per track");
        }
        rows.emplace_back(*lat, *lon);
    }
    return out;
}

ExternalForecast load_external_forecast(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open forecast file " + path.string());
    return parse_external_forecast(in);
}

void write_external_forecast(std::ostream& out, const std::vector<geo::GeoPoint>& steps) {
    out << "step,lat,lon\n";
    char lat[32], lon[32];
    for (std::size_t i = 0; i < steps.size(); ++i) {
        auto e1 = std::to_chars(lat, lat + sizeof(lat), steps[i].lat()).ptr;
        auto e2 = std::to_chars(lon, lon + sizeof(lon), steps[i].lon()).ptr;
        out << (i + 1) << ',' << std::string_view(lat, static_cast<std::size_t>(e1 - lat)) << ','
            << std::string_view(lon, static_cast<std::size_t>(e2 - lon)) << '\n';
    }
}

std::vector<PredictorScore> benchmark_predictors(const std::vector<ingest::DrifterTrack>& tracks,
                                                 const std::vector<PredictorSpec>& specs,
                                                 const BenchmarkOptions& options) {
    if (tracks.empty()) throw ConfigError("benchmark_predictors needs at least one track");
    std::vector<PredictorScore> scores;
    for (const auto& spec : specs) {
        PredictorScore score{spec.name(), 0.0, 0};
        double sum = 0.0;
        for (const auto& track : tracks) {
            const ingest::AccidentSpec acc{track.id, options.accident_index, options.horizon,
                                           options.context_start};
            ingest::validate(acc, track);
            const auto preds =
                predict_recursive(track, options.accident_index, options.horizon, spec, options.context_start);
            for (std::size_t k = 0; k < preds.size(); ++k) {
                sum += geo::haversine_km(preds[k], track.position(options.accident_index + k + 1));
                ++score.pairs;
            }
        }
        score.mean_error_km = sum / static_cast<double>(score.pairs);
        scores.push_back(score);
    }
    return scores;
}

}  // namespace uavsar::forecast
