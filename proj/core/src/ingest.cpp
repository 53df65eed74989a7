#include "uavsar/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "uavsar/errors.hpp"
#include "uavsar/rng.hpp"

namespace uavsar::ingest {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

std::optional<double> parse_double(std::string_view s) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) return std::nullopt;
    return v;
}

bool parse_fixed_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > s.size()) return false;
    out = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
        out = out * 10 + (s[i] - '0');
    }
    return true;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

constexpr std::string_view kColumns[] = {"id",     "timestamp", "lat",       "lon",
                                         "wind_u", "wind_v",    "current_u", "current_v"};

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text) {
    using namespace std::chrono;
    const std::string_view s = trim(text);
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
    if (!parse_fixed_int(s, 0, 4, y) || s.size() < 16 || s[4] != '-' || !parse_fixed_int(s, 5, 2, mo) ||
        s[7] != '-' || !parse_fixed_int(s, 8, 2, d) || (s[10] != 'T' && s[10] != ' ') ||
        !parse_fixed_int(s, 11, 2, h) || s[13] != ':' || !parse_fixed_int(s, 14, 2, mi)) {
        return std::nullopt;
    }
    std::size_t pos = 16;
    if (pos < s.size() && s[pos] == ':') {
        if (!parse_fixed_int(s, pos + 1, 2, sec)) return std::nullopt;
        pos += 3;
    }
    int offset_min = 0;
    if (pos < s.size()) {
        if (s[pos] == 'Z' && pos + 1 == s.size()) {
            pos += 1;
        } else if ((s[pos] == '+' || s[pos] == '-') && s.size() == pos + 6 && s[pos + 3] == ':') {
            int oh = 0, om = 0;
            if (!parse_fixed_int(s, pos + 1, 2, oh) || !parse_fixed_int(s, pos + 4, 2, om)) return std::nullopt;
            offset_min = (s[pos] == '+' ? 1 : -1) * (oh * 60 + om);
            pos += 6;
        } else {
            return std::nullopt;
        }
    }
    if (pos != s.size()) return std::nullopt;
    if (h > 23 || mi > 59 || sec > 60) return std::nullopt;
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    return sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec} - minutes{offset_min};
}

std::string format_timestamp(Timestamp t) {
    using namespace std::chrono;
    const auto day_point = floor<days>(t);
    const year_month_day ymd{day_point};
    const hh_mm_ss hms{t - day_point};
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                  static_cast<int>(hms.seconds().count()));
    return buf;
}

void validate(const DrifterTrack& track) {
    if (track.records.size() < 2) {
        throw EmptyTrack("track '" + track.id + "' has " + std::to_string(track.records.size()) +
                         " record(s); at least 2 are required");
    }
    for (std::size_t i = 1; i < track.records.size(); ++i) {
        if (!(track.records[i - 1].timestamp < track.records[i].timestamp)) {
            throw Error("track '" + track.id + "': timestamps not strictly increasing at record " +
                        std::to_string(i));
        }
    }
}

void validate(const AccidentSpec& spec, const DrifterTrack& track) {
    if (spec.horizon_hours < 1) throw ConfigError("horizon_hours must be >= 1");
    if (spec.context_start > spec.accident_index) {
        throw ConfigError("context_start must not exceed accident_index");
    }
    if (spec.target_index() >= track.size()) {
        throw ConfigError("track '" + track.id + "' has " + std::to_string(track.size()) +
                          " records; accident_index + horizon_hours = " + std::to_string(spec.target_index()) +
                          " has no ground truth");
    }
}

std::vector<DrifterTrack> parse_tracks(std::istream& in, std::vector<std::string>* warnings) {
    std::string line;
    std::size_t row = 0;
    std::vector<int> column_of(std::size(kColumns), -1);
    std::size_t header_width = 0;

    while (std::getline(in, line)) {
        ++row;
        if (!trim(line).empty()) break;
    }
    if (row == 0 || trim(line).empty()) throw EmptyTrack("input contains no header row");
    {
        const auto header = split_csv(line);
        header_width = header.size();
        for (std::size_t c = 0; c < header.size(); ++c) {
            const auto it = std::find(std::begin(kColumns), std::end(kColumns), header[c]);
            if (it == std::end(kColumns)) {
                throw ParseError(row, std::string(header[c]), "unknown column");
            }
            const auto idx = static_cast<std::size_t>(it - std::begin(kColumns));
            if (column_of[idx] != -1) throw ParseError(row, std::string(header[c]), "duplicate column");
            column_of[idx] = static_cast<int>(c);
        }
        for (std::size_t k = 0; k < 4; ++k) {
            if (column_of[k] == -1) throw ParseError(row, std::string(kColumns[k]), "required column missing");
        }
    }

    std::vector<DrifterTrack> tracks;
    std::map<std::string, std::size_t, std::less<>> index_of;

    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != header_width) {
            throw ParseError(row, "", "expected " + std::to_string(header_width) + " fields, found " +
                                          std::to_string(cells.size()));
        }
        const auto cell = [&](std::size_t k) { return cells[static_cast<std::size_t>(column_of[k])]; };

        const std::string_view id = cell(0);
        if (id.empty()) throw ParseError(row, "id", "empty id");
        const auto ts = parse_timestamp(cell(1));
        if (!ts) throw ParseError(row, "timestamp", "not an ISO-8601 timestamp: '" + std::string(cell(1)) + "'");
        const auto lat = parse_double(cell(2));
        if (!lat || *lat < -90.0 || *lat > 90.0) {
            throw ParseError(row, "lat", "invalid latitude '" + std::string(cell(2)) + "'");
        }
        const auto lon = parse_double(cell(3));
        if (!lon || *lon < -180.0 || *lon > 180.0) {
            throw ParseError(row, "lon", "invalid longitude '" + std::string(cell(3)) + "'");
        }

        DrifterRecord rec{*ts, geo::GeoPoint{*lat, *lon}, {}, {}, {}, {}};
        std::optional<double>* optional_fields[] = {&rec.wind_u, &rec.wind_v, &rec.current_u, &rec.current_v};
        for (std::size_t k = 4; k < std::size(kColumns); ++k) {
            if (column_of[k] == -1 || cell(k).empty()) continue;
            const auto v = parse_double(cell(k));
            if (!v) throw ParseError(row, std::string(kColumns[k]), "not a number: '" + std::string(cell(k)) + "'");
            *optional_fields[k - 4] = *v;
        }

        auto it = index_of.find(id);
        if (it == index_of.end()) {
            it = index_of.emplace(std::string(id), tracks.size()).first;
            tracks.push_back(DrifterTrack{std::string(id), {}});
        }
        auto& track = tracks[it->second];
        if (!track.records.empty()) {
            const auto prev = track.records.back().timestamp;
            if (!(prev < rec.timestamp)) {
                throw ParseError(row, "timestamp",
                                 "timestamp not strictly increasing for track '" + track.id + "'");
            }
            if (warnings != nullptr && rec.timestamp - prev != std::chrono::hours{1}) {
                warnings->push_back("row " + std::to_string(row) + ": track '" + track.id +
                                    "' gap of " + std::to_string((rec.timestamp - prev).count()) +
                                    " s (expected hourly cadence)");
            }
        }
        track.records.push_back(rec);
    }

    if (tracks.empty()) throw EmptyTrack("input contains no data rows");
    for (const auto& t : tracks) validate(t);
    return tracks;
}

std::vector<DrifterTrack> load_tracks(const std::filesystem::path& path, std::string_view schema,
                                      std::vector<std::string>* warnings) {
    if (schema != kDrifterCsvSchema) throw ConfigError("unknown track schema '" + std::string(schema) + "'");
    std::ifstream in(path);
    if (!in) throw IoError("cannot open track file " + path.string());
    return parse_tracks(in, warnings);
}

void write_tracks(std::ostream& out, const std::vector<DrifterTrack>& tracks) {
    out << "id,timestamp,lat,lon,wind_u,wind_v,current_u,current_v\n";
    const auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
    for (const auto& t : tracks) {
        for (const auto& r : t.records) {
            out << t.id << ',' << format_timestamp(r.timestamp) << ',' << format_double(r.position.lat()) << ','
                << format_double(r.position.lon()) << ',' << opt(r.wind_u) << ',' << opt(r.wind_v) << ','
                << opt(r.current_u) << ',' << opt(r.current_v) << '\n';
        }
    }
}

void save_tracks(const std::filesystem::path& path, const std::vector<DrifterTrack>& tracks) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write track file " + path.string());
    write_tracks(out, tracks);
    if (!out) throw IoError("write failed for " + path.string());
}

DrifterTrack synthesize_track(std::uint64_t seed, std::size_t hours, const geo::GeoPoint& start, double drift_kmh,
                              double turn_sigma_rad) {
    if (hours < 2) throw ConfigError("synthesize_track needs hours >= 2");
    using namespace std::chrono;
    Rng rng = make_rng(seed);
    std::normal_distribution<double> turn(0.0, 1.0);

    const Timestamp t0 = sys_days{year{2024} / January / 1};
    DrifterTrack track{"synthetic-" + std::to_string(seed), {}};
    track.records.reserve(hours);

    double heading = 2.0 * std::numbers::pi * uniform01(rng);
    geo::GeoPoint p = start;
    for (std::size_t h = 0; h < hours; ++h) {
        track.records.push_back(DrifterRecord{t0 + std::chrono::hours{h}, p, {}, {}, {}, {}});
        const double step = turn(rng);
        heading += turn_sigma_rad * step;
        const geo::LocalVector dir{std::sin(heading), std::cos(heading)};
        p = geo::point_at_distance(p, dir, drift_kmh);
    }
    return track;
}

}  // namespace uavsar::ingest
