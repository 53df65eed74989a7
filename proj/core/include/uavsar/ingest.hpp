#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uavsar/geo.hpp"

namespace uavsar::ingest {

using Timestamp = std::chrono::sys_seconds;

struct DrifterRecord {
    Timestamp timestamp{};
    geo::GeoPoint position;
    std::optional<double> wind_u;
    std::optional<double> wind_v;
    std::optional<double> current_u;
    std::optional<double> current_v;

    friend bool operator==(const DrifterRecord&, const DrifterRecord&) = default;
};

/// One drifter's observations, strictly increasing in time, at least two records.
struct DrifterTrack {
    std::string id;
    std::vector<DrifterRecord> records;

    [[nodiscard]] std::size_t size() const noexcept { return records.size(); }
    [[nodiscard]] const geo::GeoPoint& position(std::size_t i) const { return records.at(i).position; }

    friend bool operator==(const DrifterTrack&, const DrifterTrack&) = default;
};

/// Throws EmptyTrack / Error when the track invariants do not hold.
void validate(const DrifterTrack& track);

/// The accident happens at record `accident_index` (t0); the search is
/// planned for record `accident_index + horizon_hours` (tp).
struct AccidentSpec {
    std::string track_id;
    std::size_t accident_index = 0;
    std::size_t horizon_hours = 6;
    /// First record used as forecasting context.
    std::size_t context_start = 0;

    [[nodiscard]] std::size_t target_index() const noexcept { return accident_index + horizon_hours; }
};

/// Throws ConfigError unless ground truth exists up to the target index.
void validate(const AccidentSpec& spec, const DrifterTrack& track);

/// Schema of the drifter CSV:
/// `id,timestamp,lat,lon,wind_u,wind_v,current_u,current_v`, the last four
/// optional (column may be absent, cell may be blank).
inline constexpr std::string_view kDrifterCsvSchema = "drifter-v1";

/// Tracks in order of first appearance of their id. Cadence other than
/// hourly is reported through `warnings` rather than rejected.
[[nodiscard]] std::vector<DrifterTrack> parse_tracks(std::istream& in,
                                                     std::vector<std::string>* warnings = nullptr);
[[nodiscard]] std::vector<DrifterTrack> load_tracks(const std::filesystem::path& path,
                                                    std::string_view schema = kDrifterCsvSchema,
                                                    std::vector<std::string>* warnings = nullptr);

void write_tracks(std::ostream& out, const std::vector<DrifterTrack>& tracks);
void save_tracks(const std::filesystem::path& path, const std::vector<DrifterTrack>& tracks);

/// ISO-8601 `YYYY-MM-DD[T| ]HH:MM[:SS][Z|+HH:MM|-HH:MM]`, normalised to UTC.
[[nodiscard]] std::optional<Timestamp> parse_timestamp(std::string_view text);
[[nodiscard]] std::string format_timestamp(Timestamp t);

/// Correlated random walk with `hours` hourly records: a uniformly random
/// initial heading, Gaussian heading changes of `turn_sigma_rad` per hour and
/// a constant `drift_kmh` step.
[[nodiscard]] DrifterTrack synthesize_track(std::uint64_t seed, std::size_t hours, const geo::GeoPoint& start,
                                            double drift_kmh, double turn_sigma_rad);

}  // namespace uavsar::ingest
