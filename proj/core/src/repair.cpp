#include "uavsar/repair.hpp"

#include <cmath>
#include <numbers>

#include "uavsar/errors.hpp"
#include "uavsar/rng.hpp"

namespace uavsar::repair {

void RepairConfig::validate() const {
    if (max_iter < 1) throw ConfigError("repair max_iter must be >= 1");
    if (!(alpha_r > 0.0 && alpha_r <= 1.0)) throw ConfigError("repair alpha_r must lie in (0, 1]");
    if (!(overlap_tolerance_m >= 0.0)) throw ConfigError("overlap tolerance must be non-negative");
}

namespace {

bool pair_overlaps(double d_m, double d_min_m, double tol_m) { return d_m < d_min_m - tol_m; }

// Offset one UAV of every exactly coincident pair by 1 m so the force has a
// direction. The direction depends only on (i, j, iteration).
bool separate_coincident(model::Deployment& dep, int iteration) {
    const auto& center = dep.area().center;
    bool moved = false;
    for (std::size_t i = 0; i < dep.size(); ++i) {
        for (std::size_t j = i + 1; j < dep.size(); ++j) {
            if (geo::haversine_km(dep[i].position(), dep[j].position()) > 0.0) continue;
            const auto h = derive_seed(0x5eedULL, {i, j, static_cast<std::uint64_t>(iteration)});
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(h >> 11) * 0x1.0p-53;
            const geo::LocalVector nudge{std::cos(angle), std::sin(angle)};
            const auto local = geo::to_local(dep[j].position(), center) + nudge;
            dep.set_position(j, geo::project_to_circle(geo::from_local(local, center), center, dep.area().radius_km));
            moved = true;
        }
    }
    return moved;
}

}  // namespace

ForceField accumulate_repulsion(const model::Deployment& dep, double overlap_tolerance_m) {
    const auto& center = dep.area().center;
    const std::size_t n = dep.size();
    ForceField field{std::vector<geo::LocalVector>(n), std::vector<int>(n, 0), false};
    std::vector<geo::LocalVector> local(n);
    for (std::size_t i = 0; i < n; ++i) local[i] = geo::to_local(dep[i].position(), center);

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d_m = geo::haversine_km(dep[i].position(), dep[j].position()) * 1000.0;
            const double d_min_m = dep[i].detection_radius_m() + dep[j].detection_radius_m();
            if (!pair_overlaps(d_m, d_min_m, overlap_tolerance_m)) continue;
            field.overlapping = true;
            if (d_m > 0.0) {
                const geo::LocalVector f = (d_min_m / d_m) * (local[j] - local[i]);
                field.forces[i] -= f;
                field.forces[j] += f;
                ++field.interactions[i];
                ++field.interactions[j];
            }
        }
    }
    return field;
}

std::size_t count_overlapping_pairs(const model::Deployment& dep, double overlap_tolerance_m) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < dep.size(); ++i) {
        for (std::size_t j = i + 1; j < dep.size(); ++j) {
            const double d_m = geo::haversine_km(dep[i].position(), dep[j].position()) * 1000.0;
            if (pair_overlaps(d_m, dep[i].detection_radius_m() + dep[j].detection_radius_m(), overlap_tolerance_m)) {
                ++count;
            }
        }
    }
    return count;
}

std::size_t count_boundary_violations(const model::Deployment& dep, double tolerance_km) {
    std::size_t count = 0;
    for (const auto& u : dep.uavs()) {
        if (geo::haversine_km(u.position(), dep.area().center) > dep.area().radius_km + tolerance_km) ++count;
    }
    return count;
}

model::Deployment repair(const model::Deployment& deployment, const RepairConfig& config, RepairTrace* trace) {
    config.validate();
    model::Deployment dep = deployment;
    const auto& center = dep.area().center;
    const double radius_km = dep.area().radius_km;

    for (std::size_t p = 0; p < dep.size(); ++p) {
        const auto& pos = dep[p].position();
        if (geo::haversine_km(pos, center) > radius_km) {
            dep.set_position(p, geo::project_to_circle(pos, center, radius_km));
        }
    }
    if (trace != nullptr) {
        *trace = RepairTrace{};
        trace->snapshots.push_back(dep.positions());
    }

    bool converged = false;
    int iter = 0;
    for (; iter < config.max_iter; ++iter) {
        separate_coincident(dep, iter);
        const ForceField field = accumulate_repulsion(dep, config.overlap_tolerance_m);
        if (!field.overlapping) {
            converged = true;
            break;
        }
        std::vector<geo::GeoPoint> next = dep.positions();
        for (std::size_t p = 0; p < dep.size(); ++p) {
            if (field.interactions[p] == 0) continue;
            const double scale = config.alpha_r / static_cast<double>(field.interactions[p]);
            const auto moved = geo::to_local(next[p], center) + scale * field.forces[p];
            next[p] = geo::project_to_circle(geo::from_local(moved, center), center, radius_km);
        }
        for (std::size_t p = 0; p < dep.size(); ++p) {
            if (field.interactions[p] != 0) dep.set_position(p, next[p]);
        }
        if (trace != nullptr) trace->snapshots.push_back(dep.positions());
    }
    if (!converged && count_overlapping_pairs(dep, config.overlap_tolerance_m) == 0) converged = true;
    if (trace != nullptr) {
        trace->iterations = iter;
        trace->converged = converged;
    }
    return dep;
}

}  // namespace uavsar::repair
