#pragma once

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <span>
#include <vector>

#include "bbss/collector.hpp"
#include "bbss/instance.hpp"
#include "bbss/random.hpp"
#include "bbss/stats.hpp"

namespace bbss {

/// Rebalancing starts at midnight; the feed polls every 10 minutes with
/// jitter, so the first snapshot of a day may lag by up to one cadence.
constexpr int kMidnightWindowS = 30 * 60;

/// Where generate_instance gets its travel matrix: sliced out of a
/// precomputed full matrix when `full` is set, otherwise built through the
/// routing provider (with an optional pair cache).
struct MatrixSource {
    const DistanceMatrix* full = nullptr;
    RoutingProvider provider = RoutingProvider::offline();
    std::filesystem::path cache;
};

struct GenerateParams {
    StationId depot_id = 0;
    VehicleParams vehicles = VehicleParams::uniform(3, 20, 7200);
    int size = 0;
    std::uint64_t seed = 0;
    std::string name;
    int operational_status = 1;
};

struct BatchParams {
    int year = 0;
    int month = 0;  // 1..12
    std::vector<int> sizes;
    StationId depot_id = 0;
    VehicleParams vehicles = VehicleParams::uniform(3, 20, 7200);
    std::uint64_t seed = 0;
    int jobs = 1;
    int operational_status = 1;
};

struct BatchResult {
    std::vector<Instance> instances;
    std::vector<std::string> errors;  // one line per skipped instance
};

/// For each calendar day of the month, the earliest snapshot taken in
/// [00:00, 00:30); days without one are skipped with a warning. Weekends
/// are kept. Throws GenerationError when no day matches.
template <SnapshotRange R>
std::vector<Snapshot> select_midnight_snapshots(R&& corpus, int year, int month);

/// Draws `size` distinct non-depot stations, alternating between the
/// source and sink pools (uniformly, without replacement); a drained pool
/// hands its turns to the other, and neutral stations fill in only when
/// both are empty. Deterministic per seed. Throws std::invalid_argument
/// when size exceeds the eligible stations.
std::vector<StationId> sample_stations(std::span<const StationProfile> profiles, int size,
                                       StationId depot_id, std::uint64_t seed);

/// Target fill after rebalancing: the midnight state shifted by the
/// station's displacement, clamped into [0, C].
int compute_target(int current, int disp, int capacity);

/// Assembles one instance from a snapshot: samples stations, reads b_s and
/// C_s from the snapshot, shifts to targets, and attaches fleet + matrix.
/// Stations that are missing from the snapshot or not usable at it are
/// replaced by a redraw from the same pool.
Instance generate_instance(const Snapshot& snapshot, std::span<const StationProfile> profiles,
                           const MatrixSource& matrix_source, const GenerateParams& params);

/// One instance per (midnight snapshot x size), named
/// <yyyymmdd>-n<size>-s<seed>. Individual failures are reported in the
/// result and skipped. Instance seeds derive from (seed, date, size), so
/// output is independent of `jobs`.
BatchResult generate_batch_from(std::span<const Snapshot> midnight_snapshots,
                                std::span<const StationProfile> profiles,
                                const MatrixSource& matrix_source, const BatchParams& params);

template <SnapshotRange R>
BatchResult generate_batch(R&& corpus, std::span<const StationProfile> profiles,
                           const MatrixSource& matrix_source, const BatchParams& params) {
    const auto midnights = select_midnight_snapshots(corpus, params.year, params.month);
    return generate_batch_from(midnights, profiles, matrix_source, params);
}

/// splitmix64 of (seed, date, size); keeps every instance's random stream
/// independent of batch order and concurrency.
inline std::uint64_t derive_instance_seed(std::uint64_t seed, int date_key, int size) {
    return splitmix64(splitmix64(seed ^ static_cast<std::uint64_t>(date_key)) ^
                      static_cast<std::uint64_t>(size));
}

template <SnapshotRange R>
std::vector<Snapshot> select_midnight_snapshots(R&& corpus, int year, int month) {
    if (month < 1 || month > 12) {
        throw std::invalid_argument("month must be in 1..12");
    }
    std::map<int, Snapshot> by_day;
    for (const Snapshot& snap : corpus) {
        const CivilTime& t = snap.taken_at;
        if (t.year != year || t.month != month ||
            t.seconds_since_midnight() >= kMidnightWindowS) {
            continue;
        }
        const auto [it, inserted] = by_day.try_emplace(t.day, snap);
        if (!inserted && snap.taken_at < it->second.taken_at) {
            it->second = snap;
        }
    }
    if (by_day.empty()) {
        throw GenerationError("no snapshots in the midnight window for " +
                              std::to_string(year) + "-" + std::to_string(month));
    }
    const auto last_day = static_cast<unsigned>(
        (std::chrono::year{year} / month / std::chrono::last).day());
    for (unsigned day = 1; day <= last_day; ++day) {
        if (!by_day.contains(static_cast<int>(day))) {
            std::cerr << "warning: no midnight snapshot for " << year << "-" << month << "-"
                      << day << ", day skipped\n";
        }
    }
    std::vector<Snapshot> out;
    out.reserve(by_day.size());
    for (auto& [day, snap] : by_day) {
        out.push_back(std::move(snap));
    }
    return out;
}

}  // namespace bbss
