#pragma once

#include <concepts>
#include <ranges>
#include <string>
#include <vector>

#include "bbss/civil_time.hpp"
#include "bbss/errors.hpp"

namespace bbss {

/// One station's state at one instant, as reported by the feed.
struct StationObservation {
    StationId station_id = 0;
    int available_docks = 0;
    int total_docks = 0;
    int available_bikes = 0;
    int status_key = 0;
    bool is_test = false;
    double latitude = 0.0;   // degrees, [-90, 90]
    double longitude = 0.0;  // degrees, [-180, 180]
    std::string address;

    bool operator==(const StationObservation&) const = default;
};

/// One poll of the whole network. Observations keep feed order; ids are
/// unique within a snapshot.
struct Snapshot {
    CivilTime taken_at;
    std::vector<StationObservation> observations;

    /// Linear lookup by external id; nullptr when absent.
    const StationObservation* find(StationId id) const;

    bool operator==(const Snapshot&) const = default;
};

/// The capacity a station actually offers. The feed's totalDocks overstates
/// it by a constant number of phantom docks, so usable capacity is defined
/// as docks + bikes and the difference is kept as a diagnostic.
struct CapacityReport {
    StationId station_id = 0;
    int usable_capacity = 0;   // available_docks + available_bikes
    int dock_displacement = 0; // total_docks - usable_capacity
};

template <class R>
concept SnapshotRange =
    std::ranges::input_range<R> &&
    std::convertible_to<std::ranges::range_reference_t<R>, const Snapshot&>;

/// Parses a raw feed payload. Every station record must carry id,
/// availableDocks, totalDocks, availableBikes, statusKey, testStation,
/// latitude, longitude and stAddress1; anything else is ignored. A record
/// with docks + bikes > totalDocks rejects the whole snapshot.
Snapshot parse_snapshot(const std::string& document);

/// Renders a Snapshot back into the feed's JSON schema (executionTime in
/// 12-hour form). parse_snapshot(to_feed_json(s)) == s for valid s.
std::string to_feed_json(const Snapshot& snapshot);

CapacityReport usable_capacity(const StationObservation& obs);

/// A station takes part in the pipeline only while operational and not
/// flagged as a test installation.
inline bool is_usable(const StationObservation& obs, int operational_status) {
    return obs.status_key == operational_status && !obs.is_test;
}

}  // namespace bbss
