#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bbss/feed.hpp"

namespace bbss {

/// Daily occupancy patterns, piecewise constant by hour so quartile
/// recovery is exact at noise 0. Day hours are 7..19, the rest is night.
namespace pattern {

struct Source {  // parked low by day, refilled overnight
    int day_low = 0;
    int night_high = 0;
};

struct Sink {  // fills up by day, drained overnight
    int day_high = 0;
    int night_low = 0;
};

struct Flat {
    int level = 0;
};

struct Step {  // operator rebalancing: jump at jump_hour, base (C - jump)/2
    int jump_hour = 4;
    int jump_size = 0;
};

}  // namespace pattern

using StationPattern =
    std::variant<pattern::Source, pattern::Sink, pattern::Flat, pattern::Step>;

struct SyntheticStationSpec {
    StationId station_id = 0;
    int capacity = 0;
    StationPattern pattern;
    int noise = 0;  // max absolute integer perturbation
    double latitude = 0.0;
    double longitude = 0.0;

    /// The planted bike count for an hour, before noise.
    int level_at(int hour) const;
};

struct SynthOptions {
    CivilTime start{2013, 9, 1, 0, 0, 0};
    /// Weekend noise is noise * this factor, rounded; lets the weekday
    /// filter be exercised without touching weekday samples.
    double weekend_noise_factor = 1.0;
};

/// One snapshot per cadence tick per day starting at 00:00. Bike counts are
/// the pattern level plus seeded uniform noise in [-noise, +noise], clamped
/// to [0, capacity]; totalDocks is capacity + 1 so every observation shows
/// the one-dock displacement. Deterministic per seed.
std::vector<Snapshot> synth_corpus(std::span<const SyntheticStationSpec> specs, int days,
                                   int cadence_s, std::uint64_t seed,
                                   const SynthOptions& options = {});

/// Line format: station <id> <capacity> <pattern> <args...> <noise> <lat> <lon>
/// where <pattern> <args...> is one of
///   source <day_low> <night_high> | sink <day_high> <night_low>
///   | flat <level> | step <jump_hour> <jump_size>
/// '#' starts a comment; blank lines are skipped.
std::vector<SyntheticStationSpec> parse_synth_spec(const std::string& text);

}  // namespace bbss
