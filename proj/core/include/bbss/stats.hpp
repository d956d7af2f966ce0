#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "bbss/feed.hpp"

namespace bbss {

/// Per-hour multisets of observed bike counts for one station.
struct HourlyDistribution {
    StationId station_id = 0;
    std::array<std::vector<int>, 24> samples;
    /// Largest usable capacity seen while bucketing; the C_s of the profile.
    int capacity = 0;

    bool any_samples() const;
};

enum class StationClass { source, sink, neutral };

std::string to_string(StationClass c);

/// What the pipeline knows about a station after the corpus pass: capacity,
/// the quartile envelope of its weekday occupancy, and the shift that
/// centers that envelope between empty and full.
struct StationProfile {
    StationId station_id = 0;
    int capacity = 0;  // C_s
    int min_s = 0;     // minimum over hours of the hourly 1st quartile
    int max_s = 0;     // maximum over hours of the hourly 3rd quartile
    int disp = 0;
    StationClass cls = StationClass::neutral;
};

struct BoxSummary {
    int hour = 0;
    int min = 0;
    int q1 = 0;
    int median = 0;
    int q3 = 0;
    int max = 0;
    std::size_t n = 0;
};

struct StatsFilter {
    bool weekdays_only = true;
    int operational_status = 1;
};

namespace detail {

inline void bucket_observation(HourlyDistribution& dist, const CivilTime& taken_at,
                               const StationObservation& obs, const StatsFilter& filter) {
    if (!is_usable(obs, filter.operational_status)) {
        return;
    }
    if (filter.weekdays_only && taken_at.is_weekend()) {
        return;
    }
    dist.samples[taken_at.hour].push_back(obs.available_bikes);
    const int usable = obs.available_docks + obs.available_bikes;
    if (usable > dist.capacity) {
        dist.capacity = usable;
    }
}

}  // namespace detail

/// Buckets every usable observation of one station by the snapshot's civil
/// hour. A station never observed yields an empty distribution.
template <SnapshotRange R>
HourlyDistribution hourly_distributions(R&& corpus, StationId station_id,
                                        const StatsFilter& filter = {}) {
    HourlyDistribution dist;
    dist.station_id = station_id;
    for (const Snapshot& snap : corpus) {
        if (const StationObservation* obs = snap.find(station_id)) {
            detail::bucket_observation(dist, snap.taken_at, *obs, filter);
        }
    }
    return dist;
}

/// Single-pass bucketing for every station in the corpus.
template <SnapshotRange R>
std::map<StationId, HourlyDistribution> collect_distributions(R&& corpus,
                                                              const StatsFilter& filter = {}) {
    std::map<StationId, HourlyDistribution> out;
    for (const Snapshot& snap : corpus) {
        for (const StationObservation& obs : snap.observations) {
            auto [it, inserted] = out.try_emplace(obs.station_id);
            if (inserted) {
                it->second.station_id = obs.station_id;
            }
            detail::bucket_observation(it->second, snap.taken_at, obs, filter);
        }
    }
    return out;
}

/// Nearest-rank 1st and 3rd quartiles: the elements at 1-based ranks
/// ceil(n/4) and ceil(3n/4) of the sorted multiset. Both are members of the
/// input. Throws std::invalid_argument on an empty multiset.
std::pair<int, int> quartiles(std::span<const int> samples);

/// Nearest-rank median, rank ceil(n/2).
int median(std::span<const int> samples);

/// (min_s, max_s): minimum hourly q1 and maximum hourly q3 over nonempty
/// hours. Throws InsufficientDataError when every hour is empty.
std::pair<int, int> station_extrema(const HourlyDistribution& dist);

/// The integer shift that pushes the [min_s, max_s] band as far as possible
/// from both empty and full: floor(C - (C - (max - min)) / 2) - max, with
/// floor toward minus infinity.
int displacement(int capacity, int min_s, int max_s);

/// Positive displacement means the band sits low and the station drains
/// (source); negative means it fills up (sink).
StationClass classify(int disp);

struct StepWindow {
    int first_hour = 0;
    int last_hour = 6;
};

/// Hours h in the window whose median jumps by at least `threshold` bikes
/// between h and h+1; flags the operator's own overnight rebalancing.
std::vector<int> detect_overnight_step(const HourlyDistribution& dist, int threshold,
                                       const StepWindow& window = {});

/// One five-number summary per nonempty hour.
std::vector<BoxSummary> box_stats(const HourlyDistribution& dist);

/// Extrema + displacement + class for one station. Throws
/// InsufficientDataError when the distribution is all empty.
StationProfile build_profile(const HourlyDistribution& dist);

/// Profiles for every station with data; stations with zero usable weekday
/// observations are skipped with a warning on stderr.
std::vector<StationProfile> build_profiles(const std::map<StationId, HourlyDistribution>& dists);

}  // namespace bbss
