#include "bbss/stats.hpp"

#include <algorithm>
#include <iostream>

namespace bbss {

namespace {

// Element at 1-based rank ceil(p_num/p_den * n) of the sorted multiset.
int nearest_rank(std::vector<int>& sorted_scratch, std::span<const int> samples, int p_num,
                 int p_den) {
    sorted_scratch.assign(samples.begin(), samples.end());
    std::sort(sorted_scratch.begin(), sorted_scratch.end());
    const std::size_t n = sorted_scratch.size();
    const std::size_t rank = (p_num * n + p_den - 1) / p_den;  // ceil
    return sorted_scratch[rank - 1];
}

// floor division toward minus infinity; the displacement numerator can go
// negative and C++ integer division truncates toward zero.
int floor_div(int a, int b) {
    const int q = a / b;
    const int r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

}  // namespace

bool HourlyDistribution::any_samples() const {
    return std::any_of(samples.begin(), samples.end(),
                       [](const std::vector<int>& s) { return !s.empty(); });
}

std::string to_string(StationClass c) {
    switch (c) {
        case StationClass::source: return "source";
        case StationClass::sink: return "sink";
        case StationClass::neutral: return "neutral";
    }
    return "neutral";
}

std::pair<int, int> quartiles(std::span<const int> samples) {
    if (samples.empty()) {
        throw std::invalid_argument("quartiles of an empty multiset");
    }
    std::vector<int> scratch;
    const int q1 = nearest_rank(scratch, samples, 1, 4);
    const int q3 = nearest_rank(scratch, samples, 3, 4);
    return {q1, q3};
}

int median(std::span<const int> samples) {
    if (samples.empty()) {
        throw std::invalid_argument("median of an empty multiset");
    }
    std::vector<int> scratch;
    return nearest_rank(scratch, samples, 1, 2);
}

std::pair<int, int> station_extrema(const HourlyDistribution& dist) {
    bool seen = false;
    int min_s = 0;
    int max_s = 0;
    for (const auto& hour_samples : dist.samples) {
        if (hour_samples.empty()) {
            continue;
        }
        const auto [q1, q3] = quartiles(hour_samples);
        if (!seen) {
            min_s = q1;
            max_s = q3;
            seen = true;
        } else {
            min_s = std::min(min_s, q1);
            max_s = std::max(max_s, q3);
        }
    }
    if (!seen) {
        throw InsufficientDataError(dist.station_id,
                                    "station " + std::to_string(dist.station_id) +
                                        " has no usable weekday observations");
    }
    return {min_s, max_s};
}

int displacement(int capacity, int min_s, int max_s) {
    if (min_s < 0 || min_s > max_s || max_s > capacity) {
        throw std::invalid_argument("displacement requires 0 <= min <= max <= capacity");
    }
    // floor(C - (C - (max - min)) / 2) - max, all integer.
    return floor_div(2 * capacity - (capacity - (max_s - min_s)), 2) - max_s;
}

StationClass classify(int disp) {
    if (disp > 0) {
        return StationClass::source;
    }
    if (disp < 0) {
        return StationClass::sink;
    }
    return StationClass::neutral;
}

std::vector<int> detect_overnight_step(const HourlyDistribution& dist, int threshold,
                                       const StepWindow& window) {
    if (threshold <= 0) {
        throw std::invalid_argument("step threshold must be positive");
    }
    std::vector<int> hours;
    for (int h = window.first_hour; h <= window.last_hour && h + 1 < 24; ++h) {
        const auto& a = dist.samples[h];
        const auto& b = dist.samples[h + 1];
        if (a.empty() || b.empty()) {
            continue;
        }
        if (std::abs(median(b) - median(a)) >= threshold) {
            hours.push_back(h);
        }
    }
    return hours;
}

std::vector<BoxSummary> box_stats(const HourlyDistribution& dist) {
    std::vector<BoxSummary> out;
    for (int h = 0; h < 24; ++h) {
        const auto& samples = dist.samples[h];
        if (samples.empty()) {
            continue;
        }
        BoxSummary box;
        box.hour = h;
        box.n = samples.size();
        box.min = *std::min_element(samples.begin(), samples.end());
        box.max = *std::max_element(samples.begin(), samples.end());
        const auto [q1, q3] = quartiles(samples);
        box.q1 = q1;
        box.q3 = q3;
        box.median = median(samples);
        out.push_back(box);
    }
    return out;
}

StationProfile build_profile(const HourlyDistribution& dist) {
    StationProfile profile;
    profile.station_id = dist.station_id;
    profile.capacity = dist.capacity;
    const auto [min_s, max_s] = station_extrema(dist);
    profile.min_s = min_s;
    profile.max_s = max_s;
    profile.disp = displacement(profile.capacity, min_s, max_s);
    profile.cls = classify(profile.disp);
    return profile;
}

std::vector<StationProfile> build_profiles(
    const std::map<StationId, HourlyDistribution>& dists) {
    std::vector<StationProfile> profiles;
    profiles.reserve(dists.size());
    for (const auto& [id, dist] : dists) {
        try {
            profiles.push_back(build_profile(dist));
        } catch (const InsufficientDataError& e) {
            std::cerr << "warning: " << e.what() << "; skipped from profiles\n";
        }
    }
    return profiles;
}

}  // namespace bbss
