#include "bbss/synth.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bbss/random.hpp"

namespace bbss {

namespace {

bool is_day_hour(int hour) {
    return hour >= 7 && hour <= 19;
}

void check_level(StationId id, int level, int capacity) {
    if (level < 0 || level > capacity) {
        throw std::invalid_argument("station " + std::to_string(id) + ": pattern level " +
                                    std::to_string(level) + " outside [0, " +
                                    std::to_string(capacity) + "]");
    }
}

void validate_spec(const SyntheticStationSpec& spec) {
    if (spec.capacity <= 0) {
        throw std::invalid_argument("station " + std::to_string(spec.station_id) +
                                    ": capacity must be positive");
    }
    if (spec.noise < 0) {
        throw std::invalid_argument("station " + std::to_string(spec.station_id) +
                                    ": noise must be nonnegative");
    }
    std::visit(
        [&](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, pattern::Source>) {
                check_level(spec.station_id, p.day_low, spec.capacity);
                check_level(spec.station_id, p.night_high, spec.capacity);
            } else if constexpr (std::is_same_v<P, pattern::Sink>) {
                check_level(spec.station_id, p.day_high, spec.capacity);
                check_level(spec.station_id, p.night_low, spec.capacity);
            } else if constexpr (std::is_same_v<P, pattern::Flat>) {
                check_level(spec.station_id, p.level, spec.capacity);
            } else {
                if (p.jump_hour < 0 || p.jump_hour > 23) {
                    throw std::invalid_argument("station " + std::to_string(spec.station_id) +
                                                ": jump hour outside 0..23");
                }
                const int base = (spec.capacity - p.jump_size) / 2;
                check_level(spec.station_id, base, spec.capacity);
                check_level(spec.station_id, base + p.jump_size, spec.capacity);
            }
        },
        spec.pattern);
}

}  // namespace

int SyntheticStationSpec::level_at(int hour) const {
    return std::visit(
        [&](const auto& p) -> int {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, pattern::Source>) {
                return is_day_hour(hour) ? p.day_low : p.night_high;
            } else if constexpr (std::is_same_v<P, pattern::Sink>) {
                return is_day_hour(hour) ? p.day_high : p.night_low;
            } else if constexpr (std::is_same_v<P, pattern::Flat>) {
                return p.level;
            } else {
                const int base = (capacity - p.jump_size) / 2;
                return hour >= p.jump_hour ? base + p.jump_size : base;
            }
        },
        pattern);
}

std::vector<Snapshot> synth_corpus(std::span<const SyntheticStationSpec> specs, int days,
                                   int cadence_s, std::uint64_t seed,
                                   const SynthOptions& options) {
    if (cadence_s <= 0) {
        throw std::invalid_argument("cadence must be positive");
    }
    if (days < 1) {
        throw std::invalid_argument("days must be at least 1");
    }
    for (const auto& spec : specs) {
        validate_spec(spec);
    }

    std::mt19937_64 rng(seed);
    const int ticks_per_day = 86'400 / cadence_s;
    std::vector<Snapshot> corpus;
    corpus.reserve(static_cast<std::size_t>(days) * ticks_per_day);

    for (int d = 0; d < days; ++d) {
        const CivilTime date = options.start.plus_days(d);
        const bool weekend = date.is_weekend();
        for (int tick = 0; tick < ticks_per_day; ++tick) {
            const int sec = tick * cadence_s;
            Snapshot snap;
            snap.taken_at = date;
            snap.taken_at.hour = sec / 3600;
            snap.taken_at.minute = (sec / 60) % 60;
            snap.taken_at.second = sec % 60;
            snap.observations.reserve(specs.size());
            for (const auto& spec : specs) {
                int noise = spec.noise;
                if (weekend) {
                    noise = static_cast<int>(
                        std::lround(spec.noise * options.weekend_noise_factor));
                }
                int bikes = spec.level_at(snap.taken_at.hour);
                if (noise > 0) {
                    bikes += uniform_int(rng, -noise, noise);
                }
                bikes = std::clamp(bikes, 0, spec.capacity);

                StationObservation obs;
                obs.station_id = spec.station_id;
                obs.available_bikes = bikes;
                obs.available_docks = spec.capacity - bikes;
                obs.total_docks = spec.capacity + 1;  // the phantom dock
                obs.status_key = 1;
                obs.is_test = false;
                obs.latitude = spec.latitude;
                obs.longitude = spec.longitude;
                obs.address = "Synthetic Pl & " + std::to_string(spec.station_id) + " St";
                snap.observations.push_back(std::move(obs));
            }
            corpus.push_back(std::move(snap));
        }
    }
    return corpus;
}

std::vector<SyntheticStationSpec> parse_synth_spec(const std::string& text) {
    std::vector<SyntheticStationSpec> specs;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream row(line);
        std::string keyword;
        if (!(row >> keyword)) {
            continue;  // blank
        }
        const std::string where = "spec line " + std::to_string(line_no);
        if (keyword != "station") {
            throw ParseError(where + ": expected 'station', got '" + keyword + "'");
        }
        SyntheticStationSpec spec;
        std::string kind;
        if (!(row >> spec.station_id >> spec.capacity >> kind)) {
            throw ParseError(where + ": expected <id> <capacity> <pattern>");
        }
        auto read_ints = [&](int count) {
            std::vector<int> args(count);
            for (int i = 0; i < count; ++i) {
                if (!(row >> args[i])) {
                    throw ParseError(where + ": pattern '" + kind + "' needs " +
                                     std::to_string(count) + " integer arguments");
                }
            }
            return args;
        };
        if (kind == "source") {
            const auto a = read_ints(2);
            spec.pattern = pattern::Source{a[0], a[1]};
        } else if (kind == "sink") {
            const auto a = read_ints(2);
            spec.pattern = pattern::Sink{a[0], a[1]};
        } else if (kind == "flat") {
            const auto a = read_ints(1);
            spec.pattern = pattern::Flat{a[0]};
        } else if (kind == "step") {
            const auto a = read_ints(2);
            spec.pattern = pattern::Step{a[0], a[1]};
        } else {
            throw ParseError(where + ": unknown pattern '" + kind + "'");
        }
        if (!(row >> spec.noise >> spec.latitude >> spec.longitude)) {
            throw ParseError(where + ": expected <noise> <lat> <lon> after the pattern");
        }
        validate_spec(spec);
        specs.push_back(spec);
    }
    return specs;
}

}  // namespace bbss
