#include "bbss/distance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace bbss {

namespace fs = std::filesystem;

namespace {

constexpr double kEarthRadiusM = 6'371'000.0;

class OfflineRouter final : public Router {
public:
    explicit OfflineRouter(double speed_kmh) : speed_kmh_(speed_kmh) {
        if (speed_kmh_ <= 0.0) {
            throw std::invalid_argument("offline routing speed must be positive");
        }
    }
    Leg route(const GeoPoint& from, const GeoPoint& to) override {
        Leg leg;
        leg.meters = haversine_meters(from, to);
        leg.seconds = travel_seconds(leg.meters, speed_kmh_);
        return leg;
    }

private:
    double speed_kmh_;
};

class HttpRouter final : public Router {
public:
    explicit HttpRouter(const RoutingProvider& provider) : provider_(provider) {}

    Leg route(const GeoPoint& from, const GeoPoint& to) override {
        throttle();
        std::string query = "?from_lat=" + format_coord(from.latitude) +
                            "&from_lon=" + format_coord(from.longitude) +
                            "&to_lat=" + format_coord(to.latitude) +
                            "&to_lon=" + format_coord(to.longitude);
        std::string last_error = "no attempt made";
        for (int attempt = 0; attempt <= provider_.max_retries; ++attempt) {
            if (attempt > 0) {
                std::this_thread::sleep_for(std::chrono::milliseconds(100 * attempt));
            }
            const auto scheme_end = provider_.endpoint.find("://");
            const auto path_start = scheme_end == std::string::npos
                                        ? provider_.endpoint.find('/')
                                        : provider_.endpoint.find('/', scheme_end + 3);
            const std::string base = path_start == std::string::npos
                                         ? provider_.endpoint
                                         : provider_.endpoint.substr(0, path_start);
            const std::string path =
                path_start == std::string::npos ? "/" : provider_.endpoint.substr(path_start);
            httplib::Client client(base);
            client.set_connection_timeout(5, 0);
            client.set_read_timeout(10, 0);
            httplib::Headers headers;
            if (!provider_.api_key.empty()) {
                headers.emplace("X-Api-Key", provider_.api_key);
            }
            auto res = client.Get(path + query, headers);
            if (!res) {
                last_error = "transport error: " + httplib::to_string(res.error());
                continue;
            }
            if (res->status != 200) {
                last_error = "HTTP status " + std::to_string(res->status);
                continue;
            }
            try {
                return parse_leg(res->body);
            } catch (const ParseError& e) {
                last_error = e.what();
            }
        }
        throw MatrixError("routing request failed after retries: " + last_error);
    }

private:
    static std::string format_coord(double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.8f", v);
        return buf;
    }

    static Leg parse_leg(const std::string& body) {
        nlohmann::json reply;
        try {
            reply = nlohmann::json::parse(body);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("routing reply is not JSON: ") + e.what());
        }
        if (!reply.contains("meters") || !reply.contains("seconds") ||
            !reply["meters"].is_number() || !reply["seconds"].is_number()) {
            throw ParseError("routing reply lacks numeric 'meters'/'seconds'");
        }
        Leg leg;
        // Half-up for fractional provider values.
        leg.meters = static_cast<std::int64_t>(std::floor(reply["meters"].get<double>() + 0.5));
        leg.seconds = static_cast<std::int64_t>(std::floor(reply["seconds"].get<double>() + 0.5));
        if (leg.meters < 0 || leg.seconds < 0) {
            throw ParseError("routing reply carries a negative distance");
        }
        return leg;
    }

    void throttle() {
        if (provider_.min_request_gap_ms <= 0) {
            return;
        }
        const auto now = std::chrono::steady_clock::now();
        const auto gap = std::chrono::milliseconds(provider_.min_request_gap_ms);
        if (last_request_.time_since_epoch().count() != 0 && now - last_request_ < gap) {
            std::this_thread::sleep_for(gap - (now - last_request_));
        }
        last_request_ = std::chrono::steady_clock::now();
    }

    RoutingProvider provider_;
    std::chrono::steady_clock::time_point last_request_{};
};

using PairKey = std::pair<StationId, StationId>;

std::map<PairKey, Router::Leg> read_cache(const fs::path& cache) {
    std::map<PairKey, Router::Leg> entries;
    if (cache.empty() || !fs::exists(cache)) {
        return entries;
    }
    std::ifstream in(cache);
    if (!in) {
        throw IoError("cannot read distance cache " + cache.string());
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::istringstream row(line);
        std::string from_s, to_s, meters_s, seconds_s;
        if (!std::getline(row, from_s, ',') || !std::getline(row, to_s, ',') ||
            !std::getline(row, meters_s, ',') || !std::getline(row, seconds_s)) {
            throw ParseError(cache.string() + ":" + std::to_string(line_no) +
                             ": expected from_id,to_id,meters,seconds");
        }
        try {
            PairKey key{std::stoll(from_s), std::stoll(to_s)};
            entries[key] = Router::Leg{std::stoll(meters_s), std::stoll(seconds_s)};
        } catch (const std::exception&) {
            throw ParseError(cache.string() + ":" + std::to_string(line_no) +
                             ": non-integer cache field");
        }
    }
    return entries;
}

}  // namespace

std::optional<std::size_t> DistanceMatrix::index_of(StationId id) const {
    const auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - ids.begin());
}

RoutingProvider RoutingProvider::offline(double speed_kmh) {
    RoutingProvider p;
    p.mode = Mode::offline;
    p.speed_kmh = speed_kmh;
    return p;
}

RoutingProvider RoutingProvider::live(std::string endpoint, std::string api_key) {
    RoutingProvider p;
    p.mode = Mode::live;
    p.endpoint = std::move(endpoint);
    p.api_key = std::move(api_key);
    return p;
}

std::unique_ptr<Router> make_router(const RoutingProvider& provider) {
    if (provider.mode == RoutingProvider::Mode::offline) {
        return std::make_unique<OfflineRouter>(provider.speed_kmh);
    }
    return std::make_unique<HttpRouter>(provider);
}

std::int64_t haversine_meters(const GeoPoint& a, const GeoPoint& b) {
    constexpr double deg = std::numbers::pi / 180.0;
    // |delta| keeps the formula bit-exact under argument swap.
    const double dlat = std::fabs(b.latitude - a.latitude) * deg;
    const double dlon = std::fabs(b.longitude - a.longitude) * deg;
    const double s1 = std::sin(dlat / 2.0);
    const double s2 = std::sin(dlon / 2.0);
    const double h =
        s1 * s1 + std::cos(a.latitude * deg) * std::cos(b.latitude * deg) * s2 * s2;
    const double arc = 2.0 * std::asin(std::min(1.0, std::sqrt(h)));
    return std::llround(kEarthRadiusM * arc);
}

std::int64_t travel_seconds(std::int64_t meters, double speed_kmh) {
    if (speed_kmh <= 0.0) {
        throw std::invalid_argument("speed must be positive");
    }
    if (meters < 0) {
        throw std::invalid_argument("meters must be nonnegative");
    }
    return static_cast<std::int64_t>(
        std::floor(static_cast<double>(meters) * 3.6 / speed_kmh + 0.5));
}

DistanceMatrix build_matrix(std::span<const StationObservation> stations, StationId depot_id,
                            Router& router, const fs::path& cache) {
    std::vector<const StationObservation*> ordered;
    const StationObservation* depot = nullptr;
    for (const auto& s : stations) {
        if (s.station_id == depot_id) {
            depot = &s;
        } else {
            ordered.push_back(&s);
        }
    }
    if (depot == nullptr) {
        throw std::invalid_argument("depot id " + std::to_string(depot_id) +
                                    " is not among the stations");
    }
    ordered.insert(ordered.begin(), depot);

    auto cached = read_cache(cache);
    std::ofstream append;
    if (!cache.empty()) {
        if (cache.has_parent_path()) {
            fs::create_directories(cache.parent_path());
        }
        append.open(cache, std::ios::app);
        if (!append) {
            throw IoError("cannot append to distance cache " + cache.string());
        }
    }

    const std::size_t n = ordered.size();
    DistanceMatrix matrix;
    matrix.ids.reserve(n);
    for (const auto* s : ordered) {
        matrix.ids.push_back(s->station_id);
    }
    matrix.meters.assign(n * n, 0);
    matrix.seconds.assign(n * n, 0);

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            const PairKey key{ordered[i]->station_id, ordered[j]->station_id};
            Router::Leg leg;
            if (const auto hit = cached.find(key); hit != cached.end()) {
                leg = hit->second;
            } else {
                try {
                    leg = router.route({ordered[i]->latitude, ordered[i]->longitude},
                                       {ordered[j]->latitude, ordered[j]->longitude});
                } catch (const MatrixError& e) {
                    throw MatrixError("pair " + std::to_string(key.first) + " -> " +
                                      std::to_string(key.second) + ": " + e.what());
                }
                if (append.is_open()) {
                    append << key.first << ',' << key.second << ',' << leg.meters << ','
                           << leg.seconds << '\n';
                }
            }
            matrix.meters[i * n + j] = leg.meters;
            matrix.seconds[i * n + j] = leg.seconds;
        }
    }
    return matrix;
}

DistanceMatrix build_matrix(std::span<const StationObservation> stations, StationId depot_id,
                            const RoutingProvider& provider, const fs::path& cache) {
    const auto router = make_router(provider);
    return build_matrix(stations, depot_id, *router, cache);
}

StationId select_depot(std::span<const StationObservation> stations, const DistanceMatrix* matrix,
                       std::optional<StationId> override_id) {
    if (stations.empty()) {
        throw std::invalid_argument("cannot pick a depot from zero stations");
    }
    if (override_id) {
        for (const auto& s : stations) {
            if (s.station_id == *override_id) {
                return *override_id;
            }
        }
        throw std::invalid_argument("depot override " + std::to_string(*override_id) +
                                    " is not among the stations");
    }

    StationId best_id = 0;
    std::int64_t best_sum = -1;
    for (const auto& s : stations) {
        std::int64_t sum = 0;
        for (const auto& other : stations) {
            if (other.station_id == s.station_id) {
                continue;
            }
            if (matrix != nullptr) {
                const auto from = matrix->index_of(s.station_id);
                const auto to = matrix->index_of(other.station_id);
                if (!from || !to) {
                    throw std::invalid_argument("station " +
                                                std::to_string(!from ? s.station_id
                                                                     : other.station_id) +
                                                " is missing from the distance matrix");
                }
                sum += matrix->meters_at(*from, *to);
            } else {
                sum += haversine_meters({s.latitude, s.longitude},
                                        {other.latitude, other.longitude});
            }
        }
        if (best_sum < 0 || sum < best_sum || (sum == best_sum && s.station_id < best_id)) {
            best_sum = sum;
            best_id = s.station_id;
        }
    }
    return best_id;
}

}  // namespace bbss
