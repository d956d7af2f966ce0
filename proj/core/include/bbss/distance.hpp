#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bbss/feed.hpp"

namespace bbss {

struct GeoPoint {
    double latitude = 0.0;
    double longitude = 0.0;
};

/// Asymmetric travel matrices over depot + stations, depot at index 0.
struct DistanceMatrix {
    std::vector<StationId> ids;        // depot first
    std::vector<std::int64_t> meters;  // row-major (N+1) x (N+1)
    std::vector<std::int64_t> seconds;

    std::size_t size() const { return ids.size(); }
    std::int64_t meters_at(std::size_t from, std::size_t to) const {
        return meters[from * ids.size() + to];
    }
    std::int64_t seconds_at(std::size_t from, std::size_t to) const {
        return seconds[from * ids.size() + to];
    }
    std::optional<std::size_t> index_of(StationId id) const;

    bool operator==(const DistanceMatrix&) const = default;
};

/// How pairs get resolved: a live HTTP routing service, or great-circle
/// distance at a fixed truck speed so matrices are producible offline.
struct RoutingProvider {
    enum class Mode { offline, live };
    Mode mode = Mode::offline;
    double speed_kmh = 20.0;     // offline only
    std::string endpoint;        // live only
    std::string api_key;         // live only, sent as X-Api-Key
    int max_retries = 3;
    int min_request_gap_ms = 0;  // live request-rate ceiling

    static RoutingProvider offline(double speed_kmh = 20.0);
    static RoutingProvider live(std::string endpoint, std::string api_key = {});
};

/// Resolves one directed leg. Kept abstract so tests can count or fake
/// queries; make_router turns a RoutingProvider into the real thing.
class Router {
public:
    virtual ~Router() = default;
    struct Leg {
        std::int64_t meters = 0;
        std::int64_t seconds = 0;
    };
    virtual Leg route(const GeoPoint& from, const GeoPoint& to) = 0;
};

std::unique_ptr<Router> make_router(const RoutingProvider& provider);

/// Great-circle distance on a 6,371,000 m sphere, nearest integer meter.
std::int64_t haversine_meters(const GeoPoint& a, const GeoPoint& b);

/// round(meters * 3.6 / speed_kmh), half-up.
std::int64_t travel_seconds(std::int64_t meters, double speed_kmh);

/// Builds the full matrix for the given stations (which must include the
/// depot; depot moves to row/column 0). Pairs already in the cache file are
/// never re-queried; newly resolved pairs are appended to it. An empty cache
/// path disables caching.
DistanceMatrix build_matrix(std::span<const StationObservation> stations, StationId depot_id,
                            Router& router, const std::filesystem::path& cache = {});

DistanceMatrix build_matrix(std::span<const StationObservation> stations, StationId depot_id,
                            const RoutingProvider& provider,
                            const std::filesystem::path& cache = {});

/// Returns the override when given (it must be present), otherwise the
/// medoid: the station minimizing the sum of meters to all others, by the
/// matrix when available and pairwise haversine otherwise. Ties break
/// toward the smallest id.
StationId select_depot(std::span<const StationObservation> stations,
                       const DistanceMatrix* matrix = nullptr,
                       std::optional<StationId> override_id = std::nullopt);

}  // namespace bbss
