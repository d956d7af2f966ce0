#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bbss/distance.hpp"

namespace bbss {

/// Rebalancing fleet: one capacity per vehicle, one shared time budget.
struct VehicleParams {
    std::vector<int> capacities;      // size = V
    std::int64_t time_budget_s = 0;   // uniform across vehicles

    int count() const { return static_cast<int>(capacities.size()); }

    /// V identical vehicles.
    static VehicleParams uniform(int count, int capacity, std::int64_t time_budget_s);

    bool operator==(const VehicleParams&) const = default;
};

inline VehicleParams VehicleParams::uniform(int count, int capacity,
                                            std::int64_t time_budget_s) {
    VehicleParams p;
    p.capacities.assign(static_cast<std::size_t>(count > 0 ? count : 0), capacity);
    p.time_budget_s = time_budget_s;
    return p;
}

struct InstanceStation {
    StationId station_id = 0;
    int capacity = 0;  // C_s
    int current = 0;   // b_s, bikes at the chosen snapshot
    int target = 0;    // b̂_s

    bool operator==(const InstanceStation&) const = default;
};

/// A complete static rebalancing instance: stations with current/target
/// fill, the fleet, and travel matrices with the depot at index 0.
struct Instance {
    std::string name;
    std::vector<InstanceStation> stations;
    StationId depot_id = 0;
    VehicleParams vehicles;
    DistanceMatrix matrix;

    bool operator==(const Instance&) const = default;
};

}  // namespace bbss
