#include "bbss/feed.hpp"

#include <algorithm>
#include <unordered_set>

#include "json.hpp"

namespace bbss {

namespace {

using nlohmann::json;

std::string station_context(const json& record) {
    if (record.contains("id") && record["id"].is_number_integer()) {
        return "station " + std::to_string(record["id"].get<long long>());
    }
    return "station record";
}

int require_count(const json& record, const char* field) {
    if (!record.contains(field)) {
        throw ParseError(station_context(record) + ": missing field '" + field + "'");
    }
    const auto& v = record[field];
    if (!v.is_number_integer()) {
        throw ParseError(station_context(record) + ": field '" + field + "' is not an integer");
    }
    const auto n = v.get<long long>();
    if (n < 0) {
        throw ParseError(station_context(record) + ": field '" + field + "' is negative");
    }
    return static_cast<int>(n);
}

double require_number(const json& record, const char* field) {
    if (!record.contains(field)) {
        throw ParseError(station_context(record) + ": missing field '" + field + "'");
    }
    const auto& v = record[field];
    if (!v.is_number()) {
        throw ParseError(station_context(record) + ": field '" + field + "' is not a number");
    }
    return v.get<double>();
}

StationObservation parse_station(const json& record) {
    if (!record.is_object()) {
        throw ParseError("stationBeanList entry is not an object");
    }
    StationObservation obs;
    if (!record.contains("id") || !record["id"].is_number_integer()) {
        throw ParseError("station record: missing or non-integer field 'id'");
    }
    obs.station_id = record["id"].get<StationId>();
    obs.available_docks = require_count(record, "availableDocks");
    obs.total_docks = require_count(record, "totalDocks");
    obs.available_bikes = require_count(record, "availableBikes");
    if (!record.contains("statusKey") || !record["statusKey"].is_number_integer()) {
        throw ParseError(station_context(record) + ": missing or non-integer field 'statusKey'");
    }
    obs.status_key = record["statusKey"].get<int>();
    if (!record.contains("testStation") || !record["testStation"].is_boolean()) {
        throw ParseError(station_context(record) + ": missing or non-boolean field 'testStation'");
    }
    obs.is_test = record["testStation"].get<bool>();
    obs.latitude = require_number(record, "latitude");
    obs.longitude = require_number(record, "longitude");
    if (obs.latitude < -90.0 || obs.latitude > 90.0) {
        throw ParseError(station_context(record) + ": field 'latitude' out of [-90, 90]");
    }
    if (obs.longitude < -180.0 || obs.longitude > 180.0) {
        throw ParseError(station_context(record) + ": field 'longitude' out of [-180, 180]");
    }
    if (!record.contains("stAddress1") || !record["stAddress1"].is_string()) {
        throw ParseError(station_context(record) + ": missing or non-string field 'stAddress1'");
    }
    obs.address = record["stAddress1"].get<std::string>();
    if (obs.available_docks + obs.available_bikes > obs.total_docks) {
        throw ParseError(station_context(record) +
                         ": availableDocks + availableBikes exceeds totalDocks");
    }
    return obs;
}

}  // namespace

const StationObservation* Snapshot::find(StationId id) const {
    const auto it = std::find_if(observations.begin(), observations.end(),
                                 [id](const StationObservation& o) { return o.station_id == id; });
    return it == observations.end() ? nullptr : &*it;
}

Snapshot parse_snapshot(const std::string& document) {
    json payload;
    try {
        payload = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed feed document: ") + e.what());
    }
    if (!payload.is_object()) {
        throw ParseError("feed document is not a JSON object");
    }
    if (!payload.contains("executionTime")) {
        throw ParseError("feed document is missing the executionTime header");
    }
    if (!payload["executionTime"].is_string()) {
        throw ParseError("executionTime header is not a string");
    }
    Snapshot snap;
    snap.taken_at = CivilTime::from_feed(payload["executionTime"].get<std::string>());
    if (!payload.contains("stationBeanList") || !payload["stationBeanList"].is_array()) {
        throw ParseError("feed document is missing the stationBeanList array");
    }
    std::unordered_set<StationId> seen;
    for (const auto& record : payload["stationBeanList"]) {
        StationObservation obs = parse_station(record);
        if (!seen.insert(obs.station_id).second) {
            throw ParseError("duplicate station id " + std::to_string(obs.station_id));
        }
        snap.observations.push_back(std::move(obs));
    }
    return snap;
}

std::string to_feed_json(const Snapshot& snapshot) {
    json payload;
    payload["executionTime"] = snapshot.taken_at.feed_string();
    json list = json::array();
    for (const auto& obs : snapshot.observations) {
        json record;
        record["id"] = obs.station_id;
        record["availableDocks"] = obs.available_docks;
        record["totalDocks"] = obs.total_docks;
        record["availableBikes"] = obs.available_bikes;
        record["statusKey"] = obs.status_key;
        record["testStation"] = obs.is_test;
        record["latitude"] = obs.latitude;
        record["longitude"] = obs.longitude;
        record["stAddress1"] = obs.address;
        record["stationName"] = obs.address;
        list.push_back(std::move(record));
    }
    payload["stationBeanList"] = std::move(list);
    return payload.dump();
}

CapacityReport usable_capacity(const StationObservation& obs) {
    CapacityReport report;
    report.station_id = obs.station_id;
    report.usable_capacity = obs.available_docks + obs.available_bikes;
    report.dock_displacement = obs.total_docks - report.usable_capacity;
    return report;
}

}  // namespace bbss
