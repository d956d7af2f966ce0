#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bbss::cli {

/// Everything the subcommands read after flag parsing.
struct RunConfig {
    std::string store;
    std::string out;
    std::string endpoint;
    std::string spec_file;
    std::string month;
    std::string start_date = "2013-09-01";
    std::string cache;
    std::string routing_endpoint;
    std::string routing_api_key;
    std::string box_out;
    std::string mode = "offline";
    std::vector<std::string> files;
    std::vector<int> sizes;
    std::uint64_t seed = 0;
    std::int64_t depot = -1;
    bool depot_set = false;
    int interval_s = 600;
    int max_retries = 3;
    int days = 30;
    int cadence_s = 600;
    int vehicles = 3;
    int vehicle_cap = 20;
    std::int64_t time_budget_s = 7200;
    double speed_kmh = 20.0;
    double weekend_noise = 1.0;
    int rate_gap_ms = 0;
    int status = 1;
    int jobs = 0;  // 0 = hardware concurrency
    bool once = false;
    std::int64_t duration_s = -1;
    bool all_days = false;
    bool verbose = false;
};

/// Dispatches argv (without the program name) to one of
/// collect | synth | distances | stats | generate | validate.
/// Exit codes: 0 success, 1 data/validation error, 2 usage error.
/// Diagnostics go to stderr; data products go to files or stdout.
int run(std::vector<std::string> args);

}  // namespace bbss::cli
