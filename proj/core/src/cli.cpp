#include "bbss/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "bbss/collector.hpp"
#include "bbss/instance_format.hpp"
#include "bbss/instance_gen.hpp"
#include "bbss/synth.hpp"

namespace bbss::cli {

namespace {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CivilTime parse_date(const std::string& text) {
    CivilTime t;
    char trailing = 0;
    if (std::sscanf(text.c_str(), "%4d-%2d-%2d%c", &t.year, &t.month, &t.day, &trailing) != 3 ||
        !t.valid()) {
        throw std::invalid_argument("not a YYYY-MM-DD date: '" + text + "'");
    }
    return t;
}

std::pair<int, int> parse_month(const std::string& text) {
    int year = 0, month = 0;
    char trailing = 0;
    if (std::sscanf(text.c_str(), "%4d-%2d%c", &year, &month, &trailing) != 2 || month < 1 ||
        month > 12) {
        throw std::invalid_argument("not a YYYY-MM month: '" + text + "'");
    }
    return {year, month};
}

RoutingProvider make_provider(const RunConfig& cfg) {
    if (cfg.mode == "offline") {
        return RoutingProvider::offline(cfg.speed_kmh);
    }
    if (cfg.mode == "live") {
        if (cfg.routing_endpoint.empty()) {
            throw std::invalid_argument("--mode live needs --routing-endpoint");
        }
        RoutingProvider p = RoutingProvider::live(cfg.routing_endpoint, cfg.routing_api_key);
        p.min_request_gap_ms = cfg.rate_gap_ms;
        return p;
    }
    throw std::invalid_argument("--mode must be offline or live");
}

/// Usable observations of the latest snapshot; the freshest view of the
/// network layout.
std::vector<StationObservation> latest_stations(const Corpus& corpus, int status) {
    Snapshot last;
    bool seen = false;
    for (const Snapshot& snap : corpus) {
        last = snap;
        seen = true;
    }
    if (!seen) {
        throw GenerationError("the snapshot store is empty");
    }
    std::vector<StationObservation> stations;
    for (const auto& obs : last.observations) {
        if (is_usable(obs, status)) {
            stations.push_back(obs);
        }
    }
    if (stations.empty()) {
        throw GenerationError("no usable stations in the latest snapshot");
    }
    return stations;
}

int run_collect(const RunConfig& cfg) {
    CollectorConfig collector{cfg.endpoint, cfg.interval_s, SnapshotStore{cfg.store},
                              cfg.max_retries};
    auto poll_and_report = [&] {
        const PollResult result = poll_once(collector);
        std::cerr << (result == PollResult::stored ? "stored snapshot\n"
                                                   : "skipped duplicate executionTime\n");
    };
    if (cfg.once) {
        poll_and_report();
        return 0;
    }
    const std::int64_t ticks =
        cfg.duration_s >= 0 ? schedule_ticks(cfg.duration_s, cfg.interval_s) : -1;
    for (std::int64_t i = 0; ticks < 0 || i < ticks; ++i) {
        if (i > 0) {
            std::this_thread::sleep_for(std::chrono::seconds(cfg.interval_s));
        }
        try {
            poll_and_report();
        } catch (const std::exception& e) {
            // A long-running collector keeps going through feed outages.
            std::cerr << "poll failed: " << e.what() << "\n";
        }
    }
    return 0;
}

int run_synth(const RunConfig& cfg) {
    const auto specs = parse_synth_spec(read_text_file(cfg.spec_file));
    SynthOptions options;
    options.start = parse_date(cfg.start_date);
    options.weekend_noise_factor = cfg.weekend_noise;
    const auto corpus = synth_corpus(specs, cfg.days, cfg.cadence_s, cfg.seed, options);
    const SnapshotStore store{cfg.out};
    std::size_t written = 0;
    for (const Snapshot& snap : corpus) {
        if (store.store_raw(to_feed_json(snap), snap.taken_at)) {
            ++written;
        }
    }
    std::cerr << "wrote " << written << " snapshots (" << specs.size() << " stations) to "
              << cfg.out << "\n";
    return 0;
}

int run_distances(const RunConfig& cfg) {
    const auto corpus = load_corpus(SnapshotStore{cfg.store});
    const auto stations = latest_stations(corpus, cfg.status);
    const std::optional<StationId> override_id =
        cfg.depot_set ? std::optional<StationId>{cfg.depot} : std::nullopt;
    const StationId depot = select_depot(stations, nullptr, override_id);
    const auto matrix = build_matrix(stations, depot, make_provider(cfg), cfg.cache);
    std::cerr << "resolved " << matrix.size() << "x" << matrix.size()
              << " matrix with depot " << depot << "; pair cache at " << cfg.cache << "\n";
    return 0;
}

int run_stats(const RunConfig& cfg) {
    const auto corpus = load_corpus(SnapshotStore{cfg.store});
    StatsFilter filter;
    filter.weekdays_only = !cfg.all_days;
    filter.operational_status = cfg.status;
    const auto dists = collect_distributions(corpus, filter);
    const auto profiles = build_profiles(dists);

    std::ofstream file_out;
    if (cfg.out != "-") {
        file_out.open(cfg.out, std::ios::trunc);
        if (!file_out) {
            throw IoError("cannot write " + cfg.out);
        }
    }
    std::ostream& out = cfg.out == "-" ? std::cout : file_out;
    out << "station_id,capacity,min_s,max_s,disp,class\n";
    for (const auto& p : profiles) {
        out << p.station_id << ',' << p.capacity << ',' << p.min_s << ',' << p.max_s << ','
            << p.disp << ',' << to_string(p.cls) << '\n';
    }

    if (!cfg.box_out.empty()) {
        std::ofstream box(cfg.box_out, std::ios::trunc);
        if (!box) {
            throw IoError("cannot write " + cfg.box_out);
        }
        box << "station_id,hour,n,min,q1,median,q3,max\n";
        for (const auto& [id, dist] : dists) {
            for (const auto& row : box_stats(dist)) {
                box << id << ',' << row.hour << ',' << row.n << ',' << row.min << ',' << row.q1
                    << ',' << row.median << ',' << row.q3 << ',' << row.max << '\n';
            }
        }
    }
    std::cerr << "profiled " << profiles.size() << " of " << dists.size() << " stations\n";
    return 0;
}

int run_generate(const RunConfig& cfg) {
    const SnapshotStore store{cfg.store};
    StatsFilter filter;
    filter.operational_status = cfg.status;
    const auto dists = collect_distributions(load_corpus(store), filter);
    const auto profiles = build_profiles(dists);

    BatchParams params;
    std::tie(params.year, params.month) = parse_month(cfg.month);
    params.sizes = cfg.sizes;
    params.vehicles = VehicleParams::uniform(cfg.vehicles, cfg.vehicle_cap, cfg.time_budget_s);
    params.seed = cfg.seed;
    params.jobs = cfg.jobs > 0 ? cfg.jobs
                               : static_cast<int>(std::thread::hardware_concurrency());
    params.operational_status = cfg.status;

    if (cfg.depot_set) {
        params.depot_id = cfg.depot;
        // The override must name a real station.
        select_depot(latest_stations(load_corpus(store), cfg.status), nullptr, params.depot_id);
    } else {
        params.depot_id = select_depot(latest_stations(load_corpus(store), cfg.status));
        std::cerr << "selected medoid depot " << params.depot_id << "\n";
    }

    MatrixSource source;
    source.provider = make_provider(cfg);
    source.cache = cfg.cache;

    const auto midnights =
        select_midnight_snapshots(load_corpus(store), params.year, params.month);
    const BatchResult batch = generate_batch_from(midnights, profiles, source, params);

    std::filesystem::create_directories(cfg.out);
    for (const Instance& inst : batch.instances) {
        const std::filesystem::path target =
            std::filesystem::path(cfg.out) / (inst.name + ".bbss");
        std::ofstream out(target, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot write " + target.string());
        }
        out << write_instance(inst);
        std::cout << target.string() << "\n";
    }
    for (const std::string& err : batch.errors) {
        std::cerr << "instance skipped: " << err << "\n";
    }
    std::cerr << "generated " << batch.instances.size() << " instances ("
              << batch.errors.size() << " failed) from " << midnights.size()
              << " midnight snapshots\n";
    return batch.errors.empty() ? 0 : 1;
}

int run_validate(const RunConfig& cfg) {
    bool all_ok = true;
    for (const std::string& file : cfg.files) {
        try {
            const Instance inst = parse_instance(read_text_file(file));
            const ValidationReport report = validate_instance(inst);
            if (report.is_valid()) {
                std::cout << file << ": ok (" << inst.stations.size() << " stations)\n";
            } else {
                all_ok = false;
                for (const auto& v : report.violations) {
                    std::cerr << file << ": " << v.code << ": " << v.message << "\n";
                }
            }
        } catch (const std::exception& e) {
            all_ok = false;
            std::cerr << file << ": " << e.what() << "\n";
        }
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int run(std::vector<std::string> args) {
    CLI::App app{"static bike-sharing rebalancing instance forge"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* collect = app.add_subcommand("collect", "poll a feed endpoint into a snapshot store");
    collect->add_option("--endpoint", cfg.endpoint, "feed URL")
        ->envname("BSS_FEED_ENDPOINT")
        ->required();
    collect->add_option("--interval", cfg.interval_s, "seconds between polls")
        ->check(CLI::PositiveNumber);
    collect->add_option("--store", cfg.store, "snapshot store directory")->required();
    collect->add_option("--max-retries", cfg.max_retries, "retries per poll");
    collect->add_flag("--once", cfg.once, "poll a single time and exit");
    collect->add_option("--duration", cfg.duration_s,
                        "poll for this many seconds (one poll at time zero), then exit");

    auto* synth = app.add_subcommand("synth", "write a synthetic snapshot corpus");
    synth->add_option("--spec", cfg.spec_file, "station spec file")->required();
    synth->add_option("--days", cfg.days, "days to generate")->check(CLI::PositiveNumber);
    synth->add_option("--cadence", cfg.cadence_s, "seconds between snapshots")
        ->check(CLI::PositiveNumber);
    synth->add_option("--seed", cfg.seed, "noise seed");
    synth->add_option("--out", cfg.store, "target store directory")->required();
    synth->add_option("--start-date", cfg.start_date, "first day, YYYY-MM-DD");
    synth->add_option("--weekend-noise-mult", cfg.weekend_noise,
                      "noise multiplier on Saturdays and Sundays");

    auto* distances = app.add_subcommand("distances", "warm the pairwise travel cache");
    distances->add_option("--store", cfg.store, "snapshot store directory")->required();
    distances->add_option("--depot", cfg.depot, "depot station id (default: medoid)");
    distances->add_option("--mode", cfg.mode, "offline|live");
    distances->add_option("--cache", cfg.cache, "pair cache file (CSV, appended)")->required();
    distances->add_option("--speed", cfg.speed_kmh, "offline truck speed, km/h");
    distances->add_option("--routing-endpoint", cfg.routing_endpoint, "live routing URL");
    distances->add_option("--rate-gap-ms", cfg.rate_gap_ms,
                          "minimum gap between live requests");
    distances->add_option("--status", cfg.status, "operational statusKey");

    auto* stats = app.add_subcommand("stats", "emit per-station profiles and box data");
    stats->add_option("--store", cfg.store, "snapshot store directory")->required();
    stats->add_option("--out", cfg.out, "profile CSV destination, '-' for stdout");
    stats->add_option("--box-out", cfg.box_out, "hourly box CSV destination");
    stats->add_flag("--all-days", cfg.all_days, "include weekends");
    stats->add_option("--status", cfg.status, "operational statusKey");

    auto* generate = app.add_subcommand("generate", "build instances from midnight snapshots");
    generate->add_option("--store", cfg.store, "snapshot store directory")->required();
    generate->add_option("--month", cfg.month, "midnight snapshot month, YYYY-MM")->required();
    generate->add_option("--sizes", cfg.sizes, "instance sizes")->delimiter(',');
    generate->add_option("--vehicles", cfg.vehicles, "fleet size")->check(CLI::PositiveNumber);
    generate->add_option("--vehicle-cap", cfg.vehicle_cap, "per-vehicle bike capacity")
        ->check(CLI::PositiveNumber);
    generate->add_option("--time-budget", cfg.time_budget_s, "per-vehicle seconds")
        ->check(CLI::PositiveNumber);
    generate->add_option("--depot", cfg.depot, "depot station id (default: medoid)");
    generate->add_option("--seed", cfg.seed, "master seed, part of instance names")
        ->required();
    generate->add_option("--out", cfg.out, "instance output directory")->required();
    generate->add_option("--mode", cfg.mode, "offline|live");
    generate->add_option("--speed", cfg.speed_kmh, "offline truck speed, km/h");
    generate->add_option("--cache", cfg.cache, "pair cache file");
    generate->add_option("--routing-endpoint", cfg.routing_endpoint, "live routing URL");
    generate->add_option("--rate-gap-ms", cfg.rate_gap_ms,
                         "minimum gap between live requests");
    generate->add_option("--jobs", cfg.jobs, "parallel instance builds (0 = all cores)");
    generate->add_option("--status", cfg.status, "operational statusKey");

    auto* validate = app.add_subcommand("validate", "check instance files");
    validate->add_option("files", cfg.files, "instance files")->required();

    app.add_flag("-v,--verbose", cfg.verbose, "chatty diagnostics");

    try {
        std::reverse(args.begin(), args.end());  // CLI11 consumes right-to-left
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    cfg.depot_set = (distances->count("--depot") + generate->count("--depot")) > 0;
    if (cfg.sizes.empty()) {
        cfg.sizes = {40, 80, 120, 160, 200, 240};
    }

    try {
        if (collect->parsed()) return run_collect(cfg);
        if (synth->parsed()) return run_synth(cfg);
        if (distances->parsed()) return run_distances(cfg);
        if (stats->parsed()) return run_stats(cfg);
        if (generate->parsed()) return run_generate(cfg);
        if (validate->parsed()) return run_validate(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "usage error: no subcommand given\n";
    return 2;
}

}  // namespace bbss::cli
