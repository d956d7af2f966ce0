#include "bbss/instance_format.hpp"

#include <charconv>
#include <sstream>

namespace bbss {

namespace {

constexpr const char* kHeaderComment =
    "# static rebalancing instance; travel values exclude loading/unloading time";

/// Feeds significant lines (comments stripped, blanks skipped) one at a
/// time, remembering the current line number for error messages.
class LineReader {
public:
    explicit LineReader(const std::string& text) : in_(text) {}

    bool next(std::string& out) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            if (const auto hash = line.find('#'); hash != std::string::npos) {
                line.erase(hash);
            }
            const auto last = line.find_last_not_of(" \t\r");
            if (last == std::string::npos) {
                continue;
            }
            out = line.substr(0, last + 1);
            return true;
        }
        return false;
    }

    std::size_t line_no() const { return line_no_; }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError("line " + std::to_string(line_no_) + ": " + message);
    }

private:
    std::istringstream in_;
    std::size_t line_no_ = 0;
};

std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) {
        out.push_back(tok);
    }
    return out;
}

std::int64_t to_int(const LineReader& reader, const std::string& token) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        reader.fail("expected an integer, got '" + token + "'");
    }
    return value;
}

std::vector<std::string> expect(LineReader& reader, const std::string& keyword,
                                std::size_t token_count) {
    std::string line;
    if (!reader.next(line)) {
        throw ParseError("unexpected end of file, expected '" + keyword + "'");
    }
    auto toks = tokens_of(line);
    if (toks.empty() || toks[0] != keyword) {
        reader.fail("expected '" + keyword + "', got '" + (toks.empty() ? "" : toks[0]) + "'");
    }
    if (token_count != 0 && toks.size() != token_count) {
        reader.fail("'" + keyword + "' takes " + std::to_string(token_count - 1) +
                    " field(s), got " + std::to_string(toks.size() - 1));
    }
    return toks;
}

std::vector<std::int64_t> read_matrix(LineReader& reader, std::size_t dim,
                                      const std::string& which) {
    std::vector<std::int64_t> cells;
    cells.reserve(dim * dim);
    for (std::size_t row = 0; row < dim; ++row) {
        std::string line;
        if (!reader.next(line)) {
            throw ParseError("unexpected end of file inside 'matrix " + which + "'");
        }
        const auto toks = tokens_of(line);
        if (toks.size() != dim) {
            reader.fail("matrix " + which + " row " + std::to_string(row) + " has " +
                        std::to_string(toks.size()) + " entries, expected " +
                        std::to_string(dim));
        }
        for (const auto& tok : toks) {
            cells.push_back(to_int(reader, tok));
        }
    }
    return cells;
}

void add(ValidationReport& report, std::string code, std::optional<StationId> id,
         std::string message) {
    report.violations.push_back({std::move(code), id, std::move(message)});
}

}  // namespace

std::string write_instance(const Instance& instance) {
    const ValidationReport report = validate_instance(instance);
    if (!report.is_valid()) {
        throw SerializationError("refusing to serialize an invalid instance: " +
                                 report.violations.front().code + " (" +
                                 std::to_string(report.violations.size()) + " violation(s))");
    }
    if (instance.name.empty() ||
        instance.name.find_first_of(" \t#") != std::string::npos) {
        throw SerializationError("instance name must be nonempty and free of spaces and '#'");
    }

    std::ostringstream out;
    out << kHeaderComment << '\n';
    out << "bbss 1\n";
    out << "name " << instance.name << '\n';
    out << "stations " << instance.stations.size() << '\n';
    out << "vehicles " << instance.vehicles.count() << '\n';
    out << "timebudget " << instance.vehicles.time_budget_s << '\n';
    out << "vehiclecap";
    for (const int cap : instance.vehicles.capacities) {
        out << ' ' << cap;
    }
    out << '\n';
    out << "depot " << instance.depot_id << '\n';
    for (const auto& s : instance.stations) {
        out << "station " << s.station_id << ' ' << s.capacity << ' ' << s.current << ' '
            << s.target << '\n';
    }
    const std::size_t dim = instance.matrix.size();
    for (const char* which : {"seconds", "meters"}) {
        out << "matrix " << which << '\n';
        const auto& cells =
            which[0] == 's' ? instance.matrix.seconds : instance.matrix.meters;
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                if (j > 0) {
                    out << ' ';
                }
                out << cells[i * dim + j];
            }
            out << '\n';
        }
    }
    out << "end\n";
    return out.str();
}

Instance parse_instance(const std::string& text) {
    LineReader reader(text);
    Instance inst;

    {
        const auto toks = expect(reader, "bbss", 2);
        if (to_int(reader, toks[1]) != 1) {
            reader.fail("unsupported format version '" + toks[1] + "'");
        }
    }
    inst.name = expect(reader, "name", 2)[1];
    const std::int64_t n_stations = to_int(reader, expect(reader, "stations", 2)[1]);
    if (n_stations < 0) {
        reader.fail("negative station count");
    }
    const std::int64_t n_vehicles = to_int(reader, expect(reader, "vehicles", 2)[1]);
    if (n_vehicles < 0) {
        reader.fail("negative vehicle count");
    }
    inst.vehicles.time_budget_s = to_int(reader, expect(reader, "timebudget", 2)[1]);
    {
        const auto toks = expect(reader, "vehiclecap", 0);
        if (static_cast<std::int64_t>(toks.size()) - 1 != n_vehicles) {
            reader.fail("vehiclecap lists " + std::to_string(toks.size() - 1) +
                        " capacities for " + std::to_string(n_vehicles) + " vehicles");
        }
        for (std::size_t i = 1; i < toks.size(); ++i) {
            inst.vehicles.capacities.push_back(static_cast<int>(to_int(reader, toks[i])));
        }
    }
    inst.depot_id = to_int(reader, expect(reader, "depot", 2)[1]);

    inst.matrix.ids.push_back(inst.depot_id);
    for (std::int64_t i = 0; i < n_stations; ++i) {
        const auto toks = expect(reader, "station", 5);
        InstanceStation s;
        s.station_id = to_int(reader, toks[1]);
        s.capacity = static_cast<int>(to_int(reader, toks[2]));
        s.current = static_cast<int>(to_int(reader, toks[3]));
        s.target = static_cast<int>(to_int(reader, toks[4]));
        inst.stations.push_back(s);
        inst.matrix.ids.push_back(s.station_id);
    }

    const std::size_t dim = static_cast<std::size_t>(n_stations) + 1;
    {
        const auto toks = expect(reader, "matrix", 2);
        if (toks[1] != "seconds") {
            reader.fail("expected 'matrix seconds' first, got 'matrix " + toks[1] + "'");
        }
        inst.matrix.seconds = read_matrix(reader, dim, "seconds");
    }
    {
        const auto toks = expect(reader, "matrix", 2);
        if (toks[1] != "meters") {
            reader.fail("expected 'matrix meters', got 'matrix " + toks[1] + "'");
        }
        inst.matrix.meters = read_matrix(reader, dim, "meters");
    }
    expect(reader, "end", 1);
    std::string trailing;
    if (reader.next(trailing)) {
        reader.fail("content after 'end': '" + trailing + "'");
    }
    return inst;
}

ValidationReport validate_instance(const Instance& instance) {
    ValidationReport report;

    if (instance.vehicles.count() < 1) {
        add(report, "NO_VEHICLES", std::nullopt, "an instance needs at least one vehicle");
    }
    for (int v = 0; v < instance.vehicles.count(); ++v) {
        if (instance.vehicles.capacities[v] <= 0) {
            add(report, "NONPOSITIVE_VEHICLE_CAPACITY", std::nullopt,
                "vehicle " + std::to_string(v) + " has capacity " +
                    std::to_string(instance.vehicles.capacities[v]));
        }
    }
    if (instance.vehicles.time_budget_s <= 0) {
        add(report, "NONPOSITIVE_TIME_BUDGET", std::nullopt,
            "time budget is " + std::to_string(instance.vehicles.time_budget_s));
    }

    for (const auto& s : instance.stations) {
        if (s.current < 0) {
            add(report, "CURRENT_NEGATIVE", s.station_id,
                "station " + std::to_string(s.station_id) + " has " +
                    std::to_string(s.current) + " bikes");
        } else if (s.current > s.capacity) {
            add(report, "CURRENT_EXCEEDS_CAPACITY", s.station_id,
                "station " + std::to_string(s.station_id) + " holds " +
                    std::to_string(s.current) + " bikes with capacity " +
                    std::to_string(s.capacity));
        }
        if (s.target < 0) {
            add(report, "TARGET_NEGATIVE", s.station_id,
                "station " + std::to_string(s.station_id) + " targets " +
                    std::to_string(s.target) + " bikes");
        } else if (s.target > s.capacity) {
            add(report, "TARGET_EXCEEDS_CAPACITY", s.station_id,
                "station " + std::to_string(s.station_id) + " targets " +
                    std::to_string(s.target) + " bikes with capacity " +
                    std::to_string(s.capacity));
        }
        if (s.station_id == instance.depot_id) {
            add(report, "DEPOT_AMONG_STATIONS", s.station_id,
                "depot " + std::to_string(instance.depot_id) + " appears as a station");
        }
    }

    const std::size_t dim = instance.stations.size() + 1;
    bool shape_ok = instance.matrix.ids.size() == dim &&
                    instance.matrix.meters.size() == dim * dim &&
                    instance.matrix.seconds.size() == dim * dim;
    if (!shape_ok) {
        add(report, "MATRIX_SHAPE", std::nullopt,
            "expected (" + std::to_string(dim) + ")x(" + std::to_string(dim) +
                ") matrices over " + std::to_string(dim) + " ids; got ids=" +
                std::to_string(instance.matrix.ids.size()) +
                " meters=" + std::to_string(instance.matrix.meters.size()) +
                " seconds=" + std::to_string(instance.matrix.seconds.size()));
    } else {
        bool ids_ok = instance.matrix.ids[0] == instance.depot_id;
        for (std::size_t i = 0; i < instance.stations.size() && ids_ok; ++i) {
            ids_ok = instance.matrix.ids[i + 1] == instance.stations[i].station_id;
        }
        if (!ids_ok) {
            add(report, "MATRIX_IDS_MISMATCH", std::nullopt,
                "matrix ids are not depot followed by the station lines in order");
        }
        for (std::size_t i = 0; i < dim; ++i) {
            if (instance.matrix.meters_at(i, i) != 0 || instance.matrix.seconds_at(i, i) != 0) {
                add(report, "NONZERO_DIAGONAL", instance.matrix.ids[i],
                    "self-distance of id " + std::to_string(instance.matrix.ids[i]) +
                        " is nonzero");
            }
            for (std::size_t j = 0; j < dim; ++j) {
                if (instance.matrix.meters_at(i, j) < 0 ||
                    instance.matrix.seconds_at(i, j) < 0) {
                    add(report, "NEGATIVE_DISTANCE", std::nullopt,
                        "entry (" + std::to_string(i) + "," + std::to_string(j) +
                            ") is negative");
                }
            }
        }
    }
    return report;
}

}  // namespace bbss
