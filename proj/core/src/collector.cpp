#include "bbss/collector.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "httplib.h"

namespace bbss {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << bytes;
    if (!out) {
        throw IoError("short write to " + path.string());
    }
}

// Splits "http://host:port/some/path" into the client base and request path.
std::pair<std::string, std::string> split_endpoint(const std::string& url) {
    const auto scheme_end = url.find("://");
    const auto path_start =
        scheme_end == std::string::npos ? url.find('/') : url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        return {url, "/"};
    }
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::string now_wallclock_tag() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    localtime_r(&tt, &tm);
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d%02d%02d-%02d%02d%02d", tm.tm_year + 1900, tm.tm_mon + 1,
                  tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

}  // namespace

SnapshotStore::SnapshotStore(fs::path root) : root_(std::move(root)) {}

fs::path SnapshotStore::path_for(const CivilTime& taken_at) const {
    return root_ / (taken_at.file_stamp() + ".json");
}

bool SnapshotStore::contains(const CivilTime& taken_at) const {
    return fs::exists(path_for(taken_at));
}

bool SnapshotStore::store_raw(const std::string& payload, const CivilTime& taken_at) const {
    fs::create_directories(root_);
    const fs::path target = path_for(taken_at);
    if (fs::exists(target)) {
        return false;
    }
    write_file(target, payload);
    return true;
}

fs::path SnapshotStore::quarantine(const std::string& payload,
                                   const std::string& wallclock_tag) const {
    const fs::path dir = root_ / "quarantine";
    fs::create_directories(dir);
    fs::path target = dir / (wallclock_tag + ".bad");
    for (int n = 1; fs::exists(target); ++n) {
        target = dir / (wallclock_tag + "-" + std::to_string(n) + ".bad");
    }
    write_file(target, payload);
    return target;
}

std::vector<fs::path> SnapshotStore::list_files() const {
    if (!fs::is_directory(root_)) {
        throw IoError("snapshot store root is not a readable directory: " + root_.string());
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(root_)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".json") {
            continue;
        }
        files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
    return files;
}

PollResult poll_once(const CollectorConfig& config) {
    const auto [base, path] = split_endpoint(config.endpoint);
    std::string body;
    std::string last_error = "no attempt made";
    bool fetched = false;
    for (int attempt = 0; attempt <= config.max_retries && !fetched; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(100 * attempt));
        }
        httplib::Client client(base);
        client.set_connection_timeout(5, 0);
        client.set_read_timeout(10, 0);
        auto res = client.Get(path);
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status != 200) {
            last_error = "HTTP status " + std::to_string(res->status);
            continue;
        }
        body = res->body;
        fetched = true;
    }
    if (!fetched) {
        throw PollError("poll of " + config.endpoint + " failed after " +
                        std::to_string(config.max_retries) + " retries (" + last_error + ")");
    }

    Snapshot snap;
    try {
        snap = parse_snapshot(body);
    } catch (const ParseError& e) {
        const fs::path bad = config.store.quarantine(body, now_wallclock_tag());
        throw PayloadError("payload failed validation (" + std::string(e.what()) +
                           "); quarantined at " + bad.string());
    }
    return config.store.store_raw(body, snap.taken_at) ? PollResult::stored
                                                       : PollResult::skipped_duplicate;
}

std::int64_t schedule_ticks(std::int64_t duration_s, std::int64_t interval_s) {
    if (interval_s <= 0) {
        throw std::invalid_argument("poll interval must be positive");
    }
    if (duration_s < 0) {
        throw std::invalid_argument("duration must be nonnegative");
    }
    return duration_s / interval_s + 1;
}

Corpus::iterator::iterator(const std::vector<fs::path>* files, std::size_t index)
    : files_(files), index_(index) {
    if (files_ && index_ < files_->size()) {
        load();
    }
}

Corpus::iterator& Corpus::iterator::operator++() {
    ++index_;
    if (index_ < files_->size()) {
        load();
    }
    return *this;
}

void Corpus::iterator::load() {
    const fs::path& file = (*files_)[index_];
    try {
        current_ = parse_snapshot(read_file(file));
    } catch (const ParseError& e) {
        throw ParseError(file.string() + ": " + e.what());
    }
    if (current_.taken_at.file_stamp() != file.stem().string()) {
        std::cerr << "warning: " << file.string() << " is named for "
                  << file.stem().string() << " but its executionTime is "
                  << current_.taken_at.iso_string() << "\n";
    }
}

Corpus load_corpus(const SnapshotStore& store) {
    return Corpus{store.list_files()};
}

}  // namespace bbss
