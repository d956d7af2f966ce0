#pragma once

#include <cstdint>
#include <filesystem>
#include <iterator>
#include <string>
#include <vector>

#include "bbss/feed.hpp"

namespace bbss {

/// On-disk snapshot archive. One file per distinct executionTime, named
/// <root>/YYYYMMDD-HHMMSS.json; rejected payloads land verbatim under
/// <root>/quarantine/<poll-wallclock>.bad.
class SnapshotStore {
public:
    explicit SnapshotStore(std::filesystem::path root);

    const std::filesystem::path& root() const { return root_; }

    std::filesystem::path path_for(const CivilTime& taken_at) const;
    bool contains(const CivilTime& taken_at) const;

    /// Writes the raw payload bytes under the snapshot's timestamp.
    /// Returns false (and leaves the store untouched) when that timestamp
    /// is already present.
    bool store_raw(const std::string& payload, const CivilTime& taken_at) const;

    /// Preserves an unparseable payload for later inspection.
    std::filesystem::path quarantine(const std::string& payload,
                                     const std::string& wallclock_tag) const;

    /// Snapshot files sorted by timestamp stem (quarantine excluded).
    std::vector<std::filesystem::path> list_files() const;

private:
    std::filesystem::path root_;
};

struct CollectorConfig {
    std::string endpoint;     // e.g. http://host:port/stations/json
    int interval_s = 600;
    SnapshotStore store;
    int max_retries = 3;
};

enum class PollResult { stored, skipped_duplicate };

/// Fetches one payload, validates it with parse_snapshot and archives the
/// raw bytes. Duplicate detection keys on executionTime, not on the poll
/// wall-clock, because the feed may serve a cached payload.
PollResult poll_once(const CollectorConfig& config);

/// Number of polls over a duration with one poll at time zero:
/// floor(duration / interval) + 1.
std::int64_t schedule_ticks(std::int64_t duration_s, std::int64_t interval_s);

/// Lazily parsed view over a stored corpus, ascending in taken_at.
/// Iteration re-reads from disk, so the whole corpus never needs to be
/// resident at once; iterate as many times as needed.
class Corpus {
public:
    class iterator {
    public:
        using value_type = Snapshot;
        using difference_type = std::ptrdiff_t;
        using iterator_concept = std::input_iterator_tag;
        using iterator_category = std::input_iterator_tag;

        iterator() = default;
        iterator(const std::vector<std::filesystem::path>* files, std::size_t index);

        const Snapshot& operator*() const { return current_; }
        const Snapshot* operator->() const { return &current_; }
        iterator& operator++();
        void operator++(int) { ++*this; }

        friend bool operator==(const iterator& a, std::default_sentinel_t) {
            return a.files_ == nullptr || a.index_ >= a.files_->size();
        }

    private:
        void load();

        const std::vector<std::filesystem::path>* files_ = nullptr;
        std::size_t index_ = 0;
        Snapshot current_;
    };

    explicit Corpus(std::vector<std::filesystem::path> files) : files_(std::move(files)) {}

    iterator begin() const { return iterator{&files_, 0}; }
    std::default_sentinel_t end() const { return {}; }
    std::size_t size() const { return files_.size(); }
    bool empty() const { return files_.empty(); }

private:
    std::vector<std::filesystem::path> files_;
};

static_assert(SnapshotRange<Corpus>);
static_assert(SnapshotRange<std::vector<Snapshot>>);

/// Opens a stored corpus for streaming. Throws IoError when the root
/// directory is missing or unreadable.
Corpus load_corpus(const SnapshotStore& store);

}  // namespace bbss
