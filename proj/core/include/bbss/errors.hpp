#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bbss {

using StationId = std::int64_t;

/// Malformed input text (feed payload, instance file, cache line, ...).
/// The message names the offending field or line.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem trouble: unreadable store directory, unwritable output, ...
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Feed endpoint unreachable after the configured retries.
class PollError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The endpoint answered but the payload failed validation; the raw bytes
/// have already been quarantined when this is thrown from poll_once.
class PayloadError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A routing provider could not resolve a pair.
class MatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A station has zero usable weekday observations, so no profile exists.
class InsufficientDataError : public std::runtime_error {
public:
    InsufficientDataError(StationId id, const std::string& what)
        : std::runtime_error(what), station_id(id) {}
    StationId station_id;
};

/// Instance assembly failed (pool exhaustion, missing depot, ...).
class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// write_instance refused an instance that violates its invariants.
class SerializationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bbss
