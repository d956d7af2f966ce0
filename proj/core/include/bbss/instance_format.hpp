#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bbss/instance.hpp"

namespace bbss {

struct Violation {
    std::string code;
    std::optional<StationId> station_id;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool is_valid() const { return violations.empty(); }
};

/// Serializes an instance to the line-based text format:
///
///   bbss 1
///   name <string-without-spaces>
///   stations <N>
///   vehicles <V>
///   timebudget <seconds>
///   vehiclecap <c_1> ... <c_V>
///   depot <depot_external_id>
///   station <external_id> <capacity> <current> <target>   (N lines)
///   matrix seconds                                        (N+1 rows follow)
///   matrix meters                                         (N+1 rows follow)
///   end
///
/// Row/column 0 of each matrix is the depot; row/column i >= 1 is the i-th
/// station line. Travel values exclude loading/unloading time (stated in
/// the emitted header comment). Throws SerializationError when the instance
/// violates its invariants. Equal instances serialize byte-identically.
std::string write_instance(const Instance& instance);

/// Inverse of write_instance on its image. '#' starts a comment, section
/// order is enforced, and errors carry the offending line number.
Instance parse_instance(const std::string& text);

/// Collects every invariant violation (bounds, matrix shape, diagonal,
/// depot exclusion, fleet sanity); never stops at the first.
ValidationReport validate_instance(const Instance& instance);

}  // namespace bbss
