#pragma once

#include <chrono>
#include <compare>
#include <string>

namespace bbss {

/// Local wall-clock timestamp with second precision. The feed never names a
/// timezone and all comparisons stay within one city, so no zone handling.
struct CivilTime {
    int year = 0;
    int month = 1;  // 1..12
    int day = 1;    // 1..31
    int hour = 0;   // 0..23
    int minute = 0;
    int second = 0;

    auto operator<=>(const CivilTime&) const = default;

    bool valid() const;

    std::chrono::weekday weekday() const;
    bool is_weekend() const;

    int seconds_since_midnight() const { return hour * 3600 + minute * 60 + second; }

    /// YYYYMMDD as an integer, e.g. 20130904.
    int date_key() const { return year * 10000 + month * 100 + day; }

    /// Same calendar day, clock advanced by a whole number of days.
    CivilTime plus_days(int days) const;

    /// "YYYY-MM-DD HH:MM:SS"
    std::string iso_string() const;

    /// "YYYYMMDD-HHMMSS", the snapshot store file stem.
    std::string file_stamp() const;

    /// The feed's 12-hour form "YYYY-MM-DD hh:mm:ss AM/PM" (12 AM = hour 0).
    std::string feed_string() const;

    /// Parses the feed's 12-hour form; throws ParseError on any deviation.
    static CivilTime from_feed(const std::string& text);

    /// Parses "YYYYMMDD-HHMMSS"; throws ParseError.
    static CivilTime from_file_stamp(const std::string& stem);
};

}  // namespace bbss
