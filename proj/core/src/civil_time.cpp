#include "bbss/civil_time.hpp"

#include <cstdio>

#include "bbss/errors.hpp"

namespace bbss {

namespace {

std::chrono::year_month_day to_ymd(const CivilTime& t) {
    return std::chrono::year{t.year} / t.month / t.day;
}

}  // namespace

bool CivilTime::valid() const {
    if (hour < 0 || hour > 23 || minute < 0 || minute > 59 || second < 0 || second > 59) {
        return false;
    }
    return to_ymd(*this).ok();
}

std::chrono::weekday CivilTime::weekday() const {
    return std::chrono::weekday{std::chrono::sys_days{to_ymd(*this)}};
}

bool CivilTime::is_weekend() const {
    const auto wd = weekday();
    return wd == std::chrono::Saturday || wd == std::chrono::Sunday;
}

CivilTime CivilTime::plus_days(int days) const {
    const std::chrono::year_month_day ymd{std::chrono::sys_days{to_ymd(*this)} +
                                          std::chrono::days{days}};
    CivilTime out = *this;
    out.year = static_cast<int>(ymd.year());
    out.month = static_cast<int>(static_cast<unsigned>(ymd.month()));
    out.day = static_cast<int>(static_cast<unsigned>(ymd.day()));
    return out;
}

std::string CivilTime::iso_string() const {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d %02d:%02d:%02d", year, month, day, hour,
                  minute, second);
    return buf;
}

std::string CivilTime::file_stamp() const {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d%02d%02d-%02d%02d%02d", year, month, day, hour, minute,
                  second);
    return buf;
}

std::string CivilTime::feed_string() const {
    // 12-hour clock: hour 0 prints as 12 AM, hour 12 as 12 PM.
    const bool pm = hour >= 12;
    int h12 = hour % 12;
    if (h12 == 0) h12 = 12;
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d %02d:%02d:%02d %s", year, month, day, h12,
                  minute, second, pm ? "PM" : "AM");
    return buf;
}

CivilTime CivilTime::from_feed(const std::string& text) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    char ampm[3] = {0, 0, 0};
    char trailing = 0;
    const int n = std::sscanf(text.c_str(), "%4d-%2d-%2d %2d:%2d:%2d %2[APM]%c", &y, &mo, &d, &h,
                              &mi, &s, ampm, &trailing);
    if (n != 7) {
        throw ParseError("executionTime not in 'YYYY-MM-DD hh:mm:ss AM/PM' form: '" + text + "'");
    }
    const std::string suffix(ampm);
    if (suffix != "AM" && suffix != "PM") {
        throw ParseError("executionTime meridiem must be AM or PM: '" + text + "'");
    }
    if (h < 1 || h > 12) {
        throw ParseError("executionTime hour out of 12-hour range: '" + text + "'");
    }
    CivilTime out;
    out.year = y;
    out.month = mo;
    out.day = d;
    // 12 AM -> 0, 12 PM -> 12, otherwise PM adds 12.
    if (h == 12) h = 0;
    out.hour = suffix == "PM" ? h + 12 : h;
    out.minute = mi;
    out.second = s;
    if (!out.valid()) {
        throw ParseError("executionTime is not a valid civil timestamp: '" + text + "'");
    }
    return out;
}

CivilTime CivilTime::from_file_stamp(const std::string& stem) {
    CivilTime out;
    char trailing = 0;
    const int n = std::sscanf(stem.c_str(), "%4d%2d%2d-%2d%2d%2d%c", &out.year, &out.month,
                              &out.day, &out.hour, &out.minute, &out.second, &trailing);
    if (n != 6 || !out.valid()) {
        throw ParseError("not a YYYYMMDD-HHMMSS stamp: '" + stem + "'");
    }
    return out;
}

}  // namespace bbss
