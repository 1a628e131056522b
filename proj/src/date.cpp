#include "sm/date.hpp"

#include <cstdio>

namespace sm {

namespace {

using days_t = std::chrono::days;
using sys_days = std::chrono::sys_days;

sys_days to_sys_days(std::int32_t d) { return sys_days{days_t{d}}; }

} // namespace

Date Date::from_ymd(int year, unsigned month, unsigned day) {
    std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                    std::chrono::day{day}};
    return Date(static_cast<std::int32_t>(sys_days{ymd}.time_since_epoch().count()));
}

std::optional<Date> Date::parse(std::string_view iso) {
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') return std::nullopt;
    auto digits = [&](std::size_t off, std::size_t len, int& out) {
        out = 0;
        for (std::size_t i = off; i < off + len; ++i) {
            char c = iso[i];
            if (c < '0' || c > '9') return false;
            out = out * 10 + (c - '0');
        }
        return true;
    };
    int y = 0, m = 0, d = 0;
    if (!digits(0, 4, y) || !digits(5, 2, m) || !digits(8, 2, d)) return std::nullopt;
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                    std::chrono::day{unsigned(d)}};
    if (!ymd.ok()) return std::nullopt;
    return Date::from_ymd(y, unsigned(m), unsigned(d));
}

Date Date::from_epoch_seconds(std::int64_t seconds) {
    std::int64_t days = seconds / 86400;
    if (seconds < 0 && seconds % 86400 != 0) --days; // floor toward past
    return Date(static_cast<std::int32_t>(days));
}

std::string Date::to_string() const {
    std::chrono::year_month_day ymd{to_sys_days(days_)};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()));
    return buf;
}

int Date::weekday() const {
    std::chrono::weekday wd{to_sys_days(days_)};
    return int(wd.iso_encoding()) - 1; // iso: 1=Mon..7=Sun
}

} // namespace sm
