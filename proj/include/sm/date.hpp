#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace sm {

// UTC calendar date stored as days since the Unix epoch.
class Date {
public:
    Date() = default;

    static Date from_ymd(int year, unsigned month, unsigned day);

    // Parses "YYYY-MM-DD". Rejects impossible dates (2021-02-30).
    static std::optional<Date> parse(std::string_view iso);

    // Truncates a UTC timestamp to its calendar day.
    static Date from_epoch_seconds(std::int64_t seconds);

    std::string to_string() const; // YYYY-MM-DD

    // 0 = Monday .. 6 = Sunday.
    int weekday() const;

    Date plus_days(int n) const { return Date(days_ + n); }
    int operator-(Date other) const { return days_ - other.days_; }

    std::int32_t days_since_epoch() const { return days_; }

    auto operator<=>(const Date&) const = default;

private:
    explicit Date(std::int32_t days) : days_(days) {}
    std::int32_t days_ = 0;
};

} // namespace sm
