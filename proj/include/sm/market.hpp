#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sm/date.hpp"

namespace sm::market {

struct PriceBar {
    Date date;
    double open = 0;
    double high = 0;
    double low = 0;
    double close = 0;
    long long volume = 0;

    bool operator==(const PriceBar&) const = default;
};

// One symbol's daily history, date-sorted and date-unique. Immutable after
// load; all derived quantities below are pure.
struct PriceSeries {
    std::string symbol;
    std::vector<PriceBar> bars;

    // Bar with exactly this date, or nullptr.
    const PriceBar* bar_at(Date d) const;

    // First index with bars[i].date >= d; bars.size() when past the end.
    std::size_t lower_bound(Date d) const;

    // First trading date on or after d; nullopt when d is past the series.
    std::optional<Date> effective_date(Date d) const;

    std::optional<double> close_at(Date d) const;
};

using PriceTable = std::map<std::string, PriceSeries>;

// CSV columns: symbol,date,open,high,low,close,volume. Rows may arrive in
// any order; bar invariants (positive prices, low <= min(open, close),
// high >= max(open, close)) and date uniqueness are fatal when violated.
PriceTable load_prices(const std::string& path);

// Mean close of the last n trading days at or before d. Undefined with
// fewer than n bars of history.
std::optional<double> moving_average(const PriceSeries& s, Date d, int n);

// Close-to-close percent change from effective_date(signal_date) to
// effective_date(signal_date + horizon_days). Undefined when either end has
// no trading day left in the series.
std::optional<double> forward_return(const PriceSeries& s, Date signal_date, int horizon_days);

// Percent of initial value: 100 * close(effective(end)) / close(effective(start)).
std::optional<double> total_change(const PriceSeries& s, Date start, Date end);

// Median of forward_return(d, horizon) over every bar date d in
// [window_start, window_end]; even counts average the two central values.
std::optional<double> median_3m_change(const PriceSeries& s, Date window_start, Date window_end,
                                       int horizon = 90);

} // namespace sm::market
