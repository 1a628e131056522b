#include "sm/market.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>

#include "sm/csv.hpp"
#include "sm/errors.hpp"

namespace sm::market {

namespace {

double parse_price(const std::string& field, const std::string& where) {
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(field.c_str(), &end);
    if (errno != 0 || end == field.c_str() || *end != '\0')
        throw DataError(where + ": bad price value '" + field + "'");
    return v;
}

long long parse_volume(const std::string& field, const std::string& where) {
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(field.c_str(), &end, 10);
    if (errno != 0 || end == field.c_str() || *end != '\0' || v < 0)
        throw DataError(where + ": bad volume value '" + field + "'");
    return v;
}

} // namespace

const PriceBar* PriceSeries::bar_at(Date d) const {
    std::size_t i = lower_bound(d);
    if (i < bars.size() && bars[i].date == d) return &bars[i];
    return nullptr;
}

std::size_t PriceSeries::lower_bound(Date d) const {
    auto it = std::lower_bound(bars.begin(), bars.end(), d,
                               [](const PriceBar& b, Date x) { return b.date < x; });
    return static_cast<std::size_t>(it - bars.begin());
}

std::optional<Date> PriceSeries::effective_date(Date d) const {
    std::size_t i = lower_bound(d);
    if (i == bars.size()) return std::nullopt;
    return bars[i].date;
}

std::optional<double> PriceSeries::close_at(Date d) const {
    const PriceBar* b = bar_at(d);
    if (!b) return std::nullopt;
    return b->close;
}

PriceTable load_prices(const std::string& path) {
    csv::Reader reader(path);
    if (reader.header() !=
        std::vector<std::string>{"symbol", "date", "open", "high", "low", "close", "volume"})
        throw DataError(path + ": expected header symbol,date,open,high,low,close,volume");

    PriceTable table;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        std::string where = path + ":" + std::to_string(reader.line_number());
        if (fields.size() != 7) throw DataError(where + ": expected 7 fields");
        if (fields[0].empty()) throw DataError(where + ": empty symbol");
        auto date = Date::parse(fields[1]);
        if (!date) throw DataError(where + ": bad date '" + fields[1] + "'");

        PriceBar bar;
        bar.date = *date;
        bar.open = parse_price(fields[2], where);
        bar.high = parse_price(fields[3], where);
        bar.low = parse_price(fields[4], where);
        bar.close = parse_price(fields[5], where);
        bar.volume = parse_volume(fields[6], where);
        if (bar.open <= 0 || bar.high <= 0 || bar.low <= 0 || bar.close <= 0)
            throw DataError(where + ": prices must be positive");
        if (bar.low > std::min(bar.open, bar.close) || bar.high < std::max(bar.open, bar.close))
            throw DataError(where + ": low/high do not bound open/close");

        PriceSeries& series = table[fields[0]];
        series.symbol = fields[0];
        series.bars.push_back(bar);
    }
    if (table.empty()) throw DataError(path + ": no price rows");

    for (auto& [symbol, series] : table) {
        std::sort(series.bars.begin(), series.bars.end(),
                  [](const PriceBar& a, const PriceBar& b) { return a.date < b.date; });
        for (std::size_t i = 1; i < series.bars.size(); ++i)
            if (series.bars[i].date == series.bars[i - 1].date)
                throw DataError(path + ": duplicate bar " + symbol + " " +
                                series.bars[i].date.to_string());
    }
    return table;
}

std::optional<double> moving_average(const PriceSeries& s, Date d, int n) {
    std::size_t i = s.lower_bound(d);
    if (i < s.bars.size() && s.bars[i].date == d) ++i;
    // i is now the count of bars at or before d.
    if (i < static_cast<std::size_t>(n)) return std::nullopt;
    double sum = 0;
    for (std::size_t j = i - static_cast<std::size_t>(n); j < i; ++j) sum += s.bars[j].close;
    return sum / n;
}

std::optional<double> forward_return(const PriceSeries& s, Date signal_date, int horizon_days) {
    auto e0 = s.effective_date(signal_date);
    auto e1 = s.effective_date(signal_date.plus_days(horizon_days));
    if (!e0 || !e1) return std::nullopt;
    double c0 = *s.close_at(*e0);
    double c1 = *s.close_at(*e1);
    return 100.0 * (c1 / c0 - 1.0);
}

std::optional<double> total_change(const PriceSeries& s, Date start, Date end) {
    auto e0 = s.effective_date(start);
    auto e1 = s.effective_date(end);
    if (!e0 || !e1) return std::nullopt;
    return 100.0 * *s.close_at(*e1) / *s.close_at(*e0);
}

std::optional<double> median_3m_change(const PriceSeries& s, Date window_start, Date window_end,
                                       int horizon) {
    std::vector<double> returns;
    for (std::size_t i = s.lower_bound(window_start);
         i < s.bars.size() && s.bars[i].date <= window_end; ++i) {
        if (auto r = forward_return(s, s.bars[i].date, horizon)) returns.push_back(*r);
    }
    if (returns.empty()) return std::nullopt;
    std::sort(returns.begin(), returns.end());
    std::size_t m = returns.size() / 2;
    if (returns.size() % 2 == 1) return returns[m];
    return (returns[m - 1] + returns[m]) / 2.0;
}

} // namespace sm::market
