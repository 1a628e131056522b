#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sm/analysts.hpp"
#include "sm/date.hpp"
#include "sm/market.hpp"
#include "sm/signals.hpp"
#include "sm/tickers.hpp"

namespace sm::backtest {

// One buy recommendation to evaluate, from any source.
struct BuySignal {
    std::string source; // "WSB", "WSB-prox" or a firm name
    std::string symbol;
    Date date;

    bool operator==(const BuySignal&) const = default;
};

// Metrics for one (source, condition, horizon) cell. accuracy and
// mean_return are empty when no signal could be evaluated.
struct EvalReport {
    std::string source;
    std::string condition; // "none", "ma30" or "ma90"
    int horizon = 0;
    long n_signals = 0;   // after the condition filter
    long n_evaluable = 0; // with a defined forward return
    std::optional<double> accuracy;
    std::optional<double> mean_return;

    bool operator==(const EvalReport&) const = default;
};

// The best-performing symbols of a window: union of the top ceil(q*N) by
// total change and by median 3-month development.
struct TopSet {
    std::set<std::string> symbols;
    std::optional<double> total_change_cutoff; // smallest included value
    std::optional<double> median_3m_cutoff;
    long eligible = 0; // symbols with both ranking metrics defined
    Date window_start;
    Date window_end;
};

struct DetectionRow {
    std::string source;
    long unique_recommended = 0;
    long detected = 0;

    bool operator==(const DetectionRow&) const = default;
};

// One consensus-Buy day per signal, ascending by (symbol, date).
std::vector<BuySignal> signals_from_consensus(const std::vector<signals::DailyConsensus>& daily,
                                              const std::string& source);

// One Buy-verdict recommendation per signal for the firm, ascending by
// (symbol, date).
std::vector<BuySignal> signals_from_recs(const std::vector<analysts::AnalystRec>& recs,
                                         const std::string& firm);

// Keeps signals whose effective-date close sits strictly below the n-day
// moving average; undefined averages or missing prices drop the signal.
std::vector<BuySignal> apply_ma_condition(const std::vector<BuySignal>& signals,
                                          const market::PriceTable& prices, int n);

// Accuracy (fraction of evaluable signals with strictly positive forward
// return) and mean return over one horizon.
EvalReport evaluate(const std::vector<BuySignal>& signals, const market::PriceTable& prices,
                    int horizon, const std::string& source, const std::string& condition);

// Every (source, condition, horizon) cell, source-major then condition then
// horizon. Conditions: "none" or "ma<N>". Cells are independent and
// computed in parallel into a fixed layout.
std::vector<EvalReport> evaluate_grid(
    const std::vector<std::pair<std::string, std::vector<BuySignal>>>& sources,
    const market::PriceTable& prices, const std::vector<std::string>& conditions,
    const std::vector<int>& horizons);

// Top performers over a window. Symbols must have both metrics defined to
// be ranked; ties break alphabetically.
TopSet top_performers(const market::PriceTable& prices, Date window_start, Date window_end,
                      double quantile);

DetectionRow detection_rate(const std::vector<BuySignal>& signals, const TopSet& top,
                            const std::string& source);

// Sector tally of the k symbols with the most buy signals (ties
// alphabetical). Symbols without a sector count under "".
std::map<std::string, long> portfolio_sectors(const std::vector<BuySignal>& signals,
                                              const tickers::TickerUniverse& universe,
                                              std::size_t k = 50);

struct Period {
    std::string label;         // "..B", "A..B" or "A.."
    std::optional<Date> lower; // inclusive
    std::optional<Date> upper; // exclusive
    bool contains(Date d) const;
};

// Half-open periods cut at the boundary dates (sorted, deduplicated).
std::vector<Period> make_periods(std::vector<Date> boundaries);

std::vector<BuySignal> filter_period(const std::vector<BuySignal>& signals, const Period& p);

// Mean (and positive fraction) of forward_return over every (symbol, bar
// date) with lo <= date < hi, the all-stocks baseline.
EvalReport baseline_return(const market::PriceTable& prices, Date lo, Date hi_exclusive,
                           int horizon, const std::string& label);

} // namespace sm::backtest
