#include "sm/backtest.hpp"

#include <algorithm>
#include <cmath>

#include "sm/errors.hpp"
#include "sm/parallel.hpp"

namespace sm::backtest {

namespace {

void sort_signals(std::vector<BuySignal>& signals) {
    std::sort(signals.begin(), signals.end(), [](const BuySignal& a, const BuySignal& b) {
        if (a.symbol != b.symbol) return a.symbol < b.symbol;
        return a.date < b.date;
    });
}

// Descending by metric, ascending by symbol on ties.
std::vector<std::string> top_by(const std::vector<std::pair<std::string, double>>& metric,
                                std::size_t k) {
    std::vector<std::pair<std::string, double>> ranked = metric;
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (ranked.size() > k) ranked.resize(k);
    std::vector<std::string> out;
    out.reserve(ranked.size());
    for (const auto& [symbol, value] : ranked) out.push_back(symbol);
    return out;
}

} // namespace

std::vector<BuySignal> signals_from_consensus(const std::vector<signals::DailyConsensus>& daily,
                                              const std::string& source) {
    std::vector<BuySignal> out;
    for (const auto& d : daily)
        if (d.consensus == signals::Verdict::Buy) out.push_back({source, d.symbol, d.date});
    sort_signals(out);
    return out;
}

std::vector<BuySignal> signals_from_recs(const std::vector<analysts::AnalystRec>& recs,
                                         const std::string& firm) {
    std::vector<BuySignal> out;
    for (const auto& rec : recs)
        if (rec.firm == firm && rec.verdict == analysts::Rating::Buy)
            out.push_back({firm, rec.symbol, rec.date});
    sort_signals(out);
    return out;
}

std::vector<BuySignal> apply_ma_condition(const std::vector<BuySignal>& signals,
                                          const market::PriceTable& prices, int n) {
    std::vector<BuySignal> out;
    for (const BuySignal& sig : signals) {
        auto found = prices.find(sig.symbol);
        if (found == prices.end()) continue;
        const market::PriceSeries& series = found->second;
        auto eff = series.effective_date(sig.date);
        if (!eff) continue;
        auto ma = market::moving_average(series, *eff, n);
        if (!ma) continue;
        if (*series.close_at(*eff) < *ma) out.push_back(sig);
    }
    return out;
}

EvalReport evaluate(const std::vector<BuySignal>& signals, const market::PriceTable& prices,
                    int horizon, const std::string& source, const std::string& condition) {
    EvalReport report;
    report.source = source;
    report.condition = condition;
    report.horizon = horizon;
    report.n_signals = static_cast<long>(signals.size());

    long positive = 0;
    double sum = 0;
    for (const BuySignal& sig : signals) {
        auto found = prices.find(sig.symbol);
        if (found == prices.end()) continue;
        auto ret = market::forward_return(found->second, sig.date, horizon);
        if (!ret) continue;
        ++report.n_evaluable;
        if (*ret > 0) ++positive;
        sum += *ret;
    }
    if (report.n_evaluable > 0) {
        report.accuracy = static_cast<double>(positive) / static_cast<double>(report.n_evaluable);
        report.mean_return = sum / static_cast<double>(report.n_evaluable);
    }
    return report;
}

std::vector<EvalReport> evaluate_grid(
    const std::vector<std::pair<std::string, std::vector<BuySignal>>>& sources,
    const market::PriceTable& prices, const std::vector<std::string>& conditions,
    const std::vector<int>& horizons) {
    const std::size_t S = sources.size(), C = conditions.size(), H = horizons.size();

    std::vector<std::vector<const std::vector<BuySignal>*>> filtered(S);
    std::vector<std::vector<BuySignal>> owned; // storage for condition subsets
    owned.reserve(S * C);
    for (std::size_t s = 0; s < S; ++s) {
        filtered[s].resize(C);
        for (std::size_t c = 0; c < C; ++c) {
            if (conditions[c] == "none") {
                filtered[s][c] = &sources[s].second;
                continue;
            }
            if (conditions[c].size() <= 2 || conditions[c].compare(0, 2, "ma") != 0)
                throw UsageError("unknown condition '" + conditions[c] + "'");
            int n = std::atoi(conditions[c].c_str() + 2);
            if (n <= 0) throw UsageError("unknown condition '" + conditions[c] + "'");
            owned.push_back(apply_ma_condition(sources[s].second, prices, n));
            filtered[s][c] = &owned.back();
        }
    }

    const std::int64_t total = static_cast<std::int64_t>(S * C * H);
    std::vector<EvalReport> cells(S * C * H);
#pragma omp parallel for schedule(static) num_threads(thread_cap())
    for (std::int64_t idx = 0; idx < total; ++idx) {
        std::size_t s = static_cast<std::size_t>(idx) / (C * H);
        std::size_t c = (static_cast<std::size_t>(idx) / H) % C;
        std::size_t h = static_cast<std::size_t>(idx) % H;
        cells[idx] = evaluate(*filtered[s][c], prices, horizons[h], sources[s].first,
                              conditions[c]);
    }
    return cells;
}

TopSet top_performers(const market::PriceTable& prices, Date window_start, Date window_end,
                      double quantile) {
    TopSet top;
    top.window_start = window_start;
    top.window_end = window_end;

    std::vector<std::pair<std::string, double>> by_change;
    std::vector<std::pair<std::string, double>> by_median;
    for (const auto& [symbol, series] : prices) {
        auto change = market::total_change(series, window_start, window_end);
        auto median = market::median_3m_change(series, window_start, window_end);
        if (!change || !median) continue; // needs both metrics to be ranked
        by_change.emplace_back(symbol, *change);
        by_median.emplace_back(symbol, *median);
    }
    top.eligible = static_cast<long>(by_change.size());
    if (by_change.empty()) return top;

    std::size_t k = static_cast<std::size_t>(
        std::ceil(quantile * static_cast<double>(by_change.size())));
    k = std::min(k, by_change.size());

    std::vector<std::string> best_change = top_by(by_change, k);
    std::vector<std::string> best_median = top_by(by_median, k);
    top.symbols.insert(best_change.begin(), best_change.end());
    top.symbols.insert(best_median.begin(), best_median.end());

    auto value_of = [](const std::vector<std::pair<std::string, double>>& metric,
                       const std::string& symbol) {
        for (const auto& [s, v] : metric)
            if (s == symbol) return v;
        return 0.0;
    };
    if (!best_change.empty()) top.total_change_cutoff = value_of(by_change, best_change.back());
    if (!best_median.empty()) top.median_3m_cutoff = value_of(by_median, best_median.back());
    return top;
}

DetectionRow detection_rate(const std::vector<BuySignal>& signals, const TopSet& top,
                            const std::string& source) {
    std::set<std::string> recommended;
    for (const BuySignal& sig : signals) recommended.insert(sig.symbol);

    DetectionRow row;
    row.source = source;
    row.unique_recommended = static_cast<long>(recommended.size());
    for (const std::string& symbol : recommended)
        if (top.symbols.count(symbol)) ++row.detected;
    return row;
}

std::map<std::string, long> portfolio_sectors(const std::vector<BuySignal>& signals,
                                              const tickers::TickerUniverse& universe,
                                              std::size_t k) {
    std::map<std::string, long> counts;
    for (const BuySignal& sig : signals) ++counts[sig.symbol];

    std::vector<std::pair<std::string, long>> ranked(counts.begin(), counts.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (ranked.size() > k) ranked.resize(k);

    std::map<std::string, long> sectors;
    for (const auto& [symbol, count] : ranked)
        ++sectors[std::string(universe.sector_of(symbol))];
    return sectors;
}

bool Period::contains(Date d) const {
    if (lower && d < *lower) return false;
    if (upper && d >= *upper) return false;
    return true;
}

std::vector<Period> make_periods(std::vector<Date> boundaries) {
    std::sort(boundaries.begin(), boundaries.end());
    boundaries.erase(std::unique(boundaries.begin(), boundaries.end()), boundaries.end());

    std::vector<Period> periods;
    if (boundaries.empty()) return periods;
    periods.push_back({".." + boundaries.front().to_string(), std::nullopt, boundaries.front()});
    for (std::size_t i = 1; i < boundaries.size(); ++i)
        periods.push_back({boundaries[i - 1].to_string() + ".." + boundaries[i].to_string(),
                           boundaries[i - 1], boundaries[i]});
    periods.push_back({boundaries.back().to_string() + "..", boundaries.back(), std::nullopt});
    return periods;
}

std::vector<BuySignal> filter_period(const std::vector<BuySignal>& signals, const Period& p) {
    std::vector<BuySignal> out;
    for (const BuySignal& sig : signals)
        if (p.contains(sig.date)) out.push_back(sig);
    return out;
}

EvalReport baseline_return(const market::PriceTable& prices, Date lo, Date hi_exclusive,
                           int horizon, const std::string& label) {
    EvalReport report;
    report.source = label;
    report.condition = "none";
    report.horizon = horizon;

    long positive = 0;
    double sum = 0;
    for (const auto& [symbol, series] : prices) {
        for (std::size_t i = series.lower_bound(lo);
             i < series.bars.size() && series.bars[i].date < hi_exclusive; ++i) {
            ++report.n_signals;
            auto ret = market::forward_return(series, series.bars[i].date, horizon);
            if (!ret) continue;
            ++report.n_evaluable;
            if (*ret > 0) ++positive;
            sum += *ret;
        }
    }
    if (report.n_evaluable > 0) {
        report.accuracy = static_cast<double>(positive) / static_cast<double>(report.n_evaluable);
        report.mean_return = sum / static_cast<double>(report.n_evaluable);
    }
    return report;
}

} // namespace sm::backtest
