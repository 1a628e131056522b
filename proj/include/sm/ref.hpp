#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sm/backtest.hpp"
#include "sm/ingest.hpp"
#include "sm/market.hpp"
#include "sm/signals.hpp"
#include "sm/tickers.hpp"

// Plain-loop reference implementations. They share no scanning or indexing
// code with the main library: scoring walks raw characters, market math
// walks whole bar arrays, rankings use repeated selection. Tests compare
// the two sides; the benchmark times them. Not built into the CLI.
namespace sm::ref {

// Character-scan keyword scoring over normalized text.
int class_score(const std::string& text, const std::vector<std::string>& words,
                const std::vector<std::string>& negators);
int class_score_prox(const std::string& text, const std::string& symbol, bool require_dollar,
                     const std::vector<std::string>& words,
                     const std::vector<std::string>& negators);
int count_mentions(const std::string& text, const std::string& symbol, bool require_dollar);

// Serial twins of the parallel kernels; identical outputs expected.
std::vector<ingest::CleanPost> clean_lines_serial(const std::vector<std::string>& lines,
                                                  ingest::CleanStats* stats = nullptr);
std::vector<signals::PostSignal> scan_posts_serial(const std::vector<ingest::CleanPost>& posts,
                                                   const tickers::TickerUniverse& universe,
                                                   const signals::Lexicon& lexicon,
                                                   signals::Mode mode);
std::vector<backtest::EvalReport> evaluate_grid_serial(
    const std::vector<std::pair<std::string, std::vector<backtest::BuySignal>>>& sources,
    const market::PriceTable& prices, const std::vector<std::string>& conditions,
    const std::vector<int>& horizons);

// Brute-force market math.
std::optional<Date> effective_date(const market::PriceSeries& s, Date d);
std::optional<double> moving_average(const market::PriceSeries& s, Date d, int n);
std::optional<double> forward_return(const market::PriceSeries& s, Date signal_date, int horizon);
std::optional<double> total_change(const market::PriceSeries& s, Date start, Date end);
std::optional<double> median_3m_change(const market::PriceSeries& s, Date window_start,
                                       Date window_end, int horizon = 90);

// Consensus by literal 1.5x comparison.
signals::Verdict consensus_verdict(int buy_n, int sell_n, int min_posts = 1);

// Top set by repeated selection of the best remaining symbol.
backtest::TopSet top_performers(const market::PriceTable& prices, Date window_start,
                                Date window_end, double quantile);

} // namespace sm::ref
