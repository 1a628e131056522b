#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sm/analysts.hpp"
#include "sm/backtest.hpp"
#include "sm/config.hpp"
#include "sm/csv.hpp"
#include "sm/errors.hpp"
#include "sm/ingest.hpp"
#include "sm/lexicon.hpp"
#include "sm/market.hpp"
#include "sm/report.hpp"
#include "sm/signals.hpp"
#include "sm/tickers.hpp"

namespace fs = std::filesystem;
using sm::Date;
using sm::RunConfig;

namespace {

// One optional string per flag; set flags override config-file keys.
struct Overrides {
    std::optional<std::string> config, posts, cache, universe, prices, analysts, lexicon,
        ambiguous, firms, out, start, end, mode, min_posts, horizons, conditions, quantile,
        split, top_k, portfolio_k;
};

void add_common_options(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config, "key=value config file");
    cmd->add_option("--posts", o.posts, "submissions dump (JSON Lines)");
    cmd->add_option("--cache", o.cache, "clean-post cache file (JSON Lines)");
    cmd->add_option("--universe", o.universe, "ticker universe CSV");
    cmd->add_option("--prices", o.prices, "daily price history CSV");
    cmd->add_option("--analysts", o.analysts, "analyst recommendations CSV");
    cmd->add_option("--lexicon", o.lexicon, "keyword lexicon file");
    cmd->add_option("--ambiguous", o.ambiguous, "extra ambiguous tickers, one per line");
    cmd->add_option("--firms", o.firms, "firm allow-list, one per line");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--start", o.start, "study window start (YYYY-MM-DD)");
    cmd->add_option("--end", o.end, "study window end (YYYY-MM-DD, inclusive)");
    cmd->add_option("--mode", o.mode, "scoring mode: default | proximity");
    cmd->add_option("--min-posts", o.min_posts, "consensus support floor");
    cmd->add_option("--horizons", o.horizons, "forward-return horizons, days (comma list)");
    cmd->add_option("--conditions", o.conditions, "signal filters: none,ma30,ma90 (comma list)");
    cmd->add_option("--quantile", o.quantile, "top-performer quantile (0,1]");
    cmd->add_option("--split", o.split, "period boundaries (comma dates) or 'none'");
    cmd->add_option("--top-k", o.top_k, "number of firms to report");
    cmd->add_option("--portfolio-k", o.portfolio_k, "portfolio size per source");
}

RunConfig build_config(const Overrides& o) {
    RunConfig cfg = o.config ? sm::load_config(*o.config) : RunConfig{};
    auto set = [&cfg](const std::optional<std::string>& v, const char* key) {
        if (v) sm::apply_config_value(cfg, key, *v, std::string("--") + key);
    };
    set(o.posts, "posts");
    set(o.cache, "clean_cache");
    set(o.universe, "universe");
    set(o.prices, "prices");
    set(o.analysts, "analysts");
    set(o.lexicon, "lexicon");
    set(o.ambiguous, "ambiguous");
    set(o.firms, "firms");
    set(o.out, "out_dir");
    set(o.start, "start");
    set(o.end, "end");
    set(o.mode, "mode");
    set(o.min_posts, "min_posts");
    set(o.horizons, "horizons");
    set(o.conditions, "conditions");
    set(o.quantile, "quantile");
    set(o.split, "split");
    set(o.top_k, "top_k");
    set(o.portfolio_k, "portfolio_k");
    sm::validate(cfg);
    return cfg;
}

void require_key(const std::string& value, const char* what) {
    if (value.empty())
        throw sm::UsageError(std::string(what) + " required (flag or config key)");
}

void require_window(const RunConfig& cfg) {
    if (!cfg.window_start || !cfg.window_end)
        throw sm::UsageError("study window required (--start and --end)");
}

fs::path out_path(const RunConfig& cfg, const char* name) {
    fs::create_directories(cfg.out_dir);
    return fs::path(cfg.out_dir) / name;
}

sm::tickers::TickerUniverse load_universe(const RunConfig& cfg) {
    require_key(cfg.universe, "universe CSV");
    auto universe = sm::tickers::TickerUniverse::load(cfg.universe);
    if (!cfg.ambiguous.empty()) {
        long unknown = universe.apply_ambiguous_list(cfg.ambiguous);
        if (unknown > 0)
            std::cerr << "warning: " << unknown
                      << " ambiguous-list symbol(s) not in the universe\n";
    }
    return universe;
}

sm::signals::Lexicon load_lexicon(const RunConfig& cfg) {
    if (cfg.lexicon.empty()) return sm::signals::Lexicon::defaults();
    return sm::signals::Lexicon::load(cfg.lexicon);
}

// Cache when present, raw dump otherwise; clipped to the study window.
std::vector<sm::ingest::CleanPost> load_posts(const RunConfig& cfg) {
    std::vector<sm::ingest::CleanPost> posts;
    if (!cfg.clean_cache.empty() && fs::exists(cfg.clean_cache)) {
        posts = sm::ingest::read_clean_posts(cfg.clean_cache);
    } else {
        require_key(cfg.posts, "posts dump");
        posts = sm::ingest::clean_pipeline(cfg.posts);
    }
    if (cfg.window_start || cfg.window_end) {
        std::erase_if(posts, [&cfg](const sm::ingest::CleanPost& p) {
            if (cfg.window_start && p.date < *cfg.window_start) return true;
            if (cfg.window_end && p.date > *cfg.window_end) return true;
            return false;
        });
    }
    return posts;
}

std::set<std::string> load_firm_filter(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sm::DataError("cannot open firm list: " + path);
    std::set<std::string> firms;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line[0] != '#') firms.insert(line);
    }
    return firms;
}

std::vector<sm::analysts::AnalystRec> load_recs(const RunConfig& cfg,
                                                const sm::tickers::TickerUniverse* universe,
                                                sm::analysts::LoadStats* stats = nullptr) {
    require_key(cfg.analysts, "analyst recommendations CSV");
    std::optional<std::set<std::string>> firms;
    if (!cfg.firms.empty()) firms = load_firm_filter(cfg.firms);
    auto recs = sm::analysts::load_recs(cfg.analysts, firms ? &*firms : nullptr, stats);
    std::erase_if(recs, [&](const sm::analysts::AnalystRec& rec) {
        if (universe && !universe->contains(rec.symbol)) return true;
        if (cfg.window_start && rec.date < *cfg.window_start) return true;
        if (cfg.window_end && rec.date > *cfg.window_end) return true;
        return false;
    });
    return recs;
}

// "WSB", "WSB-prox", then the top firms: each source's buy signals.
std::vector<std::pair<std::string, std::vector<sm::backtest::BuySignal>>> collect_sources(
    const RunConfig& cfg, const std::vector<sm::ingest::CleanPost>& posts,
    const sm::tickers::TickerUniverse& universe, const sm::signals::Lexicon& lexicon,
    const std::vector<sm::analysts::AnalystRec>& recs) {
    namespace sig = sm::signals;
    std::vector<std::pair<std::string, std::vector<sm::backtest::BuySignal>>> sources;

    auto daily_def = sig::aggregate_daily(
        sig::scan_posts(posts, universe, lexicon, sig::Mode::Default), cfg.min_posts);
    auto daily_prox = sig::aggregate_daily(
        sig::scan_posts(posts, universe, lexicon, sig::Mode::Proximity), cfg.min_posts);
    sources.emplace_back("WSB", sm::backtest::signals_from_consensus(daily_def, "WSB"));
    sources.emplace_back("WSB-prox",
                         sm::backtest::signals_from_consensus(daily_prox, "WSB-prox"));

    for (const std::string& firm :
         sm::analysts::top_firms(recs, static_cast<std::size_t>(cfg.top_k)))
        sources.emplace_back(firm, sm::backtest::signals_from_recs(recs, firm));
    return sources;
}

int run_ingest(const RunConfig& cfg) {
    require_key(cfg.posts, "posts dump");
    require_key(cfg.clean_cache, "clean-post cache path");
    sm::ingest::CleanStats stats;
    auto posts = sm::ingest::clean_pipeline(cfg.posts, &stats);
    sm::ingest::write_clean_posts(cfg.clean_cache, posts);
    std::cout << "ingest: " << stats.read << " read, " << stats.retained << " retained ("
              << stats.malformed << " malformed, " << stats.invisible << " invisible, "
              << stats.reactive << " reactive, " << stats.unknown_flair << " unknown flair)\n";
    std::cout << "cache: " << cfg.clean_cache << "\n";
    return 0;
}

int run_signals(const RunConfig& cfg) {
    auto universe = load_universe(cfg);
    auto lexicon = load_lexicon(cfg);
    auto posts = load_posts(cfg);

    auto mode = cfg.mode == "proximity" ? sm::signals::Mode::Proximity
                                        : sm::signals::Mode::Default;
    auto signals = sm::signals::scan_posts(posts, universe, lexicon, mode);
    auto daily = sm::signals::aggregate_daily(signals, cfg.min_posts);

    long buys = 0, sells = 0;
    for (const auto& d : daily) {
        buys += d.consensus == sm::signals::Verdict::Buy;
        sells += d.consensus == sm::signals::Verdict::Sell;
    }
    fs::path out = out_path(cfg, "consensus.csv");
    sm::signals::write_consensus_csv(out.string(), daily);
    if (daily.empty()) std::cerr << "warning: no ticker mentions found\n";
    std::cout << "signals: " << posts.size() << " posts scanned, " << daily.size()
              << " symbol-days, " << buys << " buys, " << sells << " sells (mode: " << cfg.mode
              << ")\n";
    std::cout << "wrote: " << out.string() << "\n";
    return 0;
}

int run_analysts(const RunConfig& cfg) {
    sm::analysts::LoadStats stats;
    auto recs = load_recs(cfg, nullptr, &stats);

    fs::path recs_path = out_path(cfg, "analyst_recs.csv");
    std::ofstream out(recs_path);
    if (!out) throw sm::DataError("cannot write " + recs_path.string());
    out << "date,firm,symbol,label,verdict\n";
    for (const auto& rec : recs)
        out << rec.date.to_string() << ',' << sm::csv::escape_field(rec.firm) << ','
            << sm::csv::escape_field(rec.symbol) << ',' << sm::csv::escape_field(rec.raw_label)
            << ',' << sm::analysts::to_string(rec.verdict) << '\n';

    fs::path exc_path = out_path(cfg, "analyst_exceptions.csv");
    std::ofstream exc(exc_path);
    if (!exc) throw sm::DataError("cannot write " + exc_path.string());
    exc << "date,firm,symbol,label\n";
    for (const auto& rec : recs)
        if (rec.verdict == sm::analysts::Rating::Unknown)
            exc << rec.date.to_string() << ',' << sm::csv::escape_field(rec.firm) << ','
                << sm::csv::escape_field(rec.symbol) << ','
                << sm::csv::escape_field(rec.raw_label) << '\n';

    std::cout << "analysts: " << stats.rows_read << " rows, " << recs.size()
              << " recommendations (" << stats.buy << " buy, " << stats.hold << " hold, "
              << stats.sell << " sell, " << stats.unknown << " unknown), " << stats.malformed
              << " malformed, " << stats.duplicates << " duplicates\n";
    std::cout << "wrote: " << recs_path.string() << " " << exc_path.string() << "\n";
    return 0;
}

int run_backtest(const RunConfig& cfg) {
    require_window(cfg);
    require_key(cfg.prices, "prices CSV");
    auto universe = load_universe(cfg);
    auto lexicon = load_lexicon(cfg);
    auto posts = load_posts(cfg);
    auto prices = sm::market::load_prices(cfg.prices);
    auto recs = load_recs(cfg, &universe);
    auto sources = collect_sources(cfg, posts, universe, lexicon, recs);

    const Date start = *cfg.window_start;
    const Date end = *cfg.window_end;

    auto metrics = sm::backtest::evaluate_grid(sources, prices, cfg.conditions, cfg.horizons);
    auto top = sm::backtest::top_performers(prices, start, end, cfg.quantile);

    std::vector<sm::backtest::DetectionRow> detection;
    std::vector<std::pair<std::string, std::map<std::string, long>>> sectors;
    std::vector<std::pair<std::string, long>> portfolio_sizes;
    for (const auto& [source, signals] : sources) {
        detection.push_back(sm::backtest::detection_rate(signals, top, source));
        auto tally = sm::backtest::portfolio_sectors(signals, universe,
                                                     static_cast<std::size_t>(cfg.portfolio_k));
        std::set<std::string> distinct;
        for (const auto& sig : signals) distinct.insert(sig.symbol);
        portfolio_sizes.emplace_back(
            source, std::min<long>(static_cast<long>(distinct.size()), cfg.portfolio_k));
        sectors.emplace_back(source, std::move(tally));
    }

    std::set<std::string> columns;
    for (const auto& entry : universe.entries()) columns.insert(entry.sector);
    for (const auto& [source, tally] : sectors)
        for (const auto& [sector, count] : tally) columns.insert(sector);
    std::vector<std::string> sector_columns(columns.begin(), columns.end());

    std::vector<std::pair<std::string, sm::backtest::EvalReport>> period_rows;
    auto periods = sm::backtest::make_periods(cfg.split_dates);
    for (const auto& period : periods) {
        std::vector<std::pair<std::string, std::vector<sm::backtest::BuySignal>>> subset;
        for (const auto& [source, signals] : sources)
            subset.emplace_back(source, sm::backtest::filter_period(signals, period));
        for (auto& cell : sm::backtest::evaluate_grid(subset, prices, cfg.conditions,
                                                      cfg.horizons))
            period_rows.emplace_back(period.label, std::move(cell));

        Date lo = period.lower ? std::max(start, *period.lower) : start;
        Date hi = period.upper ? std::min(end.plus_days(1), *period.upper) : end.plus_days(1);
        for (int horizon : cfg.horizons)
            period_rows.emplace_back(
                period.label, sm::backtest::baseline_return(prices, lo, hi, horizon, "baseline"));
    }

    sm::report::write_metrics_csv(out_path(cfg, "metrics.csv").string(), metrics);
    sm::report::write_detection_csv(out_path(cfg, "detection.csv").string(), detection,
                                    top.symbols.size());
    sm::report::write_sectors_csv(out_path(cfg, "sectors.csv").string(), sector_columns, sectors);
    if (!period_rows.empty())
        sm::report::write_periods_csv(out_path(cfg, "periods.csv").string(), period_rows);

    sm::report::Summary summary;
    summary.window_start = start;
    summary.window_end = end;
    summary.horizons = cfg.horizons;
    summary.conditions = cfg.conditions;
    summary.min_posts = cfg.min_posts;
    summary.quantile = cfg.quantile;
    summary.portfolio_k = static_cast<std::size_t>(cfg.portfolio_k);
    summary.metrics = metrics;
    summary.detection = detection;
    summary.top = top;
    summary.ranked_symbols = static_cast<std::size_t>(top.eligible);
    summary.sector_columns = sector_columns;
    summary.sectors = sectors;
    summary.portfolio_sizes = portfolio_sizes;
    summary.periods = period_rows;
    sm::report::write_summary_md(out_path(cfg, "summary.md").string(), summary);

    std::cout << "backtest: " << sources.size() << " sources, " << metrics.size()
              << " metric cells, top set " << top.symbols.size() << " of " << top.eligible
              << "\n";
    std::cout << "wrote: " << (fs::path(cfg.out_dir) / "metrics.csv").string() << " "
              << (fs::path(cfg.out_dir) / "detection.csv").string() << " "
              << (fs::path(cfg.out_dir) / "sectors.csv").string();
    if (!period_rows.empty())
        std::cout << " " << (fs::path(cfg.out_dir) / "periods.csv").string();
    std::cout << " " << (fs::path(cfg.out_dir) / "summary.md").string() << "\n";
    return 0;
}

int run_top_stocks(const RunConfig& cfg) {
    require_window(cfg);
    require_key(cfg.prices, "prices CSV");
    auto prices = sm::market::load_prices(cfg.prices);
    const Date start = *cfg.window_start;
    const Date end = *cfg.window_end;
    auto top = sm::backtest::top_performers(prices, start, end, cfg.quantile);

    fs::path out = out_path(cfg, "top_stocks.csv");
    std::ofstream file(out);
    if (!file) throw sm::DataError("cannot write " + out.string());
    file << "symbol,total_change,median_3m_change,selected\n";
    for (const auto& [symbol, series] : prices) {
        auto change = sm::market::total_change(series, start, end);
        auto median = sm::market::median_3m_change(series, start, end);
        if (!change || !median) continue;
        file << sm::csv::escape_field(symbol) << ',' << sm::report::fmt3(*change) << ','
             << sm::report::fmt3(*median) << ',' << (top.symbols.count(symbol) ? 1 : 0) << '\n';
    }

    std::cout << "top stocks: " << top.symbols.size() << " of " << top.eligible
              << " eligible (total-change cutoff "
              << sm::report::fmt3_opt(top.total_change_cutoff) << ", median-3m cutoff "
              << sm::report::fmt3_opt(top.median_3m_cutoff) << ")\n";
    std::cout << "wrote: " << out.string() << "\n";
    return 0;
}

int run_portfolio(const RunConfig& cfg) {
    auto universe = load_universe(cfg);
    auto lexicon = load_lexicon(cfg);
    auto posts = load_posts(cfg);
    auto recs = load_recs(cfg, &universe);
    auto sources = collect_sources(cfg, posts, universe, lexicon, recs);

    std::vector<std::pair<std::string, std::map<std::string, long>>> sectors;
    for (const auto& [source, signals] : sources)
        sectors.emplace_back(source,
                             sm::backtest::portfolio_sectors(
                                 signals, universe, static_cast<std::size_t>(cfg.portfolio_k)));

    std::set<std::string> columns;
    for (const auto& entry : universe.entries()) columns.insert(entry.sector);
    for (const auto& [source, tally] : sectors)
        for (const auto& [sector, count] : tally) columns.insert(sector);

    fs::path out = out_path(cfg, "sectors.csv");
    sm::report::write_sectors_csv(out.string(),
                                  std::vector<std::string>(columns.begin(), columns.end()),
                                  sectors);
    std::cout << "portfolio: " << sources.size() << " sources, k=" << cfg.portfolio_k << "\n";
    std::cout << "wrote: " << out.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mines buy/hold/sell signals from social-media posts and analyst "
                 "recommendations, and backtests them against price history."};
    app.require_subcommand(1);

    Overrides o;
    CLI::App* ingest = app.add_subcommand("ingest", "clean a submissions dump into a cache");
    CLI::App* signals = app.add_subcommand("signals", "daily per-ticker consensus CSV");
    CLI::App* analysts = app.add_subcommand("analysts", "standardize analyst recommendations");
    CLI::App* backtest = app.add_subcommand("backtest", "full evaluation report bundle");
    CLI::App* top_stocks = app.add_subcommand("top-stocks", "best performers over the window");
    CLI::App* portfolio = app.add_subcommand("portfolio", "sector mix of each source's picks");
    for (CLI::App* cmd : {ingest, signals, analysts, backtest, top_stocks, portfolio})
        add_common_options(cmd, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // help/version exit clean, parse errors are usage errors
    }

    try {
        RunConfig cfg = build_config(o);
        if (app.got_subcommand(ingest)) return run_ingest(cfg);
        if (app.got_subcommand(signals)) return run_signals(cfg);
        if (app.got_subcommand(analysts)) return run_analysts(cfg);
        if (app.got_subcommand(backtest)) return run_backtest(cfg);
        if (app.got_subcommand(top_stocks)) return run_top_stocks(cfg);
        if (app.got_subcommand(portfolio)) return run_portfolio(cfg);
        throw sm::UsageError("no subcommand selected");
    } catch (const sm::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const sm::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
