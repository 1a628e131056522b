// Times the OpenMP kernels against their serial reference twins on a
// synthetic corpus and checks that both sides produce identical results.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sm/backtest.hpp"
#include "sm/ingest.hpp"
#include "sm/lexicon.hpp"
#include "sm/market.hpp"
#include "sm/parallel.hpp"
#include "sm/ref.hpp"
#include "sm/signals.hpp"
#include "sm/tickers.hpp"

namespace {

using sm::Date;

sm::tickers::TickerUniverse make_universe() {
    std::vector<sm::tickers::UniverseEntry> entries = {
        {"AAPL", "Apple", "Technology", false},
        {"ALL", "Allstate", "Financial Services", true},
        {"AMD", "Advanced Micro Devices", "Technology", false},
        {"AMZN", "Amazon", "Consumer Cyclical", false},
        {"BRK.B", "Berkshire Hathaway", "Financial Services", false},
        {"F", "Ford", "Consumer Cyclical", true},
        {"GME", "GameStop", "Consumer Cyclical", false},
        {"GOOG", "Alphabet", "Communication Services", false},
        {"MSFT", "Microsoft", "Technology", false},
        {"NFLX", "Netflix", "Communication Services", false},
        {"NVDA", "NVIDIA", "Technology", false},
        {"TSLA", "Tesla", "Consumer Cyclical", false},
    };
    return sm::tickers::TickerUniverse::from_entries(std::move(entries));
}

std::vector<std::string> make_lines(long n, std::mt19937& rng) {
    static const std::vector<std::string> kFiller = {
        "the",   "market", "today", "looking", "chart",  "earnings", "up",   "down",
        "really", "big",   "yolo",  "to",      "on",     "for",      "with", "moon",
        "premium", "theta", "open",  "close",  "volume", "still",    "after", "week",
    };
    static const std::vector<std::string> kSignalWords = {
        "buy", "call", "calls", "sell", "put", "puts", "hold", "not", "don't", "do",
    };
    static const std::vector<std::string> kMentions = {
        "AAPL", "$AAPL", "TSLA", "$TSLA", "MSFT", "GME", "$F", "$ALL", "BRKB", "NVDA", "amd",
    };
    static const std::vector<std::string> kFlairs = {
        "DD",   "Discussion", "YOLO", "News", "Daily Discussion", "Technical Analysis",
        "Meme", "Gain",       "Loss", "Shitpost", "Poll", "",
    };

    std::uniform_int_distribution<std::size_t> filler(0, kFiller.size() - 1);
    std::uniform_int_distribution<std::size_t> signal(0, kSignalWords.size() - 1);
    std::uniform_int_distribution<std::size_t> mention(0, kMentions.size() - 1);
    std::uniform_int_distribution<std::size_t> flair(0, kFlairs.size() - 1);
    std::uniform_int_distribution<int> words(18, 42);
    std::uniform_int_distribution<int> kind(0, 9);
    std::uniform_int_distribution<std::int64_t> when(1588291200, 1619827200); // 2020-05..2021-05

    std::vector<std::string> lines;
    lines.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        if (i % 97 == 96) { // occasional garbage line, as in real dumps
            lines.push_back("{\"id\": \"x\", truncated");
            continue;
        }
        std::string text;
        int len = words(rng);
        for (int w = 0; w < len; ++w) {
            if (!text.empty()) text += ' ';
            int k = kind(rng);
            if (k < 6)
                text += kFiller[filler(rng)];
            else if (k < 8)
                text += kSignalWords[signal(rng)];
            else
                text += kMentions[mention(rng)];
        }
        nlohmann::json obj;
        obj["id"] = "b" + std::to_string(i);
        obj["created_utc"] = when(rng);
        obj["title"] = text.substr(0, text.size() / 3);
        obj["selftext"] = text.substr(text.size() / 3);
        obj["link_flair_text"] = kFlairs[flair(rng)];
        obj["score"] = static_cast<int>(i % 500);
        if (i % 41 == 40) obj["removed_by_category"] = "moderator";
        lines.push_back(obj.dump());
    }
    return lines;
}

sm::market::PriceTable make_prices(const sm::tickers::TickerUniverse& universe,
                                   std::mt19937& rng) {
    sm::market::PriceTable table;
    std::uniform_real_distribution<double> step(-0.03, 0.032);
    for (const auto& entry : universe.entries()) {
        sm::market::PriceSeries s;
        s.symbol = entry.symbol;
        double price = 40.0 + 10.0 * static_cast<double>(s.symbol.size());
        Date d = Date::from_ymd(2020, 5, 1);
        for (int i = 0; i < 300; ++i) {
            while (d.weekday() >= 5) d = d.plus_days(1);
            price *= 1.0 + step(rng);
            sm::market::PriceBar bar;
            bar.date = d;
            bar.open = price * 0.995;
            bar.close = price;
            bar.low = price * 0.99;
            bar.high = price * 1.01;
            bar.volume = 1000 + i;
            s.bars.push_back(bar);
            d = d.plus_days(1);
        }
        table.emplace(s.symbol, std::move(s));
    }
    return table;
}

template <typename F>
double time_ms(int repeats, F&& fn) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-14s %10.1f ms %10.1f ms %8.2fx\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"signal-miner kernel benchmark"};
    long n_posts = 60000;
    int repeats = 3;
    app.add_option("--posts", n_posts, "synthetic submissions to generate")
        ->check(CLI::PositiveNumber);
    app.add_option("--repeats", repeats, "timing repetitions (best kept)")
        ->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    std::mt19937 rng(20210501);
    auto universe = make_universe();
    auto lines = make_lines(n_posts, rng);
    auto prices = make_prices(universe, rng);
    auto lexicon = sm::signals::Lexicon::defaults();

    std::printf("threads: %d, posts: %ld, repeats: %d\n\n", sm::thread_cap(), n_posts, repeats);
    std::printf("%-14s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    std::vector<sm::ingest::CleanPost> posts_serial, posts_parallel;
    double s = time_ms(repeats, [&] { posts_serial = sm::ref::clean_lines_serial(lines); });
    double p = time_ms(repeats, [&] { posts_parallel = sm::ingest::clean_lines(lines); });
    report("ingest-clean", s, p);
    if (posts_serial != posts_parallel) {
        std::fprintf(stderr, "mismatch: ingest-clean\n");
        return 1;
    }

    std::vector<sm::signals::PostSignal> sig_serial, sig_parallel;
    for (auto mode : {sm::signals::Mode::Default, sm::signals::Mode::Proximity}) {
        const char* name = mode == sm::signals::Mode::Default ? "scan-default" : "scan-prox";
        s = time_ms(repeats, [&] {
            sig_serial = sm::ref::scan_posts_serial(posts_serial, universe, lexicon, mode);
        });
        p = time_ms(repeats, [&] {
            sig_parallel = sm::signals::scan_posts(posts_parallel, universe, lexicon, mode);
        });
        report(name, s, p);
        if (sig_serial != sig_parallel) {
            std::fprintf(stderr, "mismatch: %s\n", name);
            return 1;
        }
    }

    // sig_* now holds the proximity scan; the grid input only needs volume.
    auto daily = sm::signals::aggregate_daily(sig_parallel);
    std::vector<std::pair<std::string, std::vector<sm::backtest::BuySignal>>> sources;
    sources.emplace_back("WSB", sm::backtest::signals_from_consensus(daily, "WSB"));
    std::vector<std::string> conditions = {"none", "ma30", "ma90"};
    std::vector<int> horizons = {7, 30, 90};

    std::vector<sm::backtest::EvalReport> grid_serial, grid_parallel;
    s = time_ms(repeats, [&] {
        grid_serial = sm::ref::evaluate_grid_serial(sources, prices, conditions, horizons);
    });
    p = time_ms(repeats, [&] {
        grid_parallel = sm::backtest::evaluate_grid(sources, prices, conditions, horizons);
    });
    report("metrics-grid", s, p);
    if (grid_serial != grid_parallel) {
        std::fprintf(stderr, "mismatch: metrics-grid\n");
        return 1;
    }

    std::printf("\nall kernels match the serial reference\n");
    return 0;
}
