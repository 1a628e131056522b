#include <doctest.h>

#include "sm/errors.hpp"
#include "sm/ref.hpp"
#include "sm/signals.hpp"
#include "sm/text.hpp"
#include "support.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

using namespace sm::signals;
using sm::Date;

namespace {

const Lexicon& lex() {
    static Lexicon lexicon = Lexicon::defaults();
    return lexicon;
}

int buy_score(const std::string& raw) {
    return class_score(sm::text::normalize(raw), Verdict::Buy, lex());
}

int prox(const std::string& raw, const std::string& symbol, Verdict cls,
         bool require_dollar = false) {
    return class_score_prox(sm::text::normalize(raw), symbol, cls, lex(), require_dollar);
}

sm::ingest::CleanPost make_post(const std::string& id, Date date, const std::string& raw) {
    sm::ingest::CleanPost post;
    post.id = id;
    post.date = date;
    post.text = sm::text::normalize(raw);
    post.flair = "DD";
    return post;
}

PostSignal make_signal(const std::string& symbol, Date date, Verdict v, int mentions = 1) {
    PostSignal sig;
    sig.post_id = "p";
    sig.symbol = symbol;
    sig.date = date;
    sig.verdict = v;
    sig.mentions = mentions;
    return sig;
}

} // namespace

TEST_CASE("class_score counts keyword occurrences per class") {
    CHECK(buy_score("buy buy buy") == 3);
    CHECK(buy_score("BUY Calls!") == 2);             // case-insensitive, both words
    CHECK(buy_score("call calls called") == 2);      // exact tokens only
    CHECK(buy_score("nothing relevant") == 0);
    CHECK(buy_score("") == 0);
    CHECK(class_score("sell puts or hold", Verdict::Sell, lex()) == 2);
    CHECK(class_score("sell puts or hold", Verdict::Hold, lex()) == 1);
    CHECK(class_score("buyer buying rebuy", Verdict::Buy, lex()) == 0);
}

TEST_CASE("class_score drops negated occurrences") {
    CHECK(buy_score("don't buy") == 0);
    CHECK(buy_score("do not buy") == 0);
    CHECK(buy_score("not buy") == 0);
    CHECK(buy_score("Don't BUY") == 0);
    CHECK(buy_score("don't buy but buy") == 1);      // second occurrence stands
    CHECK(class_score(sm::text::normalize("do not sell, hold"), Verdict::Sell, lex()) == 0);
    CHECK(class_score(sm::text::normalize("do not sell, hold"), Verdict::Hold, lex()) == 1);
    // The negator must end right before the class word.
    CHECK(buy_score("don't ever buy") == 1);
    CHECK(buy_score("do not worry just buy") == 1);
    // "do not call": both "do not" and "not" end at the preceding token.
    CHECK(class_score("do not call", Verdict::Buy, lex()) == 0);
}

TEST_CASE("negation applies per occurrence, never globally") {
    CHECK(buy_score("buy don't buy buy") == 2);
    CHECK(class_score("don't sell sell", Verdict::Sell, lex()) == 1);
}

TEST_CASE("class_score matches the character-scan reference") {
    const char* samples[] = {
        "buy buy buy",          "don't buy but buy",   "do not sell, hold",
        "BUY Calls!",           "puts and calls",      "hold the line",
        "don't call the top",   "not buy not sell",    "",
        "buy sell hold put call not don't do",
    };
    for (const char* raw : samples) {
        std::string text = sm::text::normalize(raw);
        for (Verdict cls : {Verdict::Buy, Verdict::Hold, Verdict::Sell}) {
            const auto& words = cls == Verdict::Buy    ? lex().buy_words
                                : cls == Verdict::Hold ? lex().hold_words
                                                       : lex().sell_words;
            CHECK(class_score(text, cls, lex()) ==
                  sm::ref::class_score(text, words, lex().negators));
        }
    }
}

TEST_CASE("class_score_prox needs a mention within the window") {
    CHECK(prox("buy $TSLA", "TSLA", Verdict::Buy) == 1);
    CHECK(prox("$TSLA buy", "TSLA", Verdict::Buy) == 1);
    CHECK(prox("buy now", "TSLA", Verdict::Buy) == 0);           // no mention at all
    CHECK(prox("TSLA buy", "TSLA", Verdict::Buy) == 1);          // plain mention counts
    CHECK(prox("tsla buy", "TSLA", Verdict::Buy) == 0);          // mention is case-sensitive
    // Exactly at the window edge: 18 filler chars leave a 20-char gap.
    std::string at_edge = "buy " + std::string(18, 'x') + " $TSLA";
    std::string past_edge = "buy " + std::string(19, 'x') + " $TSLA";
    CHECK(prox(at_edge, "TSLA", Verdict::Buy) == 1);
    CHECK(prox(past_edge, "TSLA", Verdict::Buy) == 0);
}

TEST_CASE("class_score_prox skips negated occurrences even when close") {
    CHECK(prox("don't buy $TSLA", "TSLA", Verdict::Buy) == 0);
    CHECK(prox("$TSLA do not sell", "TSLA", Verdict::Sell) == 0);
    CHECK(prox("buy $TSLA don't buy", "TSLA", Verdict::Buy) == 1);
}

TEST_CASE("class_score_prox counts each occurrence against its nearest mention") {
    std::string spread = "buy $TSLA " + std::string(40, 'x') + " buy";
    CHECK(prox(spread, "TSLA", Verdict::Buy) == 1);
    CHECK(prox("buy $TSLA buy", "TSLA", Verdict::Buy) == 2);
    CHECK(prox("$TSLA buy buy buy", "TSLA", Verdict::Buy) == 3);
}

TEST_CASE("class_score_prox honors require_dollar and dotless aliases") {
    CHECK(prox("F calls", "F", Verdict::Buy, true) == 0);
    CHECK(prox("$F calls", "F", Verdict::Buy, true) == 1);
    CHECK(prox("F calls", "F", Verdict::Buy, false) == 1);
    CHECK(prox("BRKB calls", "BRK.B", Verdict::Buy) == 1);
    CHECK(prox("$BRKB calls", "BRK.B", Verdict::Buy, true) == 1);
}

TEST_CASE("class_score_prox matches the character-scan reference") {
    struct Case {
        const char* raw;
        const char* symbol;
        bool dollar;
    };
    Case cases[] = {
        {"buy $TSLA now", "TSLA", false},
        {"don't buy $TSLA", "TSLA", false},
        {"$F puts and F calls", "F", true},
        {"BRKB hold forever", "BRK.B", false},
        {"sell AAPL then buy AAPL later maybe", "AAPL", false},
        {"no mentions anywhere", "TSLA", false},
    };
    for (const Case& c : cases) {
        std::string text = sm::text::normalize(c.raw);
        for (Verdict cls : {Verdict::Buy, Verdict::Hold, Verdict::Sell}) {
            const auto& words = cls == Verdict::Buy    ? lex().buy_words
                                : cls == Verdict::Hold ? lex().hold_words
                                                       : lex().sell_words;
            CHECK(class_score_prox(text, c.symbol, cls, lex(), c.dollar) ==
                  sm::ref::class_score_prox(text, c.symbol, c.dollar, words, lex().negators));
        }
    }
}

TEST_CASE("verdict_from_scores needs a unique positive maximum") {
    CHECK(verdict_from_scores({2, 1, 0}) == Verdict::Buy);
    CHECK(verdict_from_scores({0, 2, 1}) == Verdict::Hold);
    CHECK(verdict_from_scores({0, 1, 3}) == Verdict::Sell);
    CHECK(verdict_from_scores({0, 0, 0}) == Verdict::None);
    CHECK(verdict_from_scores({1, 1, 0}) == Verdict::None);
    CHECK(verdict_from_scores({1, 0, 1}) == Verdict::None);
    CHECK(verdict_from_scores({2, 2, 2}) == Verdict::None);
    CHECK(verdict_from_scores({5, 4, 4}) == Verdict::Buy);
}

TEST_CASE("classify_post fills scores, verdict and mentions") {
    auto post = make_post("p1", Date::from_ymd(2020, 7, 6), "buy buy sell TSLA, TSLA!");
    PostSignal sig = classify_post(post, "TSLA", lex(), Mode::Default);
    CHECK(sig.post_id == "p1");
    CHECK(sig.symbol == "TSLA");
    CHECK(sig.date == Date::from_ymd(2020, 7, 6));
    CHECK(sig.scores == Scores{2, 0, 1});
    CHECK(sig.verdict == Verdict::Buy);
    CHECK(sig.mentions == 2);

    // Proximity mode scores only near the mention.
    auto far = make_post("p2", Date::from_ymd(2020, 7, 6),
                         "buy " + std::string(40, 'x') + " TSLA");
    CHECK(classify_post(far, "TSLA", lex(), Mode::Default).verdict == Verdict::Buy);
    CHECK(classify_post(far, "TSLA", lex(), Mode::Proximity).verdict == Verdict::None);

    // require_dollar also restricts the mention count.
    auto amb = make_post("p3", Date::from_ymd(2020, 7, 6), "F and $F calls");
    CHECK(classify_post(amb, "F", lex(), Mode::Default, true).mentions == 1);
}

TEST_CASE("scan_posts emits post order then symbol order") {
    auto universe = sm::tickers::TickerUniverse::from_entries({
        {"AAPL", "Apple", "Technology", false},
        {"TSLA", "Tesla", "Consumer Cyclical", false},
    });
    std::vector<sm::ingest::CleanPost> posts = {
        make_post("p1", Date::from_ymd(2020, 7, 6), "TSLA beats AAPL"),
        make_post("p2", Date::from_ymd(2020, 7, 5), "buy AAPL"),
        make_post("p3", Date::from_ymd(2020, 7, 7), "no symbols"),
    };
    auto sigs = scan_posts(posts, universe, lex(), Mode::Default);
    REQUIRE(sigs.size() == 3);
    CHECK(sigs[0].post_id == "p1");
    CHECK(sigs[0].symbol == "AAPL");   // symbol order within the post
    CHECK(sigs[1].post_id == "p1");
    CHECK(sigs[1].symbol == "TSLA");
    CHECK(sigs[2].post_id == "p2");
    CHECK(sigs[2].verdict == Verdict::Buy);
}

TEST_CASE("scan_posts matches the serial reference on the fixture corpus") {
    std::string dir = testsup::require_env("SM_FIXTURE_DIR");
    auto posts = sm::ingest::clean_pipeline(dir + "/posts.jsonl");
    auto universe = sm::tickers::TickerUniverse::load(dir + "/universe.csv");
    for (Mode mode : {Mode::Default, Mode::Proximity}) {
        auto a = scan_posts(posts, universe, lex(), mode);
        auto b = sm::ref::scan_posts_serial(posts, universe, lex(), mode);
        CHECK(a == b);
        CHECK_FALSE(a.empty());
    }
}

TEST_CASE("consensus_verdict uses a strict 1.5x margin") {
    CHECK(consensus_verdict(1, 0) == Verdict::Buy);
    CHECK(consensus_verdict(0, 1) == Verdict::Sell);
    CHECK(consensus_verdict(0, 0) == Verdict::None);
    CHECK(consensus_verdict(3, 2) == Verdict::None);  // 3 == 1.5 * 2 exactly
    CHECK(consensus_verdict(4, 2) == Verdict::Buy);
    CHECK(consensus_verdict(2, 3) == Verdict::None);
    CHECK(consensus_verdict(2, 4) == Verdict::Sell);
    CHECK(consensus_verdict(10, 6) == Verdict::Buy);
    CHECK(consensus_verdict(9, 6) == Verdict::None);
}

TEST_CASE("consensus_verdict enforces the support floor") {
    CHECK(consensus_verdict(1, 0, 2) == Verdict::None);
    CHECK(consensus_verdict(2, 1, 2) == Verdict::Buy);
    CHECK(consensus_verdict(0, 1, 2) == Verdict::None);
    CHECK(consensus_verdict(0, 2, 2) == Verdict::Sell);
    CHECK(consensus_verdict(3, 0, 4) == Verdict::None);
}

TEST_CASE("aggregate_daily groups by symbol and date") {
    Date d1 = Date::from_ymd(2020, 7, 6);
    Date d2 = Date::from_ymd(2020, 7, 7);
    std::vector<PostSignal> sigs = {
        make_signal("TSLA", d1, Verdict::Buy, 2),
        make_signal("AAPL", d2, Verdict::Sell, 1),
        make_signal("TSLA", d1, Verdict::Buy, 1),
        make_signal("TSLA", d1, Verdict::Hold, 3),
        make_signal("TSLA", d2, Verdict::None, 4),   // mentions only
        make_signal("AAPL", d1, Verdict::Buy, 1),
    };
    auto daily = aggregate_daily(sigs);
    REQUIRE(daily.size() == 4);
    CHECK(daily[0] == DailyConsensus{"AAPL", d1, 1, 0, 0, 1, Verdict::Buy});
    CHECK(daily[1] == DailyConsensus{"AAPL", d2, 0, 0, 1, 1, Verdict::Sell});
    CHECK(daily[2] == DailyConsensus{"TSLA", d1, 2, 1, 0, 6, Verdict::Buy});
    CHECK(daily[3] == DailyConsensus{"TSLA", d2, 0, 0, 0, 4, Verdict::None});

    // min_posts only changes the consensus column.
    auto strict = aggregate_daily(sigs, 2);
    CHECK(strict[0].consensus == Verdict::None);
    CHECK(strict[2].consensus == Verdict::Buy);
}

TEST_CASE("aggregate_daily is invariant under signal order") {
    std::mt19937 rng(7);
    std::vector<PostSignal> sigs;
    for (int i = 0; i < 60; ++i) {
        Verdict v = static_cast<Verdict>(rng() % 4);
        sigs.push_back(make_signal(rng() % 2 ? "TSLA" : "AAPL",
                                   Date::from_ymd(2020, 7, 1 + rng() % 5), v,
                                   static_cast<int>(rng() % 4)));
    }
    auto base = aggregate_daily(sigs);
    auto shuffled = sigs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(aggregate_daily(shuffled) == base);
}

TEST_CASE("posts_per_day counts calendar days") {
    Date d1 = Date::from_ymd(2020, 7, 6);
    Date d2 = Date::from_ymd(2020, 7, 7);
    std::vector<sm::ingest::CleanPost> posts = {
        make_post("a", d1, "x"), make_post("b", d1, "y"), make_post("c", d2, "z")};
    auto per_day = posts_per_day(posts);
    CHECK(per_day.size() == 2);
    CHECK(per_day[d1] == 2);
    CHECK(per_day[d2] == 1);
}

TEST_CASE("enrich adds ma3, weekday and moving-average flags") {
    Date mon = Date::from_ymd(2020, 7, 6);
    std::vector<DailyConsensus> daily = {
        {"TSLA", mon, 1, 0, 0, 2, Verdict::Buy},
        {"TSLA", mon.plus_days(1), 1, 0, 0, 4, Verdict::Buy},
        {"TSLA", mon.plus_days(4), 0, 0, 1, 6, Verdict::Sell},
    };
    std::map<Date, int> calendar = {{mon, 5}, {mon.plus_days(1), 3}};

    sm::market::PriceSeries series;
    series.symbol = "TSLA";
    for (int i = 0; i < 40; ++i) {
        // Rising closes: the spot price sits above every moving average.
        series.bars.push_back({mon.plus_days(i - 35), 10, 11, 9, 10.0 + i * 0.1, 100});
    }
    sm::market::PriceTable prices;
    prices["TSLA"] = series;

    auto enriched = enrich(daily, prices, calendar);
    REQUIRE(enriched.size() == 3);

    // First day: window clipped to the first consensus day.
    CHECK(enriched[0].mentions_ma3 == doctest::Approx(2.0));
    CHECK(enriched[0].weekday == 0);
    CHECK(enriched[0].total_posts_that_day == 5);
    // Second day: two days of history over a two-day window.
    CHECK(enriched[1].mentions_ma3 == doctest::Approx((2 + 4) / 2.0));
    CHECK(enriched[1].weekday == 1);
    // Fifth day: full three-day window but only one consensus entry inside.
    CHECK(enriched[2].mentions_ma3 == doctest::Approx(6 / 3.0));
    CHECK(enriched[2].weekday == 4);
    CHECK(enriched[2].total_posts_that_day == 0);

    REQUIRE(enriched[0].below_ma30.has_value());
    CHECK_FALSE(*enriched[0].below_ma30);      // rising series: close above MA
    CHECK_FALSE(enriched[0].below_ma90.has_value()); // not enough history

    // No price series at all: both flags stay unset.
    std::vector<DailyConsensus> other = {{"AAPL", mon, 1, 0, 0, 1, Verdict::Buy}};
    auto no_prices = enrich(other, prices, calendar);
    REQUIRE(no_prices.size() == 1);
    CHECK_FALSE(no_prices[0].below_ma30.has_value());
    CHECK_FALSE(no_prices[0].below_ma90.has_value());
}

TEST_CASE("consensus CSV round trips") {
    Date d = Date::from_ymd(2021, 1, 4);
    std::vector<DailyConsensus> daily = {
        {"AAPL", d, 2, 1, 0, 7, Verdict::Buy},
        {"TSLA", d.plus_days(1), 0, 0, 3, 9, Verdict::Sell},
        {"TSLA", d.plus_days(2), 1, 1, 1, 3, Verdict::None},
    };
    testsup::TempDir dir;
    std::string path = dir.file("consensus.csv");
    write_consensus_csv(path, daily);
    CHECK(read_consensus_csv(path) == daily);

    std::string text = testsup::read_file(path);
    CHECK(text.rfind("symbol,date,buy_n,hold_n,sell_n,mentions,consensus\n", 0) == 0);
    CHECK(text.find("AAPL,2021-01-04,2,1,0,7,Buy\n") != std::string::npos);
}

TEST_CASE("read_consensus_csv rejects malformed files") {
    testsup::TempDir dir;
    auto bad_header = testsup::write_file(dir.path() / "h.csv", "a,b\n");
    CHECK_THROWS_AS(read_consensus_csv(bad_header), sm::DataError);
    auto bad_date = testsup::write_file(dir.path() / "d.csv",
                                        "symbol,date,buy_n,hold_n,sell_n,mentions,consensus\n"
                                        "AAPL,yesterday,1,0,0,1,Buy\n");
    CHECK_THROWS_AS(read_consensus_csv(bad_date), sm::DataError);
    auto bad_count = testsup::write_file(dir.path() / "c.csv",
                                         "symbol,date,buy_n,hold_n,sell_n,mentions,consensus\n"
                                         "AAPL,2021-01-04,1\n");
    CHECK_THROWS_AS(read_consensus_csv(bad_count), sm::DataError);
}
