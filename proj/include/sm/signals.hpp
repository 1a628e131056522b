#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sm/date.hpp"
#include "sm/ingest.hpp"
#include "sm/lexicon.hpp"
#include "sm/market.hpp"
#include "sm/tickers.hpp"

namespace sm::signals {

enum class Verdict { Buy, Hold, Sell, None };
const char* to_string(Verdict v);

enum class Mode { Default, Proximity };

// A keyword occurrence only counts in proximity mode when its token lies
// within this many characters of a ticker mention.
inline constexpr int kProximityWindow = 20;

struct Scores {
    int buy = 0;
    int hold = 0;
    int sell = 0;

    bool operator==(const Scores&) const = default;
};

// One (post, symbol) verdict. mentions is the symbol's occurrence count in
// the post text.
struct PostSignal {
    std::string post_id;
    std::string symbol;
    Date date;
    Verdict verdict = Verdict::None;
    Scores scores;
    int mentions = 0;

    bool operator==(const PostSignal&) const = default;
};

struct DailyConsensus {
    std::string symbol;
    Date date;
    int buy_n = 0;
    int hold_n = 0;
    int sell_n = 0;
    int mentions = 0;         // summed over the day's posts
    Verdict consensus = Verdict::None; // Buy, Sell or None

    bool operator==(const DailyConsensus&) const = default;
};

// DailyConsensus plus descriptive features.
struct EnrichedDaily : DailyConsensus {
    int total_posts_that_day = 0;
    double mentions_ma3 = 0;  // mean mentions over [d-2, d], clipped at the
                              // symbol's first consensus day
    int weekday = 0;          // 0 = Monday
    std::optional<bool> below_ma30;
    std::optional<bool> below_ma90;

    bool operator==(const EnrichedDaily&) const = default;
};

// Occurrences of the class's words minus negated occurrences. An occurrence
// is negated when a negator phrase immediately precedes it; each negation
// contains its class word, so the result is never negative.
int class_score(const std::string& text, Verdict cls, const Lexicon& lexicon);

// As class_score, but an occurrence only counts when its token is within
// kProximityWindow characters of a mention of symbol (distance between the
// nearest ends of the two tokens). require_dollar restricts mentions to the
// "$SYM" form, matching ambiguous-ticker handling.
int class_score_prox(const std::string& text, const std::string& symbol, Verdict cls,
                     const Lexicon& lexicon, bool require_dollar = false);

// Unique positive maximum wins; ties and all-zero scores give None.
Verdict verdict_from_scores(const Scores& scores);

PostSignal classify_post(const ingest::CleanPost& post, const std::string& symbol,
                         const Lexicon& lexicon, Mode mode, bool require_dollar = false);

// Every (post, detected symbol) signal, in post order then symbol order.
std::vector<PostSignal> scan_posts(const std::vector<ingest::CleanPost>& posts,
                                   const tickers::TickerUniverse& universe,
                                   const Lexicon& lexicon, Mode mode);

// Buy when buy_n exceeds 1.5x sell_n (strictly) and meets the support
// floor; Sell symmetrically; None otherwise.
Verdict consensus_verdict(int buy_n, int sell_n, int min_posts = 1);

// Per (symbol, date) verdict counts and consensus, ascending by symbol then
// date. Signals with verdict None contribute mentions only.
std::vector<DailyConsensus> aggregate_daily(const std::vector<PostSignal>& signals,
                                            int min_posts = 1);

// Total clean posts per calendar day.
std::map<Date, int> posts_per_day(const std::vector<ingest::CleanPost>& posts);

// Adds the descriptive features. below_ma flags stay unset when the date
// has no bar or the moving average has too little history.
std::vector<EnrichedDaily> enrich(const std::vector<DailyConsensus>& daily,
                                  const market::PriceTable& prices,
                                  const std::map<Date, int>& calendar);

// Consensus CSV: symbol,date,buy_n,hold_n,sell_n,mentions,consensus.
void write_consensus_csv(const std::string& path, const std::vector<DailyConsensus>& daily);
std::vector<DailyConsensus> read_consensus_csv(const std::string& path);

} // namespace sm::signals
