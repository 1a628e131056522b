#include "sm/signals.hpp"

#include <algorithm>
#include <utility>

#include "sm/csv.hpp"
#include "sm/errors.hpp"
#include "sm/parallel.hpp"
#include "sm/text.hpp"

namespace sm::signals {

namespace {

const std::vector<std::string>& words_for(Verdict cls, const Lexicon& lex) {
    static const std::vector<std::string> kEmpty;
    switch (cls) {
    case Verdict::Buy: return lex.buy_words;
    case Verdict::Hold: return lex.hold_words;
    case Verdict::Sell: return lex.sell_words;
    case Verdict::None: return kEmpty;
    }
    return kEmpty;
}

bool in_list(std::string_view w, const std::vector<std::string>& words) {
    return std::find(words.begin(), words.end(), w) != words.end();
}

std::vector<std::vector<std::string>> split_phrases(const std::vector<std::string>& negators) {
    std::vector<std::vector<std::string>> phrases;
    phrases.reserve(negators.size());
    for (const std::string& n : negators) {
        std::vector<std::string> parts;
        for (text::Token t : text::tokenize(n)) parts.emplace_back(text::token_view(n, t));
        if (!parts.empty()) phrases.push_back(std::move(parts));
    }
    return phrases;
}

// True when some negator phrase ends exactly at token i-1.
bool negated_at(const std::vector<std::string_view>& toks, std::size_t i,
                const std::vector<std::vector<std::string>>& phrases) {
    for (const auto& phrase : phrases) {
        std::size_t k = phrase.size();
        if (i < k) continue;
        bool match = true;
        for (std::size_t j = 0; j < k; ++j) {
            if (toks[i - k + j] != phrase[j]) {
                match = false;
                break;
            }
        }
        if (match) return true;
    }
    return false;
}

int char_distance(text::Token a, text::Token b) {
    if (a.end <= b.begin) return static_cast<int>(b.begin - a.end);
    if (b.end <= a.begin) return static_cast<int>(a.begin - b.end);
    return 0;
}

std::string without_dots(const std::string& symbol) {
    std::string out;
    out.reserve(symbol.size());
    for (char c : symbol)
        if (c != '.') out += c;
    return out;
}

// Mention test mirroring TickerUniverse::match_token for one known symbol.
bool token_mentions(std::string_view tok, const std::string& symbol, const std::string& dotless,
                    bool require_dollar) {
    bool had_dollar = !tok.empty() && tok.front() == '$';
    if (had_dollar) tok.remove_prefix(1);
    if (require_dollar && !had_dollar) return false;
    return tok == symbol || tok == dotless;
}

int count_symbol_tokens(const std::string& text, const std::vector<text::Token>& tokens,
                        const std::string& symbol, const std::string& dotless,
                        bool require_dollar) {
    int count = 0;
    for (text::Token t : tokens)
        if (token_mentions(text::token_view(text, t), symbol, dotless, require_dollar)) ++count;
    return count;
}

} // namespace

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::Buy: return "Buy";
    case Verdict::Hold: return "Hold";
    case Verdict::Sell: return "Sell";
    case Verdict::None: return "None";
    }
    return "None";
}

int class_score(const std::string& text, Verdict cls, const Lexicon& lexicon) {
    const auto& words = words_for(cls, lexicon);
    if (words.empty()) return 0;
    std::string lower = text::to_lower(text);
    std::vector<text::Token> tokens = text::tokenize(lower);
    std::vector<std::string_view> views;
    views.reserve(tokens.size());
    for (text::Token t : tokens) views.push_back(text::token_view(lower, t));
    auto phrases = split_phrases(lexicon.negators);

    int score = 0;
    for (std::size_t i = 0; i < views.size(); ++i) {
        if (!in_list(views[i], words)) continue;
        if (!negated_at(views, i, phrases)) ++score;
    }
    return score;
}

int class_score_prox(const std::string& text, const std::string& symbol, Verdict cls,
                     const Lexicon& lexicon, bool require_dollar) {
    const auto& words = words_for(cls, lexicon);
    if (words.empty()) return 0;
    std::string lower = text::to_lower(text);
    std::vector<text::Token> tokens = text::tokenize(lower);
    std::string dotless = without_dots(symbol);

    // Spans are valid for both casings; mention matching is case-sensitive,
    // so it reads the original text.
    std::vector<text::Token> mentions;
    for (text::Token t : tokens)
        if (token_mentions(text::token_view(text, t), symbol, dotless, require_dollar))
            mentions.push_back(t);
    if (mentions.empty()) return 0;

    std::vector<std::string_view> views;
    views.reserve(tokens.size());
    for (text::Token t : tokens) views.push_back(text::token_view(lower, t));
    auto phrases = split_phrases(lexicon.negators);

    int score = 0;
    for (std::size_t i = 0; i < views.size(); ++i) {
        if (!in_list(views[i], words)) continue;
        if (negated_at(views, i, phrases)) continue;
        for (text::Token m : mentions) {
            if (char_distance(tokens[i], m) <= kProximityWindow) {
                ++score;
                break;
            }
        }
    }
    return score;
}

Verdict verdict_from_scores(const Scores& scores) {
    int best = std::max({scores.buy, scores.hold, scores.sell});
    if (best <= 0) return Verdict::None;
    int winners = (scores.buy == best) + (scores.hold == best) + (scores.sell == best);
    if (winners != 1) return Verdict::None;
    if (scores.buy == best) return Verdict::Buy;
    if (scores.hold == best) return Verdict::Hold;
    return Verdict::Sell;
}

PostSignal classify_post(const ingest::CleanPost& post, const std::string& symbol,
                         const Lexicon& lexicon, Mode mode, bool require_dollar) {
    PostSignal sig;
    sig.post_id = post.id;
    sig.symbol = symbol;
    sig.date = post.date;
    if (mode == Mode::Proximity) {
        sig.scores.buy = class_score_prox(post.text, symbol, Verdict::Buy, lexicon, require_dollar);
        sig.scores.hold =
            class_score_prox(post.text, symbol, Verdict::Hold, lexicon, require_dollar);
        sig.scores.sell =
            class_score_prox(post.text, symbol, Verdict::Sell, lexicon, require_dollar);
    } else {
        sig.scores.buy = class_score(post.text, Verdict::Buy, lexicon);
        sig.scores.hold = class_score(post.text, Verdict::Hold, lexicon);
        sig.scores.sell = class_score(post.text, Verdict::Sell, lexicon);
    }
    sig.verdict = verdict_from_scores(sig.scores);
    std::string dotless = without_dots(symbol);
    sig.mentions = count_symbol_tokens(post.text, text::tokenize(post.text), symbol, dotless,
                                       require_dollar);
    return sig;
}

std::vector<PostSignal> scan_posts(const std::vector<ingest::CleanPost>& posts,
                                   const tickers::TickerUniverse& universe,
                                   const Lexicon& lexicon, Mode mode) {
    const std::int64_t n = static_cast<std::int64_t>(posts.size());
    std::vector<std::vector<PostSignal>> slots(posts.size());

#pragma omp parallel for schedule(static) num_threads(thread_cap())
    for (std::int64_t i = 0; i < n; ++i) {
        auto counts = tickers::detect_tickers(posts[i], universe);
        for (const auto& mc : counts)
            slots[i].push_back(classify_post(posts[i], mc.symbol, lexicon, mode,
                                             universe.is_ambiguous(mc.symbol)));
    }

    std::vector<PostSignal> out;
    for (auto& slot : slots)
        for (PostSignal& sig : slot) out.push_back(std::move(sig));
    return out;
}

Verdict consensus_verdict(int buy_n, int sell_n, int min_posts) {
    if (2 * buy_n > 3 * sell_n && buy_n >= min_posts) return Verdict::Buy;
    if (2 * sell_n > 3 * buy_n && sell_n >= min_posts) return Verdict::Sell;
    return Verdict::None;
}

std::vector<DailyConsensus> aggregate_daily(const std::vector<PostSignal>& signals,
                                            int min_posts) {
    struct Acc {
        int buy = 0, hold = 0, sell = 0, mentions = 0;
    };
    std::map<std::pair<std::string, Date>, Acc> acc;
    for (const PostSignal& sig : signals) {
        Acc& a = acc[{sig.symbol, sig.date}];
        switch (sig.verdict) {
        case Verdict::Buy: ++a.buy; break;
        case Verdict::Hold: ++a.hold; break;
        case Verdict::Sell: ++a.sell; break;
        case Verdict::None: break;
        }
        a.mentions += sig.mentions;
    }

    std::vector<DailyConsensus> out;
    out.reserve(acc.size());
    for (const auto& [key, a] : acc) {
        DailyConsensus d;
        d.symbol = key.first;
        d.date = key.second;
        d.buy_n = a.buy;
        d.hold_n = a.hold;
        d.sell_n = a.sell;
        d.mentions = a.mentions;
        d.consensus = consensus_verdict(a.buy, a.sell, min_posts);
        out.push_back(std::move(d));
    }
    return out;
}

std::map<Date, int> posts_per_day(const std::vector<ingest::CleanPost>& posts) {
    std::map<Date, int> out;
    for (const auto& p : posts) ++out[p.date];
    return out;
}

std::vector<EnrichedDaily> enrich(const std::vector<DailyConsensus>& daily,
                                  const market::PriceTable& prices,
                                  const std::map<Date, int>& calendar) {
    // Expects aggregate_daily order: grouped by symbol, ascending dates.
    std::vector<EnrichedDaily> out;
    out.reserve(daily.size());
    std::size_t i = 0;
    while (i < daily.size()) {
        std::size_t j = i;
        while (j < daily.size() && daily[j].symbol == daily[i].symbol) ++j;
        const Date first = daily[i].date;
        auto found = prices.find(daily[i].symbol);
        const market::PriceSeries* series = found == prices.end() ? nullptr : &found->second;

        for (std::size_t k = i; k < j; ++k) {
            EnrichedDaily e;
            static_cast<DailyConsensus&>(e) = daily[k];
            const Date d = daily[k].date;

            Date lo = std::max(first, d.plus_days(-2));
            int sum = 0;
            for (std::size_t t = k + 1; t-- > i;) {
                if (daily[t].date < lo) break;
                sum += daily[t].mentions;
            }
            e.mentions_ma3 = static_cast<double>(sum) / (d - lo + 1);
            e.weekday = d.weekday();
            auto cal = calendar.find(d);
            e.total_posts_that_day = cal == calendar.end() ? 0 : cal->second;

            if (series) {
                if (auto close = series->close_at(d)) {
                    if (auto ma = market::moving_average(*series, d, 30))
                        e.below_ma30 = *close < *ma;
                    if (auto ma = market::moving_average(*series, d, 90))
                        e.below_ma90 = *close < *ma;
                }
            }
            out.push_back(std::move(e));
        }
        i = j;
    }
    return out;
}

void write_consensus_csv(const std::string& path, const std::vector<DailyConsensus>& daily) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write consensus file: " + path);
    out << "symbol,date,buy_n,hold_n,sell_n,mentions,consensus\n";
    for (const DailyConsensus& d : daily) {
        out << csv::escape_field(d.symbol) << ',' << d.date.to_string() << ',' << d.buy_n << ','
            << d.hold_n << ',' << d.sell_n << ',' << d.mentions << ',' << to_string(d.consensus)
            << '\n';
    }
}

std::vector<DailyConsensus> read_consensus_csv(const std::string& path) {
    csv::Reader reader(path);
    if (reader.header() != std::vector<std::string>{"symbol", "date", "buy_n", "hold_n", "sell_n",
                                                    "mentions", "consensus"})
        throw DataError(path + ": expected consensus CSV header");

    std::vector<DailyConsensus> out;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        std::string where = path + ":" + std::to_string(reader.line_number());
        if (fields.size() != 7) throw DataError(where + ": expected 7 fields");
        DailyConsensus d;
        d.symbol = fields[0];
        auto date = Date::parse(fields[1]);
        if (!date) throw DataError(where + ": bad date '" + fields[1] + "'");
        d.date = *date;
        try {
            d.buy_n = std::stoi(fields[2]);
            d.hold_n = std::stoi(fields[3]);
            d.sell_n = std::stoi(fields[4]);
            d.mentions = std::stoi(fields[5]);
        } catch (const std::exception&) {
            throw DataError(where + ": bad count field");
        }
        if (fields[6] == "Buy") d.consensus = Verdict::Buy;
        else if (fields[6] == "Sell") d.consensus = Verdict::Sell;
        else if (fields[6] == "None") d.consensus = Verdict::None;
        else throw DataError(where + ": bad consensus '" + fields[6] + "'");
        out.push_back(std::move(d));
    }
    return out;
}

} // namespace sm::signals
