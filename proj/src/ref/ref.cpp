#include "sm/ref.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "sm/errors.hpp"

namespace sm::ref {

namespace {

struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;
};

char fold(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

bool boundary_before(const std::string& t, std::size_t p) { return p == 0 || t[p - 1] == ' '; }
bool boundary_after(const std::string& t, std::size_t p) { return p == t.size() || t[p] == ' '; }

bool equal_at_ci(const std::string& t, std::size_t p, const std::string& w) {
    if (p + w.size() > t.size()) return false;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (fold(t[p + i]) != fold(w[i])) return false;
    return true;
}

bool equal_at_cs(const std::string& t, std::size_t p, const std::string& w) {
    if (p + w.size() > t.size()) return false;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (t[p + i] != w[i]) return false;
    return true;
}

std::vector<Span> keyword_spans(const std::string& t, const std::vector<std::string>& words) {
    std::vector<Span> out;
    for (std::size_t p = 0; p < t.size(); ++p) {
        if (!boundary_before(t, p)) continue;
        for (const std::string& w : words) {
            if (w.empty()) continue;
            if (equal_at_ci(t, p, w) && boundary_after(t, p + w.size())) {
                out.push_back({p, p + w.size()});
                break;
            }
        }
    }
    return out;
}

bool negated_before(const std::string& t, std::size_t word_begin,
                    const std::vector<std::string>& negators) {
    for (const std::string& neg : negators) {
        if (neg.empty()) continue;
        std::size_t need = neg.size() + 1; // phrase plus the separating space
        if (word_begin < need) continue;
        std::size_t start = word_begin - need;
        if (!boundary_before(t, start)) continue;
        if (t[word_begin - 1] != ' ') continue;
        if (equal_at_ci(t, start, neg)) return true;
    }
    return false;
}

std::vector<Span> mention_spans(const std::string& t, const std::string& symbol,
                                bool require_dollar) {
    std::string dotless;
    for (char c : symbol)
        if (c != '.') dotless += c;

    std::vector<std::string> forms;
    forms.push_back("$" + symbol);
    if (dotless != symbol) forms.push_back("$" + dotless);
    if (!require_dollar) {
        forms.push_back(symbol);
        if (dotless != symbol) forms.push_back(dotless);
    }

    std::vector<Span> out;
    for (std::size_t p = 0; p < t.size(); ++p) {
        if (!boundary_before(t, p)) continue;
        for (const std::string& f : forms) {
            if (equal_at_cs(t, p, f) && boundary_after(t, p + f.size())) {
                out.push_back({p, p + f.size()});
                break;
            }
        }
    }
    return out;
}

std::size_t span_gap(Span a, Span b) {
    if (a.end <= b.begin) return b.begin - a.end;
    if (b.end <= a.begin) return a.begin - b.end;
    return 0;
}

signals::Verdict pick_verdict(int buy, int hold, int sell) {
    int best = std::max({buy, hold, sell});
    if (best <= 0) return signals::Verdict::None;
    int winners = (buy == best) + (hold == best) + (sell == best);
    if (winners != 1) return signals::Verdict::None;
    if (buy == best) return signals::Verdict::Buy;
    if (hold == best) return signals::Verdict::Hold;
    return signals::Verdict::Sell;
}

const market::PriceBar* find_bar(const market::PriceSeries& s, Date d) {
    for (const auto& bar : s.bars)
        if (bar.date == d) return &bar;
    return nullptr;
}

} // namespace

int class_score(const std::string& text, const std::vector<std::string>& words,
                const std::vector<std::string>& negators) {
    int score = 0;
    for (Span span : keyword_spans(text, words))
        if (!negated_before(text, span.begin, negators)) ++score;
    return score;
}

int class_score_prox(const std::string& text, const std::string& symbol, bool require_dollar,
                     const std::vector<std::string>& words,
                     const std::vector<std::string>& negators) {
    std::vector<Span> mentions = mention_spans(text, symbol, require_dollar);
    if (mentions.empty()) return 0;
    int score = 0;
    for (Span span : keyword_spans(text, words)) {
        if (negated_before(text, span.begin, negators)) continue;
        for (Span m : mentions) {
            if (span_gap(span, m) <= static_cast<std::size_t>(signals::kProximityWindow)) {
                ++score;
                break;
            }
        }
    }
    return score;
}

int count_mentions(const std::string& text, const std::string& symbol, bool require_dollar) {
    return static_cast<int>(mention_spans(text, symbol, require_dollar).size());
}

std::vector<ingest::CleanPost> clean_lines_serial(const std::vector<std::string>& lines,
                                                  ingest::CleanStats* stats) {
    ingest::CleanStats local;
    local.read = static_cast<long>(lines.size());
    std::vector<ingest::CleanPost> out;
    for (const std::string& line : lines) {
        auto sub = ingest::parse_submission(line);
        if (!sub) {
            ++local.malformed;
            continue;
        }
        if (!ingest::is_visible(*sub)) {
            ++local.invisible;
            continue;
        }
        auto flair = ingest::classify_flair(sub->link_flair_text);
        if (flair.category == ingest::FlairCategory::Reactive) {
            ++local.reactive;
            continue;
        }
        if (flair.category == ingest::FlairCategory::Unknown) {
            ++local.unknown_flair;
            continue;
        }
        if (auto post = ingest::clean_one(*sub)) {
            ++local.retained;
            out.push_back(std::move(*post));
        }
    }
    if (stats) *stats = local;
    return out;
}

std::vector<signals::PostSignal> scan_posts_serial(const std::vector<ingest::CleanPost>& posts,
                                                   const tickers::TickerUniverse& universe,
                                                   const signals::Lexicon& lexicon,
                                                   signals::Mode mode) {
    std::vector<signals::PostSignal> out;
    for (const auto& post : posts) {
        for (const auto& entry : universe.entries()) {
            int m = count_mentions(post.text, entry.symbol, entry.ambiguous);
            if (m == 0) continue;
            signals::PostSignal sig;
            sig.post_id = post.id;
            sig.symbol = entry.symbol;
            sig.date = post.date;
            sig.mentions = m;
            if (mode == signals::Mode::Proximity) {
                sig.scores.buy = class_score_prox(post.text, entry.symbol, entry.ambiguous,
                                                  lexicon.buy_words, lexicon.negators);
                sig.scores.hold = class_score_prox(post.text, entry.symbol, entry.ambiguous,
                                                   lexicon.hold_words, lexicon.negators);
                sig.scores.sell = class_score_prox(post.text, entry.symbol, entry.ambiguous,
                                                   lexicon.sell_words, lexicon.negators);
            } else {
                sig.scores.buy = class_score(post.text, lexicon.buy_words, lexicon.negators);
                sig.scores.hold = class_score(post.text, lexicon.hold_words, lexicon.negators);
                sig.scores.sell = class_score(post.text, lexicon.sell_words, lexicon.negators);
            }
            sig.verdict = pick_verdict(sig.scores.buy, sig.scores.hold, sig.scores.sell);
            out.push_back(std::move(sig));
        }
    }
    return out;
}

std::optional<Date> effective_date(const market::PriceSeries& s, Date d) {
    for (const auto& bar : s.bars)
        if (bar.date >= d) return bar.date;
    return std::nullopt;
}

std::optional<double> moving_average(const market::PriceSeries& s, Date d, int n) {
    std::vector<double> closes;
    for (const auto& bar : s.bars)
        if (bar.date <= d) closes.push_back(bar.close);
    if (closes.size() < static_cast<std::size_t>(n)) return std::nullopt;
    double sum = 0;
    for (std::size_t i = closes.size() - static_cast<std::size_t>(n); i < closes.size(); ++i)
        sum += closes[i];
    return sum / n;
}

std::optional<double> forward_return(const market::PriceSeries& s, Date signal_date,
                                     int horizon) {
    auto e0 = effective_date(s, signal_date);
    auto e1 = effective_date(s, signal_date.plus_days(horizon));
    if (!e0 || !e1) return std::nullopt;
    double c0 = find_bar(s, *e0)->close;
    double c1 = find_bar(s, *e1)->close;
    return 100.0 * (c1 / c0 - 1.0);
}

std::optional<double> total_change(const market::PriceSeries& s, Date start, Date end) {
    auto e0 = effective_date(s, start);
    auto e1 = effective_date(s, end);
    if (!e0 || !e1) return std::nullopt;
    return 100.0 * find_bar(s, *e1)->close / find_bar(s, *e0)->close;
}

std::optional<double> median_3m_change(const market::PriceSeries& s, Date window_start,
                                       Date window_end, int horizon) {
    std::vector<double> returns;
    for (const auto& bar : s.bars) {
        if (bar.date < window_start || bar.date > window_end) continue;
        if (auto r = ref::forward_return(s, bar.date, horizon)) returns.push_back(*r);
    }
    if (returns.empty()) return std::nullopt;
    std::sort(returns.begin(), returns.end());
    std::size_t m = returns.size() / 2;
    if (returns.size() % 2 == 1) return returns[m];
    return (returns[m - 1] + returns[m]) / 2.0;
}

signals::Verdict consensus_verdict(int buy_n, int sell_n, int min_posts) {
    if (buy_n > 1.5 * sell_n && buy_n >= min_posts) return signals::Verdict::Buy;
    if (sell_n > 1.5 * buy_n && sell_n >= min_posts) return signals::Verdict::Sell;
    return signals::Verdict::None;
}

std::vector<backtest::EvalReport> evaluate_grid_serial(
    const std::vector<std::pair<std::string, std::vector<backtest::BuySignal>>>& sources,
    const market::PriceTable& prices, const std::vector<std::string>& conditions,
    const std::vector<int>& horizons) {
    std::vector<backtest::EvalReport> cells;
    for (const auto& [source, signals] : sources) {
        for (const std::string& condition : conditions) {
            std::vector<backtest::BuySignal> kept;
            if (condition == "none") {
                kept = signals;
            } else {
                int n = std::atoi(condition.c_str() + 2);
                for (const auto& sig : signals) {
                    auto found = prices.find(sig.symbol);
                    if (found == prices.end()) continue;
                    auto eff = effective_date(found->second, sig.date);
                    if (!eff) continue;
                    auto ma = ref::moving_average(found->second, *eff, n);
                    if (!ma) continue;
                    if (find_bar(found->second, *eff)->close < *ma) kept.push_back(sig);
                }
            }
            for (int horizon : horizons) {
                backtest::EvalReport report;
                report.source = source;
                report.condition = condition;
                report.horizon = horizon;
                report.n_signals = static_cast<long>(kept.size());
                long positive = 0;
                double sum = 0;
                for (const auto& sig : kept) {
                    auto found = prices.find(sig.symbol);
                    if (found == prices.end()) continue;
                    auto ret = ref::forward_return(found->second, sig.date, horizon);
                    if (!ret) continue;
                    ++report.n_evaluable;
                    if (*ret > 0) ++positive;
                    sum += *ret;
                }
                if (report.n_evaluable > 0) {
                    report.accuracy =
                        static_cast<double>(positive) / static_cast<double>(report.n_evaluable);
                    report.mean_return = sum / static_cast<double>(report.n_evaluable);
                }
                cells.push_back(std::move(report));
            }
        }
    }
    return cells;
}

backtest::TopSet top_performers(const market::PriceTable& prices, Date window_start,
                                Date window_end, double quantile) {
    backtest::TopSet top;
    top.window_start = window_start;
    top.window_end = window_end;

    std::vector<std::string> symbols;
    std::vector<double> changes;
    std::vector<double> medians;
    for (const auto& [symbol, series] : prices) {
        auto change = ref::total_change(series, window_start, window_end);
        auto median = ref::median_3m_change(series, window_start, window_end);
        if (!change || !median) continue;
        symbols.push_back(symbol);
        changes.push_back(*change);
        medians.push_back(*median);
    }
    top.eligible = static_cast<long>(symbols.size());
    if (symbols.empty()) return top;

    std::size_t k = static_cast<std::size_t>(
        std::ceil(quantile * static_cast<double>(symbols.size())));
    k = std::min(k, symbols.size());

    // Pick the best remaining symbol k times, per criterion.
    auto select = [&symbols, k](const std::vector<double>& metric) {
        std::set<std::size_t> taken;
        std::vector<std::size_t> picks;
        while (picks.size() < k) {
            std::size_t best = symbols.size();
            for (std::size_t i = 0; i < symbols.size(); ++i) {
                if (taken.count(i)) continue;
                if (best == symbols.size() || metric[i] > metric[best] ||
                    (metric[i] == metric[best] && symbols[i] < symbols[best]))
                    best = i;
            }
            taken.insert(best);
            picks.push_back(best);
        }
        return picks;
    };

    auto change_picks = select(changes);
    auto median_picks = select(medians);
    for (std::size_t i : change_picks) top.symbols.insert(symbols[i]);
    for (std::size_t i : median_picks) top.symbols.insert(symbols[i]);
    top.total_change_cutoff = changes[change_picks.back()];
    top.median_3m_cutoff = medians[median_picks.back()];
    return top;
}

} // namespace sm::ref
