#include "sm/tickers.hpp"

#include <algorithm>
#include <fstream>

#include "sm/csv.hpp"
#include "sm/errors.hpp"
#include "sm/text.hpp"

namespace sm::tickers {

namespace {

std::string strip_dots(std::string_view symbol) {
    std::string out;
    out.reserve(symbol.size());
    for (char c : symbol)
        if (c != '.') out += c;
    return out;
}

bool valid_symbol(std::string_view symbol) {
    if (symbol.empty() || symbol.size() > 5) return false;
    for (char c : symbol)
        if (!((c >= 'A' && c <= 'Z') || c == '.')) return false;
    return symbol.front() != '.' && symbol.back() != '.';
}

} // namespace

TickerUniverse TickerUniverse::from_entries(std::vector<UniverseEntry> entries) {
    TickerUniverse u;
    u.entries_ = std::move(entries);
    std::sort(u.entries_.begin(), u.entries_.end(),
              [](const UniverseEntry& a, const UniverseEntry& b) { return a.symbol < b.symbol; });
    for (std::size_t i = 0; i < u.entries_.size(); ++i) {
        UniverseEntry& e = u.entries_[i];
        if (!valid_symbol(e.symbol)) throw DataError("invalid ticker symbol: '" + e.symbol + "'");
        if (e.symbol.size() == 1) e.ambiguous = true;
        if (!u.by_alias_.emplace(e.symbol, i).second)
            throw DataError("duplicate ticker symbol: " + e.symbol);
        std::string alias = strip_dots(e.symbol);
        if (alias != e.symbol) {
            auto [it, inserted] = u.by_alias_.emplace(alias, i);
            if (!inserted)
                throw DataError("ticker alias collision: " + alias + " vs " + e.symbol);
        }
    }
    if (u.entries_.empty()) throw DataError("ticker universe is empty");
    return u;
}

TickerUniverse TickerUniverse::load(const std::string& path) {
    csv::Reader reader(path);
    const auto& header = reader.header();
    if (header != std::vector<std::string>{"symbol", "name", "sector", "ambiguous"})
        throw DataError(path + ": expected header symbol,name,sector,ambiguous");

    std::vector<UniverseEntry> entries;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        if (fields.size() != 4)
            throw DataError(path + ":" + std::to_string(reader.line_number()) +
                            ": expected 4 fields");
        if (fields[3] != "0" && fields[3] != "1")
            throw DataError(path + ":" + std::to_string(reader.line_number()) +
                            ": ambiguous flag must be 0 or 1");
        entries.push_back({fields[0], fields[1], fields[2], fields[3] == "1"});
    }
    if (entries.empty()) throw DataError(path + ": no universe rows");
    return from_entries(std::move(entries));
}

long TickerUniverse::apply_ambiguous_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open ambiguous-ticker list: " + path);
    long unknown = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        std::string symbol = line.substr(start);
        auto it = by_alias_.find(symbol);
        if (it == by_alias_.end() || entries_[it->second].symbol != symbol) {
            ++unknown;
            continue;
        }
        entries_[it->second].ambiguous = true;
    }
    return unknown;
}

bool TickerUniverse::contains(std::string_view symbol) const { return find(symbol) != nullptr; }

const UniverseEntry* TickerUniverse::find(std::string_view symbol) const {
    auto it = by_alias_.find(std::string(symbol));
    if (it == by_alias_.end()) return nullptr;
    const UniverseEntry& e = entries_[it->second];
    return e.symbol == symbol ? &e : nullptr;
}

bool TickerUniverse::is_ambiguous(std::string_view symbol) const {
    const UniverseEntry* e = find(symbol);
    return e != nullptr && e->ambiguous;
}

std::string_view TickerUniverse::sector_of(std::string_view symbol) const {
    const UniverseEntry* e = find(symbol);
    return e ? std::string_view(e->sector) : std::string_view{};
}

const UniverseEntry* TickerUniverse::match_token(std::string_view token, bool& had_dollar) const {
    had_dollar = false;
    if (token.empty()) return nullptr;
    if (token.front() == '$') {
        had_dollar = true;
        token.remove_prefix(1);
        if (token.empty()) return nullptr;
    }
    auto it = by_alias_.find(std::string(token));
    if (it == by_alias_.end()) return nullptr;
    const UniverseEntry* e = &entries_[it->second];
    if (e->ambiguous && !had_dollar) return nullptr;
    return e;
}

int count_mentions(std::string_view text, std::string_view symbol,
                   const TickerUniverse& universe) {
    const UniverseEntry* target = universe.find(symbol);
    if (!target) return 0;
    int count = 0;
    for (text::Token tok : text::tokenize(text)) {
        bool had_dollar = false;
        if (universe.match_token(text::token_view(text, tok), had_dollar) == target) ++count;
    }
    return count;
}

std::vector<MentionCount> detect_tickers(const ingest::CleanPost& post,
                                         const TickerUniverse& universe) {
    // entries_ is symbol-sorted, so indexing by entry yields symbol order.
    std::vector<int> counts(universe.entries().size(), 0);
    for (text::Token tok : text::tokenize(post.text)) {
        bool had_dollar = false;
        const UniverseEntry* e = universe.match_token(text::token_view(post.text, tok), had_dollar);
        if (e) ++counts[static_cast<std::size_t>(e - universe.entries().data())];
    }
    std::vector<MentionCount> out;
    for (std::size_t i = 0; i < counts.size(); ++i)
        if (counts[i] > 0) out.push_back({universe.entries()[i].symbol, counts[i]});
    return out;
}

} // namespace sm::tickers
