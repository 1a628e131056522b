#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sm/ingest.hpp"

namespace sm::tickers {

struct UniverseEntry {
    std::string symbol; // uppercase, may contain dots (BRK.B)
    std::string name;
    std::string sector;
    bool ambiguous = false; // matches only with a '$' prefix

    bool operator==(const UniverseEntry&) const = default;
};

struct MentionCount {
    std::string symbol;
    int count = 0;

    bool operator==(const MentionCount&) const = default;
};

// The stock list with sector metadata and disambiguation flags. Immutable
// after load; lookups are safe to share across threads.
class TickerUniverse {
public:
    // CSV columns: symbol,name,sector,ambiguous. Single-character symbols are
    // forced ambiguous. Duplicate symbols and empty files are fatal.
    static TickerUniverse load(const std::string& path);

    static TickerUniverse from_entries(std::vector<UniverseEntry> entries);

    // Marks extra symbols ambiguous; one symbol per line, '#' comments.
    // Symbols absent from the universe are counted and ignored.
    long apply_ambiguous_list(const std::string& path);

    const std::vector<UniverseEntry>& entries() const { return entries_; }
    bool contains(std::string_view symbol) const;
    bool is_ambiguous(std::string_view symbol) const;
    const UniverseEntry* find(std::string_view symbol) const;

    // Sector for a symbol; empty when unknown.
    std::string_view sector_of(std::string_view symbol) const;

    // Resolves a normalized-text token (dots already stripped) to the entry
    // it mentions, or nullptr. had_dollar reports a single leading '$'.
    const UniverseEntry* match_token(std::string_view token, bool& had_dollar) const;

private:
    std::vector<UniverseEntry> entries_;              // sorted by symbol
    std::unordered_map<std::string, std::size_t> by_alias_; // symbol and dotless alias
};

// Occurrences of one symbol in normalized text. Tokens match as "SYM" or
// "$SYM"; ambiguous symbols match only the '$' form.
int count_mentions(std::string_view text, std::string_view symbol, const TickerUniverse& universe);

// All mentioned symbols of a post, ascending by symbol, counts >= 1.
std::vector<MentionCount> detect_tickers(const ingest::CleanPost& post,
                                         const TickerUniverse& universe);

} // namespace sm::tickers
