#pragma once

#include <string>
#include <vector>

namespace sm::signals {

// Keyword classes driving buy/hold/sell scoring. Entries are lowercase;
// matching is case-insensitive on token boundaries. Negators may span
// several tokens ("do not"); a negation is a negator immediately followed
// by a class word.
struct Lexicon {
    std::vector<std::string> buy_words;
    std::vector<std::string> sell_words;
    std::vector<std::string> hold_words;
    std::vector<std::string> negators;

    // The built-in word lists.
    static Lexicon defaults();

    // Sections [buy] [hold] [sell] [negators], one word or phrase per line,
    // '#' comments. Class words must be single tokens and the three classes
    // must be pairwise disjoint.
    static Lexicon load(const std::string& path);

    // Throws DataError when the invariants above are broken.
    void validate() const;
};

} // namespace sm::signals
