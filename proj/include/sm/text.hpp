#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sm::text {

// Cleans one free-form string: whitespace runs collapse to single spaces,
// other control characters are removed, ASCII punctuation is discarded
// except '$' (cashtags) and '\'' (contractions), letter case is preserved.
// Idempotent.
std::string normalize(std::string_view raw);

// Joins title and body with one space, then normalizes.
std::string normalize_text(std::string_view title, std::string_view selftext);

// Half-open character span of one whitespace-delimited token.
struct Token {
    std::size_t begin = 0;
    std::size_t end = 0;
};

// Splits normalized text on single spaces.
std::vector<Token> tokenize(std::string_view normalized);

inline std::string_view token_view(std::string_view s, Token t) {
    return s.substr(t.begin, t.end - t.begin);
}

std::string to_lower(std::string_view s);

} // namespace sm::text
