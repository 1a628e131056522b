#include "sm/text.hpp"

#include <cctype>

namespace sm::text {

namespace {

bool is_space(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_control(unsigned char c) { return c < 0x20 || c == 0x7f; }

bool keep_char(unsigned char c) {
    if (c >= 0x80) return true; // UTF-8 bytes pass through
    if (std::ispunct(c)) return c == '$' || c == '\'';
    return true;
}

} // namespace

std::string normalize(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (unsigned char c : raw) {
        if (is_space(c)) {
            pending_space = true;
            continue;
        }
        if (is_control(c)) continue;
        if (!keep_char(c)) continue;
        if (pending_space && !out.empty()) out += ' ';
        pending_space = false;
        out += static_cast<char>(c);
    }
    return out;
}

std::string normalize_text(std::string_view title, std::string_view selftext) {
    std::string joined;
    joined.reserve(title.size() + selftext.size() + 1);
    joined.append(title);
    joined += ' ';
    joined.append(selftext);
    return normalize(joined);
}

std::vector<Token> tokenize(std::string_view normalized) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = normalized.size();
    while (i < n) {
        while (i < n && normalized[i] == ' ') ++i;
        if (i >= n) break;
        std::size_t begin = i;
        while (i < n && normalized[i] != ' ') ++i;
        out.push_back({begin, i});
    }
    return out;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

} // namespace sm::text
