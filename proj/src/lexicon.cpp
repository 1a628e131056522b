#include "sm/lexicon.hpp"

#include "sm/errors.hpp"
#include "sm/text.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace sm::signals {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

Lexicon Lexicon::defaults() {
    Lexicon lex;
    lex.buy_words = {"buy", "call", "calls"};
    lex.sell_words = {"sell", "put", "puts"};
    lex.hold_words = {"hold"};
    lex.negators = {"not", "don't", "do not"};
    return lex;
}

Lexicon Lexicon::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open lexicon file: " + path);

    Lexicon lex;
    std::vector<std::string>* section = nullptr;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        if (s.front() == '[' && s.back() == ']') {
            std::string name = s.substr(1, s.size() - 2);
            if (name == "buy") section = &lex.buy_words;
            else if (name == "sell") section = &lex.sell_words;
            else if (name == "hold") section = &lex.hold_words;
            else if (name == "negators") section = &lex.negators;
            else
                throw DataError(path + ":" + std::to_string(lineno) +
                                ": unknown lexicon section [" + name + "]");
            continue;
        }
        if (!section)
            throw DataError(path + ":" + std::to_string(lineno) +
                            ": entry before any section header");
        // Entries face the same normalization as post text so token
        // matching lines up (collapsed spaces, punctuation gone).
        std::string entry = text::to_lower(text::normalize(s));
        if (entry.empty())
            throw DataError(path + ":" + std::to_string(lineno) + ": entry is empty once normalized");
        section->push_back(std::move(entry));
    }
    lex.validate();
    return lex;
}

void Lexicon::validate() const {
    auto check_single_token = [](const std::vector<std::string>& words,
                                 const char* cls) {
        for (const auto& w : words) {
            if (w.empty())
                throw DataError(std::string("empty word in [") + cls + "]");
            if (w.find(' ') != std::string::npos)
                throw DataError(std::string("class word in [") + cls +
                                "] must be a single token: \"" + w + "\"");
        }
    };
    check_single_token(buy_words, "buy");
    check_single_token(sell_words, "sell");
    check_single_token(hold_words, "hold");
    for (const auto& n : negators)
        if (trim(n).empty()) throw DataError("empty negator phrase");

    std::set<std::string> seen;
    auto check_disjoint = [&seen](const std::vector<std::string>& words,
                                  const char* cls) {
        for (const auto& w : words)
            if (!seen.insert(w).second)
                throw DataError("word \"" + w + "\" appears in [" + cls +
                                "] and an earlier class");
    };
    check_disjoint(buy_words, "buy");
    check_disjoint(sell_words, "sell");
    check_disjoint(hold_words, "hold");
}

} // namespace sm::signals
