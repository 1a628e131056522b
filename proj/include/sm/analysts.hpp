#pragma once

#include <set>
#include <string>
#include <vector>

#include "sm/date.hpp"

namespace sm::analysts {

enum class Rating { Buy, Hold, Sell, Unknown };
const char* to_string(Rating r);

// One published recommendation event.
struct AnalystRec {
    Date date;
    std::string firm;
    std::string symbol;
    std::string raw_label;
    Rating verdict = Rating::Unknown;

    bool operator==(const AnalystRec&) const = default;
};

struct LoadStats {
    long rows_read = 0;
    long malformed = 0;
    long filtered = 0;   // outside the firm filter
    long duplicates = 0; // same (date, firm, symbol); last row wins
    long buy = 0;
    long hold = 0;
    long sell = 0;
    long unknown = 0;
};

// Folds case, hyphens and whitespace, then matches the standard rating
// vocabularies; every string maps to exactly one Rating.
Rating standardize_label(const std::string& raw);

// CSV columns: date,firm,symbol,label. Malformed rows are skipped and
// counted; same-key rows collapse to the last one. Output is sorted by
// (date, firm, symbol). Unknown verdicts stay in the result so callers can
// report them.
std::vector<AnalystRec> load_recs(const std::string& path,
                                  const std::set<std::string>* firms_filter = nullptr,
                                  LoadStats* stats = nullptr);

// Firms by descending recommendation count, ties alphabetical; at most k.
std::vector<std::string> top_firms(const std::vector<AnalystRec>& recs, std::size_t k);

} // namespace sm::analysts
