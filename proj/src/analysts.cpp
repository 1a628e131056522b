#include "sm/analysts.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <tuple>

#include "sm/csv.hpp"
#include "sm/errors.hpp"

namespace sm::analysts {

namespace {

// Ratings keyed by their case/hyphen/whitespace-insensitive fold.
constexpr std::array kBuyLabels = {"buy",      "overweight",      "outperform",
                                   "strongbuy", "positive",       "marketoutperform",
                                   "sectoroutperform"};
constexpr std::array kHoldLabels = {"neutral",       "hold",        "equalweight",
                                    "marketperform", "sectorperform", "inline",
                                    "sectorweight",  "peerperform"};
constexpr std::array kSellLabels = {"underweight", "underperform", "sell"};

std::string fold_label(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        unsigned char u = static_cast<unsigned char>(c);
        if (c == '-' || std::isspace(u)) continue;
        out += static_cast<char>(std::tolower(u));
    }
    return out;
}

template <std::size_t N>
bool in_array(const std::string& s, const std::array<const char*, N>& arr) {
    return std::find(arr.begin(), arr.end(), s) != arr.end();
}

} // namespace

const char* to_string(Rating r) {
    switch (r) {
    case Rating::Buy: return "Buy";
    case Rating::Hold: return "Hold";
    case Rating::Sell: return "Sell";
    case Rating::Unknown: return "Unknown";
    }
    return "Unknown";
}

Rating standardize_label(const std::string& raw) {
    std::string key = fold_label(raw);
    if (in_array(key, kBuyLabels)) return Rating::Buy;
    if (in_array(key, kHoldLabels)) return Rating::Hold;
    if (in_array(key, kSellLabels)) return Rating::Sell;
    return Rating::Unknown;
}

std::vector<AnalystRec> load_recs(const std::string& path,
                                  const std::set<std::string>* firms_filter, LoadStats* stats) {
    csv::Reader reader(path);
    if (reader.header() != std::vector<std::string>{"date", "firm", "symbol", "label"})
        throw DataError(path + ": expected header date,firm,symbol,label");

    LoadStats local;
    std::map<std::tuple<Date, std::string, std::string>, AnalystRec> byKey;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        ++local.rows_read;
        if (fields.size() != 4 || fields[1].empty() || fields[2].empty()) {
            ++local.malformed;
            continue;
        }
        auto date = Date::parse(fields[0]);
        if (!date) {
            ++local.malformed;
            continue;
        }
        if (firms_filter && !firms_filter->count(fields[1])) {
            ++local.filtered;
            continue;
        }
        AnalystRec rec;
        rec.date = *date;
        rec.firm = fields[1];
        rec.symbol = fields[2];
        rec.raw_label = fields[3];
        rec.verdict = standardize_label(fields[3]);

        auto [it, inserted] = byKey.try_emplace({rec.date, rec.firm, rec.symbol}, rec);
        if (!inserted) {
            ++local.duplicates;
            it->second = rec;
        }
    }

    std::vector<AnalystRec> out;
    out.reserve(byKey.size());
    for (auto& [key, rec] : byKey) {
        switch (rec.verdict) {
        case Rating::Buy: ++local.buy; break;
        case Rating::Hold: ++local.hold; break;
        case Rating::Sell: ++local.sell; break;
        case Rating::Unknown: ++local.unknown; break;
        }
        out.push_back(std::move(rec));
    }
    if (stats) *stats = local;
    return out;
}

std::vector<std::string> top_firms(const std::vector<AnalystRec>& recs, std::size_t k) {
    std::map<std::string, long> counts;
    for (const AnalystRec& rec : recs) ++counts[rec.firm];

    std::vector<std::pair<std::string, long>> ranked(counts.begin(), counts.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (ranked.size() > k) ranked.resize(k);

    std::vector<std::string> firms;
    firms.reserve(ranked.size());
    for (auto& [firm, count] : ranked) firms.push_back(std::move(firm));
    return firms;
}

} // namespace sm::analysts
