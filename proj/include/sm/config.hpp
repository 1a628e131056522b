#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sm/date.hpp"

namespace sm {

// Run settings shared by every subcommand. Flat key=value config file;
// any CLI flag overrides its key. Paths read from a config file resolve
// relative to that file's directory.
struct RunConfig {
    std::string posts;
    std::string clean_cache;
    std::string universe;
    std::string prices;
    std::string analysts;
    std::string lexicon;   // empty = built-in word lists
    std::string ambiguous; // extra ambiguous tickers, optional
    std::string firms;     // firm allow-list, optional
    std::string out_dir = "out";

    std::optional<Date> window_start;
    std::optional<Date> window_end;

    std::string mode = "default"; // "default" | "proximity"
    int min_posts = 1;
    std::vector<int> horizons{7, 30, 90};
    std::vector<std::string> conditions{"none", "ma30", "ma90"};
    double quantile = 0.15;
    std::vector<Date> split_dates{Date::from_ymd(2021, 1, 1)};
    int top_k = 20;       // firms ranked into the report
    int portfolio_k = 50; // portfolio size per source
};

// Reads key=value lines ('#' comments). Unknown keys and bad values are
// usage errors. Relative paths are resolved against the file's directory.
RunConfig load_config(const std::string& path);

// Applies the file values on top of defaults done in load_config; exposed
// for flag handling: parse one key=value pair into cfg.
void apply_config_value(RunConfig& cfg, const std::string& key, const std::string& value,
                        const std::string& where);

// Cross-field checks; throws UsageError on violation.
void validate(const RunConfig& cfg);

} // namespace sm
