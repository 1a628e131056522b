#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sm/backtest.hpp"

namespace sm::report {

// Fixed three decimal places; the format every percent and fraction uses.
std::string fmt3(double v);

// fmt3 or "n/a" for undefined cells.
std::string fmt3_opt(const std::optional<double>& v);

// source,condition,horizon,n_signals,n_evaluable,accuracy,mean_return
void write_metrics_csv(const std::string& path, const std::vector<backtest::EvalReport>& cells);

// source,unique_recommended,detected,top_set_size
void write_detection_csv(const std::string& path,
                         const std::vector<backtest::DetectionRow>& rows,
                         std::size_t top_set_size);

// source x sector count matrix; columns are the given sector names.
void write_sectors_csv(
    const std::string& path, const std::vector<std::string>& sector_columns,
    const std::vector<std::pair<std::string, std::map<std::string, long>>>& rows);

// period,source,condition,horizon,n_signals,n_evaluable,accuracy,mean_return
void write_periods_csv(const std::string& path,
                       const std::vector<std::pair<std::string, backtest::EvalReport>>& rows);

struct Summary {
    Date window_start;
    Date window_end;
    std::vector<int> horizons;
    std::vector<std::string> conditions;
    int min_posts = 1;
    double quantile = 0.15;
    std::size_t portfolio_k = 50;

    std::vector<backtest::EvalReport> metrics; // evaluate_grid layout
    std::vector<backtest::DetectionRow> detection;
    backtest::TopSet top;
    std::size_t ranked_symbols = 0; // symbols eligible for the top set

    std::vector<std::string> sector_columns;
    std::vector<std::pair<std::string, std::map<std::string, long>>> sectors;
    std::vector<std::pair<std::string, long>> portfolio_sizes; // symbols tallied per source

    // (period label, cell); includes the "baseline" source rows
    std::vector<std::pair<std::string, backtest::EvalReport>> periods;
};

// Human-readable digest of the whole run.
void write_summary_md(const std::string& path, const Summary& s);

} // namespace sm::report
