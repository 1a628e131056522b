#include "sm/report.hpp"

#include <cstdio>
#include <fstream>

#include "sm/csv.hpp"
#include "sm/errors.hpp"

namespace sm::report {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write output file: " + path);
    return out;
}

} // namespace

std::string fmt3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string fmt3_opt(const std::optional<double>& v) { return v ? fmt3(*v) : "n/a"; }

void write_metrics_csv(const std::string& path, const std::vector<backtest::EvalReport>& cells) {
    std::ofstream out = open_out(path);
    out << "source,condition,horizon,n_signals,n_evaluable,accuracy,mean_return\n";
    for (const auto& c : cells) {
        out << csv::escape_field(c.source) << ',' << c.condition << ',' << c.horizon << ','
            << c.n_signals << ',' << c.n_evaluable << ',' << fmt3_opt(c.accuracy) << ','
            << fmt3_opt(c.mean_return) << '\n';
    }
}

void write_detection_csv(const std::string& path,
                         const std::vector<backtest::DetectionRow>& rows,
                         std::size_t top_set_size) {
    std::ofstream out = open_out(path);
    out << "source,unique_recommended,detected,top_set_size\n";
    for (const auto& r : rows)
        out << csv::escape_field(r.source) << ',' << r.unique_recommended << ',' << r.detected
            << ',' << top_set_size << '\n';
}

void write_sectors_csv(
    const std::string& path, const std::vector<std::string>& sector_columns,
    const std::vector<std::pair<std::string, std::map<std::string, long>>>& rows) {
    std::ofstream out = open_out(path);
    out << "source";
    for (const std::string& sector : sector_columns) out << ',' << csv::escape_field(sector);
    out << '\n';
    for (const auto& [source, tally] : rows) {
        out << csv::escape_field(source);
        for (const std::string& sector : sector_columns) {
            auto it = tally.find(sector);
            out << ',' << (it == tally.end() ? 0L : it->second);
        }
        out << '\n';
    }
}

void write_periods_csv(const std::string& path,
                       const std::vector<std::pair<std::string, backtest::EvalReport>>& rows) {
    std::ofstream out = open_out(path);
    out << "period,source,condition,horizon,n_signals,n_evaluable,accuracy,mean_return\n";
    for (const auto& [period, c] : rows) {
        out << period << ',' << csv::escape_field(c.source) << ',' << c.condition << ','
            << c.horizon << ',' << c.n_signals << ',' << c.n_evaluable << ','
            << fmt3_opt(c.accuracy) << ',' << fmt3_opt(c.mean_return) << '\n';
    }
}

void write_summary_md(const std::string& path, const Summary& s) {
    std::ofstream out = open_out(path);
    const std::size_t H = s.horizons.size();

    out << "# Buy-signal backtest\n\n";
    out << "- Window: " << s.window_start.to_string() << " .. " << s.window_end.to_string()
        << "\n";
    out << "- Horizons (days):";
    for (std::size_t h = 0; h < H; ++h) out << (h ? "," : "") << ' ' << s.horizons[h];
    out << "\n";
    out << "- Consensus floor: " << s.min_posts << " post(s)\n";
    out << "- Top quantile: " << fmt3(s.quantile) << "\n\n";

    out << "## Signal performance\n\n";
    out << "Accuracy is the fraction of evaluable signals with a strictly positive\n"
           "forward return; returns are close-to-close percent changes.\n\n";
    out << "| Source | Condition | Signals |";
    for (int h : s.horizons) out << " Acc " << h << "d | Ret " << h << "d |";
    out << "\n|---|---|---:|";
    for (std::size_t h = 0; h < H; ++h) out << "---:|---:|";
    out << "\n";
    for (std::size_t row = 0; row + H <= s.metrics.size(); row += H) {
        const auto& first = s.metrics[row];
        out << "| " << first.source << " | " << first.condition << " | " << first.n_signals
            << " |";
        for (std::size_t h = 0; h < H; ++h) {
            const auto& cell = s.metrics[row + h];
            out << ' ' << fmt3_opt(cell.accuracy) << " | " << fmt3_opt(cell.mean_return) << " |";
        }
        out << "\n";
    }
    out << "\n";

    out << "## Top-performer detection\n\n";
    out << "Window " << s.top.window_start.to_string() << " .. " << s.top.window_end.to_string()
        << ": " << s.top.symbols.size() << " of " << s.ranked_symbols
        << " eligible symbols (total-change cutoff " << fmt3_opt(s.top.total_change_cutoff)
        << "% of initial, median 3-month cutoff " << fmt3_opt(s.top.median_3m_cutoff) << "%).\n\n";
    if (!s.top.symbols.empty() && s.top.symbols.size() <= 25) {
        out << "Top set:";
        bool first = true;
        for (const std::string& symbol : s.top.symbols) {
            out << (first ? " " : ", ") << symbol;
            first = false;
        }
        out << "\n\n";
    }
    out << "| Source | Unique recommended | Detected |\n|---|---:|---:|\n";
    for (const auto& r : s.detection)
        out << "| " << r.source << " | " << r.unique_recommended << " | " << r.detected << " |\n";
    out << "\n";

    out << "## Portfolio sectors (top " << s.portfolio_k << " symbols by buy-signal count)\n\n";
    out << "| Source |";
    for (const std::string& sector : s.sector_columns)
        out << ' ' << (sector.empty() ? "(none)" : sector) << " |";
    out << "\n|---|";
    for (std::size_t i = 0; i < s.sector_columns.size(); ++i) out << "---:|";
    out << "\n";
    for (const auto& [source, tally] : s.sectors) {
        out << "| " << source << " |";
        for (const std::string& sector : s.sector_columns) {
            auto it = tally.find(sector);
            out << ' ' << (it == tally.end() ? 0L : it->second) << " |";
        }
        out << "\n";
    }
    for (const auto& [source, size] : s.portfolio_sizes)
        if (size < static_cast<long>(s.portfolio_k))
            out << "\n" << source << " has only " << size << " recommended symbol(s).\n";
    out << "\n";

    if (!s.periods.empty()) {
        out << "## Periods (condition: none)\n\n";
        out << "| Period | Source | Signals |";
        for (int h : s.horizons) out << " Acc " << h << "d | Ret " << h << "d |";
        out << "\n|---|---|---:|";
        for (std::size_t h = 0; h < H; ++h) out << "---:|---:|";
        out << "\n";
        // periods arrive horizon-minor within each (period, source, condition)
        for (std::size_t i = 0; i < s.periods.size();) {
            if (s.periods[i].second.condition != "none") {
                ++i;
                continue;
            }
            const std::string& label = s.periods[i].first;
            const auto& first = s.periods[i].second;
            out << "| " << label << " | " << first.source << " | " << first.n_signals << " |";
            for (std::size_t h = 0; h < H && i < s.periods.size(); ++h, ++i) {
                const auto& cell = s.periods[i].second;
                out << ' ' << fmt3_opt(cell.accuracy) << " | " << fmt3_opt(cell.mean_return)
                    << " |";
            }
            out << "\n";
        }
        out << "\nThe baseline rows average the forward return over every (symbol,\n"
               "trading day) of the period, the all-stocks reference.\n";
    }
}

} // namespace sm::report
