#include "sm/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "sm/errors.hpp"

namespace sm {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        std::string part = trim(s.substr(pos, comma - pos));
        if (!part.empty()) out.push_back(part);
        pos = comma + 1;
    }
    return out;
}

int parse_int(const std::string& value, const std::string& where) {
    errno = 0;
    char* end = nullptr;
    long v = std::strtol(value.c_str(), &end, 10);
    if (errno != 0 || end == value.c_str() || *end != '\0')
        throw UsageError(where + ": expected an integer, got '" + value + "'");
    return static_cast<int>(v);
}

double parse_double(const std::string& value, const std::string& where) {
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(value.c_str(), &end);
    if (errno != 0 || end == value.c_str() || *end != '\0')
        throw UsageError(where + ": expected a number, got '" + value + "'");
    return v;
}

Date parse_date(const std::string& value, const std::string& where) {
    auto d = Date::parse(value);
    if (!d) throw UsageError(where + ": expected a YYYY-MM-DD date, got '" + value + "'");
    return *d;
}

} // namespace

void apply_config_value(RunConfig& cfg, const std::string& key, const std::string& value,
                        const std::string& where) {
    if (key == "posts") cfg.posts = value;
    else if (key == "clean_cache") cfg.clean_cache = value;
    else if (key == "universe") cfg.universe = value;
    else if (key == "prices") cfg.prices = value;
    else if (key == "analysts") cfg.analysts = value;
    else if (key == "lexicon") cfg.lexicon = value;
    else if (key == "ambiguous") cfg.ambiguous = value;
    else if (key == "firms") cfg.firms = value;
    else if (key == "out_dir") cfg.out_dir = value;
    else if (key == "start") cfg.window_start = parse_date(value, where);
    else if (key == "end") cfg.window_end = parse_date(value, where);
    else if (key == "mode") cfg.mode = value;
    else if (key == "min_posts") cfg.min_posts = parse_int(value, where);
    else if (key == "horizons") {
        cfg.horizons.clear();
        for (const std::string& part : split_commas(value))
            cfg.horizons.push_back(parse_int(part, where));
    } else if (key == "conditions") {
        cfg.conditions = split_commas(value);
    } else if (key == "quantile") {
        cfg.quantile = parse_double(value, where);
    } else if (key == "split") {
        cfg.split_dates.clear();
        if (value != "none")
            for (const std::string& part : split_commas(value))
                cfg.split_dates.push_back(parse_date(part, where));
    } else if (key == "top_k") {
        cfg.top_k = parse_int(value, where);
    } else if (key == "portfolio_k") {
        cfg.portfolio_k = parse_int(value, where);
    } else {
        throw UsageError(where + ": unknown config key '" + key + "'");
    }
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path);
    std::filesystem::path dir = std::filesystem::path(path).parent_path();

    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string where = path + ":" + std::to_string(lineno);
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string s = trim(line);
        if (s.empty()) continue;
        auto eq = s.find('=');
        if (eq == std::string::npos) throw UsageError(where + ": expected key=value");
        apply_config_value(cfg, trim(s.substr(0, eq)), trim(s.substr(eq + 1)), where);
    }

    auto resolve = [&dir](std::string& p) {
        if (p.empty()) return;
        std::filesystem::path fp(p);
        if (fp.is_relative()) p = (dir / fp).lexically_normal().string();
    };
    resolve(cfg.posts);
    resolve(cfg.clean_cache);
    resolve(cfg.universe);
    resolve(cfg.prices);
    resolve(cfg.analysts);
    resolve(cfg.lexicon);
    resolve(cfg.ambiguous);
    resolve(cfg.firms);
    resolve(cfg.out_dir);
    return cfg;
}

void validate(const RunConfig& cfg) {
    if (cfg.mode != "default" && cfg.mode != "proximity")
        throw UsageError("mode must be 'default' or 'proximity', got '" + cfg.mode + "'");
    if (cfg.min_posts < 1) throw UsageError("min_posts must be at least 1");
    if (cfg.horizons.empty()) throw UsageError("horizons must not be empty");
    for (int h : cfg.horizons)
        if (h <= 0) throw UsageError("horizons must be positive");
    if (cfg.conditions.empty()) throw UsageError("conditions must not be empty");
    for (const std::string& c : cfg.conditions)
        if (c != "none" && c != "ma30" && c != "ma90")
            throw UsageError("unknown condition '" + c + "' (use none, ma30, ma90)");
    if (!(cfg.quantile > 0.0 && cfg.quantile <= 1.0))
        throw UsageError("quantile must be in (0, 1]");
    if (cfg.window_start && cfg.window_end && !(*cfg.window_start < *cfg.window_end))
        throw UsageError("window start must precede end");
    if (cfg.top_k < 1) throw UsageError("top_k must be at least 1");
    if (cfg.portfolio_k < 1) throw UsageError("portfolio_k must be at least 1");
}

} // namespace sm
