#include "sm/ingest.hpp"

#include <array>
#include <cctype>

#include <json.hpp>

#include "sm/errors.hpp"
#include "sm/parallel.hpp"
#include "sm/text.hpp"

namespace sm::ingest {

namespace {

using json = nlohmann::json;

constexpr std::array kProactive = {
    "Discussion", "YOLO",       "DD",     "News",       "Options",          "Stocks",
    "Technical Analysis",       "Fundamentals",          "Chart",            "Technicals",
    "Daily Discussion",         "Futures",
};

constexpr std::array kReactive = {
    "Meme", "Gain", "Loss", "Shitpost", "Satire", "Storytime", "Donation",
};

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    }
    return true;
}

std::string get_string(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) return {};
    return it->get<std::string>();
}

} // namespace

bool is_visible(const RawSubmission& sub) {
    if (!sub.removed_by_category.empty()) return false;
    return sub.selftext != "[removed]" && sub.selftext != "[deleted]";
}

FlairClass classify_flair(std::string_view flair_text) {
    for (const char* kind : kProactive)
        if (iequals(flair_text, kind)) return {FlairCategory::Proactive, std::string(flair_text)};
    for (const char* kind : kReactive)
        if (iequals(flair_text, kind)) return {FlairCategory::Reactive, std::string(flair_text)};
    return {FlairCategory::Unknown, std::string(flair_text)};
}

std::optional<RawSubmission> parse_submission(std::string_view line) {
    json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (obj.is_discarded() || !obj.is_object()) return std::nullopt;

    RawSubmission sub;
    sub.id = get_string(obj, "id");
    if (sub.id.empty()) return std::nullopt;

    if (auto it = obj.find("created_utc"); it != obj.end() && it->is_number())
        sub.created_utc = static_cast<std::int64_t>(it->get<double>());
    if (sub.created_utc <= 0) return std::nullopt;

    sub.title = get_string(obj, "title");
    sub.selftext = get_string(obj, "selftext");
    sub.link_flair_text = get_string(obj, "link_flair_text");
    sub.removed_by_category = get_string(obj, "removed_by_category");
    if (auto it = obj.find("score"); it != obj.end() && it->is_number())
        sub.score = static_cast<int>(it->get<double>());
    return sub;
}

SubmissionReader::SubmissionReader(const std::string& path) : in_(path) {
    if (!in_) throw DataError("cannot open posts file: " + path);
}

std::optional<RawSubmission> SubmissionReader::next() {
    std::string line;
    while (std::getline(in_, line)) {
        if (line.empty()) continue;
        if (auto sub = parse_submission(line)) return sub;
        ++skipped_;
    }
    return std::nullopt;
}

std::optional<CleanPost> clean_one(const RawSubmission& sub) {
    if (!is_visible(sub)) return std::nullopt;
    FlairClass flair = classify_flair(sub.link_flair_text);
    if (flair.category != FlairCategory::Proactive) return std::nullopt;
    CleanPost post;
    post.id = sub.id;
    post.date = Date::from_epoch_seconds(sub.created_utc);
    post.text = text::normalize_text(sub.title, sub.selftext);
    post.flair = flair.label;
    post.score = sub.score;
    return post;
}

std::vector<CleanPost> clean_pipeline(const std::string& path, CleanStats* stats) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open posts file: " + path);

    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) lines.push_back(std::move(line));

    return clean_lines(lines, stats);
}

std::vector<CleanPost> clean_lines(const std::vector<std::string>& lines, CleanStats* stats) {
    const std::int64_t n = static_cast<std::int64_t>(lines.size());
    enum class Drop { None, Malformed, Invisible, Reactive, Unknown };
    std::vector<std::optional<CleanPost>> slots(lines.size());
    std::vector<Drop> drops(lines.size(), Drop::None);

#pragma omp parallel for schedule(static) num_threads(thread_cap())
    for (std::int64_t i = 0; i < n; ++i) {
        auto sub = parse_submission(lines[i]);
        if (!sub) {
            drops[i] = Drop::Malformed;
            continue;
        }
        if (!is_visible(*sub)) {
            drops[i] = Drop::Invisible;
            continue;
        }
        FlairCategory cat = classify_flair(sub->link_flair_text).category;
        if (cat == FlairCategory::Reactive) {
            drops[i] = Drop::Reactive;
            continue;
        }
        if (cat == FlairCategory::Unknown) {
            drops[i] = Drop::Unknown;
            continue;
        }
        slots[i] = clean_one(*sub);
    }

    CleanStats local;
    local.read = n;
    std::vector<CleanPost> out;
    for (std::int64_t i = 0; i < n; ++i) {
        switch (drops[i]) {
        case Drop::Malformed: ++local.malformed; break;
        case Drop::Invisible: ++local.invisible; break;
        case Drop::Reactive: ++local.reactive; break;
        case Drop::Unknown: ++local.unknown_flair; break;
        case Drop::None:
            if (slots[i]) {
                ++local.retained;
                out.push_back(std::move(*slots[i]));
            }
            break;
        }
    }
    if (stats) *stats = local;
    return out;
}

void write_clean_posts(const std::string& path, const std::vector<CleanPost>& posts) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write clean-post cache: " + path);
    for (const CleanPost& p : posts) {
        json obj;
        obj["id"] = p.id;
        obj["date"] = p.date.to_string();
        obj["text"] = p.text;
        obj["flair"] = p.flair;
        obj["score"] = p.score;
        out << obj.dump() << '\n';
    }
}

std::vector<CleanPost> read_clean_posts(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open clean-post cache: " + path);
    std::vector<CleanPost> out;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json obj = json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object())
            throw DataError(path + ":" + std::to_string(line_no) + ": malformed cache line");
        CleanPost p;
        p.id = obj.value("id", std::string{});
        auto date = Date::parse(obj.value("date", std::string{}));
        if (p.id.empty() || !date)
            throw DataError(path + ":" + std::to_string(line_no) + ": malformed cache line");
        p.date = *date;
        p.text = obj.value("text", std::string{});
        p.flair = obj.value("flair", std::string{});
        p.score = obj.value("score", 0);
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace sm::ingest
