#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sm/date.hpp"

namespace sm::ingest {

// One submission as it appears in a JSON Lines dump. Optional fields are
// empty when absent.
struct RawSubmission {
    std::string id;
    std::int64_t created_utc = 0;
    std::string title;
    std::string selftext;
    std::string link_flair_text;
    int score = 0;
    std::string removed_by_category;

    bool operator==(const RawSubmission&) const = default;
};

enum class FlairCategory { Proactive, Reactive, Unknown };

struct FlairClass {
    FlairCategory category = FlairCategory::Unknown;
    std::string label; // verbatim flair text as posted
};

// A visible, proactively-flaired submission with normalized text.
struct CleanPost {
    std::string id;
    Date date;
    std::string text;
    std::string flair;
    int score = 0;

    bool operator==(const CleanPost&) const = default;
};

// False when the post was removed or deleted: either the removal marker is
// set or the body is exactly "[removed]" / "[deleted]".
bool is_visible(const RawSubmission& sub);

// Case-insensitive exact match against the proactive / reactive flair lists;
// anything else (including no flair) is Unknown.
FlairClass classify_flair(std::string_view flair_text);

// Parses one JSONL record. Empty result for lines that are not valid JSON
// objects or lack a usable id / created_utc.
std::optional<RawSubmission> parse_submission(std::string_view line);

// Streams submissions out of a JSONL dump, skipping malformed lines.
class SubmissionReader {
public:
    explicit SubmissionReader(const std::string& path);

    std::optional<RawSubmission> next();

    long skipped_lines() const { return skipped_; }

private:
    std::ifstream in_;
    long skipped_ = 0;
};

struct CleanStats {
    long read = 0;
    long malformed = 0;
    long invisible = 0;
    long reactive = 0;
    long unknown_flair = 0;
    long retained = 0;

    bool operator==(const CleanStats&) const = default;
};

// Full cleaning pass over a dump: load, drop invisible, keep proactive
// flairs, normalize text. Output order follows the input file.
std::vector<CleanPost> clean_pipeline(const std::string& path, CleanStats* stats = nullptr);

// The same pass over in-memory JSONL lines (empty lines not allowed here;
// the file loader already drops them).
std::vector<CleanPost> clean_lines(const std::vector<std::string>& lines,
                                   CleanStats* stats = nullptr);

// Same filter and transform applied to already-loaded submissions.
std::optional<CleanPost> clean_one(const RawSubmission& sub);

// CleanPost cache file I/O (JSON Lines).
void write_clean_posts(const std::string& path, const std::vector<CleanPost>& posts);
std::vector<CleanPost> read_clean_posts(const std::string& path);

} // namespace sm::ingest
