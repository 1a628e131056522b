#pragma once

#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace sm::csv {

// Splits one CSV record. Handles double-quoted fields with "" escapes;
// fields may not span lines.
std::vector<std::string> split_line(std::string_view line);

// Quotes a field only when it contains a comma, quote, or newline.
std::string escape_field(std::string_view field);

std::string join_line(const std::vector<std::string>& fields);

// Line-oriented CSV file reader with a mandatory header row.
class Reader {
public:
    explicit Reader(const std::string& path);

    const std::vector<std::string>& header() const { return header_; }

    // Returns false at end of file. Skips blank lines.
    bool next(std::vector<std::string>& fields);

    // 1-based line number of the record last returned by next().
    long line_number() const { return line_no_; }

private:
    std::ifstream in_;
    std::vector<std::string> header_;
    long line_no_ = 0;
};

} // namespace sm::csv
