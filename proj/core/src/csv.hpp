#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace carbonsnap::csv {

// Splits one CSV record. Handles double-quoted fields with "" escapes;
// surrounding whitespace on unquoted fields is trimmed.
// Returns false when a quoted field is left open.
bool split_record(std::string_view line, std::vector<std::string>& fields);

std::string trim(std::string_view s);

// Reads records line by line, tracking the 1-based line number and
// skipping blank lines.
class Reader {
public:
    Reader(std::istream& in, std::string origin) : in_(in), origin_(std::move(origin)) {}

    // Reads the header and checks that every required column is present.
    // Extra columns are an error unless listed in `optional`.
    void read_header(const std::vector<std::string>& required, const std::vector<std::string>& optional = {});

    // False at end of input.
    bool next(std::vector<std::string>& fields);

    std::size_t line() const noexcept { return line_; }
    const std::string& origin() const noexcept { return origin_; }

    // Index of a named column, or npos if an optional column is absent.
    std::size_t column(const std::string& name) const;
    // 1-based column for diagnostics.
    std::size_t column_number(const std::string& name) const { return column(name) + 1; }

    [[noreturn]] void fail(std::size_t column, const std::string& message) const;
    [[noreturn]] void fail(const std::string& column_name, const std::string& message) const;

private:
    std::istream& in_;
    std::string origin_;
    std::size_t line_ = 0;
    std::size_t width_ = 0;
    std::unordered_map<std::string, std::size_t> columns_;
};

}  // namespace carbonsnap::csv
