#include "csv.hpp"

#include <algorithm>
#include <cctype>

#include "carbonsnap/error.hpp"

namespace carbonsnap::csv {

std::string trim(std::string_view s) {
    auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return std::string(s);
}

bool split_record(std::string_view line, std::vector<std::string>& fields) {
    fields.clear();
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && trim(field).empty()) {
            quoted = true;
            was_quoted = true;
            field.clear();
        } else if (c == ',') {
            fields.push_back(was_quoted ? field : trim(field));
            field.clear();
            was_quoted = false;
        } else {
            if (!(was_quoted && std::isspace(static_cast<unsigned char>(c)))) field += c;
        }
    }
    if (quoted) return false;
    fields.push_back(was_quoted ? field : trim(field));
    return true;
}

void Reader::read_header(const std::vector<std::string>& required, const std::vector<std::string>& optional) {
    std::vector<std::string> header;
    if (!next(header)) throw ParseError(origin_, 0, 0, "missing header row");
    columns_.clear();
    for (std::size_t i = 0; i < header.size(); ++i) {
        std::string name = header[i];
        std::transform(name.begin(), name.end(), name.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        const bool known = std::find(required.begin(), required.end(), name) != required.end() ||
                           std::find(optional.begin(), optional.end(), name) != optional.end();
        if (!known) fail(i + 1, "unexpected column '" + header[i] + "'");
        if (!columns_.emplace(name, i).second) fail(i + 1, "duplicate column '" + header[i] + "'");
    }
    for (const auto& name : required)
        if (!columns_.count(name)) fail(std::size_t{0}, "header is missing column '" + name + "'");
    width_ = header.size();
}

bool Reader::next(std::vector<std::string>& fields) {
    std::string raw;
    while (std::getline(in_, raw)) {
        ++line_;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (line_ == 1 && raw.size() >= 3 && raw.compare(0, 3, "\xEF\xBB\xBF") == 0) raw.erase(0, 3);
        if (trim(raw).empty()) continue;
        if (!split_record(raw, fields)) fail(std::size_t{0}, "unterminated quoted field");
        if (width_ != 0 && fields.size() != width_)
            fail(std::min(fields.size(), width_) + 1,
                 "expected " + std::to_string(width_) + " fields, found " + std::to_string(fields.size()));
        return true;
    }
    return false;
}

std::size_t Reader::column(const std::string& name) const {
    auto it = columns_.find(name);
    return it == columns_.end() ? std::string::npos : it->second;
}

void Reader::fail(std::size_t column, const std::string& message) const {
    throw ParseError(origin_, line_, column, message);
}

void Reader::fail(const std::string& column_name, const std::string& message) const {
    throw ParseError(origin_, line_, column_number(column_name), column_name + ": " + message);
}

}  // namespace carbonsnap::csv
