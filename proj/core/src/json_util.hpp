#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "carbonsnap/decimal.hpp"
#include "carbonsnap/error.hpp"

namespace carbonsnap::jsonutil {

using json = nlohmann::json;

// Accepts a JSON number or a decimal string. Numbers go through their
// shortest round-trip text so 1.1 becomes exactly 11/10.
inline Decimal to_decimal(const json& value, const std::string& what) {
    if (value.is_number()) return Decimal::parse(value.dump());
    if (value.is_string()) {
        try {
            return Decimal::parse(value.get<std::string>());
        } catch (const ParseError&) {
        }
    }
    throw ValidationError(what + ": expected a number, got " + value.dump());
}

// Terminating decimals become JSON numbers; anything else a string.
inline json number(const Decimal& value) {
    const std::string text = value.to_string();
    if (text.find('/') == std::string::npos) return json::parse(text);
    return text;
}

inline std::string excerpt(std::string_view body, std::size_t limit = 120) {
    std::string out(body.substr(0, limit));
    for (char& c : out)
        if (c == '\n' || c == '\r') c = ' ';
    if (body.size() > limit) out += "...";
    return out;
}

inline const json& require(const json& object, const char* key, const std::string& where) {
    if (!object.is_object() || !object.contains(key))
        throw ValidationError(where + ": missing required key '" + key + "'");
    return object.at(key);
}

inline std::string require_string(const json& object, const char* key, const std::string& where) {
    const json& v = require(object, key, where);
    if (!v.is_string()) throw ValidationError(where + ": '" + key + "' must be a string");
    return v.get<std::string>();
}

}  // namespace carbonsnap::jsonutil
