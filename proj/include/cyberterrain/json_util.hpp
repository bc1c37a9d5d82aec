#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "cyberterrain/error.hpp"

namespace cyberterrain::detail {

using Json = nlohmann::ordered_json;

inline Json parse_json(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(what + ": " + e.what());
    }
}

inline const Json& require(const Json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) throw ParseError(where + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
    return *it;
}

inline std::string as_string(const Json& v, const std::string& where) {
    if (!v.is_string()) throw ParseError(where + ": expected a string");
    return v.get<std::string>();
}

inline double as_number(const Json& v, const std::string& where) {
    if (!v.is_number()) throw ParseError(where + ": expected a number");
    return v.get<double>();
}

inline std::int64_t as_integer(const Json& v, const std::string& where) {
    if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
    return v.get<std::int64_t>();
}

inline std::uint64_t as_count(const Json& v, const std::string& where) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
        return static_cast<std::uint64_t>(v.get<std::int64_t>());
    throw ParseError(where + ": expected a non-negative integer");
}

inline bool as_bool(const Json& v, const std::string& where) {
    if (!v.is_boolean()) throw ParseError(where + ": expected a boolean");
    return v.get<bool>();
}

inline const Json& as_array(const Json& v, const std::string& where) {
    if (!v.is_array()) throw ParseError(where + ": expected an array");
    return v;
}

}  // namespace cyberterrain::detail
