#pragma once

// Minimal structural validator for the JSON-Schema subset the shipped
// schemas use: type (string or list), properties, required, items (single
// schema), enum, minItems/maxItems. Returns human-readable violations.

#include <string>
#include <vector>

#include <json.hpp>

namespace schemacheck {

inline bool type_matches(const nlohmann::json& v, const std::string& t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "boolean") return v.is_boolean();
    if (t == "integer") return v.is_number_integer() || v.is_number_unsigned();
    if (t == "number") return v.is_number();
    if (t == "null") return v.is_null();
    return false;
}

inline void validate(const nlohmann::json& schema, const nlohmann::json& value,
                     const std::string& path, std::vector<std::string>& errors) {
    if (schema.contains("type")) {
        const auto& t = schema["type"];
        bool ok = false;
        if (t.is_string()) ok = type_matches(value, t.get<std::string>());
        else
            for (const auto& alt : t)
                if (type_matches(value, alt.get<std::string>())) ok = true;
        if (!ok) {
            errors.push_back(path + ": type mismatch (" + t.dump() + ", got " +
                             value.dump().substr(0, 40) + ")");
            return;
        }
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& alt : schema["enum"])
            if (alt == value) ok = true;
        if (!ok) errors.push_back(path + ": value not in enum");
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema["required"])
                if (!value.contains(key.get<std::string>()))
                    errors.push_back(path + ": missing required key " +
                                     key.get<std::string>());
        if (schema.contains("properties"))
            for (auto it = schema["properties"].begin();
                 it != schema["properties"].end(); ++it)
                if (value.contains(it.key()))
                    validate(it.value(), value[it.key()], path + "." + it.key(),
                             errors);
    }
    if (value.is_array()) {
        if (schema.contains("minItems") &&
            value.size() < schema["minItems"].get<std::size_t>())
            errors.push_back(path + ": too few items");
        if (schema.contains("maxItems") &&
            value.size() > schema["maxItems"].get<std::size_t>())
            errors.push_back(path + ": too many items");
        if (schema.contains("items")) {
            std::size_t i = 0;
            for (const auto& item : value)
                validate(schema["items"], item,
                         path + "[" + std::to_string(i++) + "]", errors);
        }
    }
}

inline std::vector<std::string> validate(const nlohmann::json& schema,
                                         const nlohmann::json& value) {
    std::vector<std::string> errors;
    validate(schema, value, "$", errors);
    return errors;
}

} // namespace schemacheck
