#pragma once

// Minimal structural validator for the draft-07 subset used by the schemas in
// docs/schemas: type, required, properties, additionalProperties (boolean),
// items, enum, and local "#/definitions/..." references.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace schema {

using nlohmann::json;

inline bool type_matches(const json& value, const std::string& type) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "number") return value.is_number();
    if (type == "integer") return value.is_number_integer();
    if (type == "boolean") return value.is_boolean();
    if (type == "null") return value.is_null();
    return false;
}

inline void validate_node(const json& value, const json& node, const json& root,
                          const std::string& path, std::vector<std::string>& errors) {
    if (node.contains("$ref")) {
        std::string ref = node["$ref"].get<std::string>();
        const std::string prefix = "#/definitions/";
        if (ref.rfind(prefix, 0) != 0) {
            errors.push_back(path + ": unsupported $ref " + ref);
            return;
        }
        validate_node(value, root["definitions"][ref.substr(prefix.size())], root, path, errors);
        return;
    }
    if (node.contains("type") && !type_matches(value, node["type"].get<std::string>())) {
        errors.push_back(path + ": expected type " + node["type"].get<std::string>() + ", got " +
                         value.type_name());
        return;
    }
    if (node.contains("enum")) {
        bool hit = false;
        for (const auto& candidate : node["enum"]) hit |= candidate == value;
        if (!hit) errors.push_back(path + ": value " + value.dump() + " not in enum");
    }
    if (value.is_object()) {
        if (node.contains("required"))
            for (const auto& key : node["required"])
                if (!value.contains(key.get<std::string>()))
                    errors.push_back(path + ": missing required key '" + key.get<std::string>() +
                                     "'");
        const json* properties = node.contains("properties") ? &node["properties"] : nullptr;
        bool strict = node.contains("additionalProperties") &&
                      node["additionalProperties"].is_boolean() &&
                      !node["additionalProperties"].get<bool>();
        for (const auto& [key, sub] : value.items()) {
            if (properties && properties->contains(key))
                validate_node(sub, (*properties)[key], root, path + "." + key, errors);
            else if (strict)
                errors.push_back(path + ": unexpected key '" + key + "'");
        }
    }
    if (value.is_array() && node.contains("items")) {
        std::size_t i = 0;
        for (const auto& element : value)
            validate_node(element, node["items"], root, path + "[" + std::to_string(i++) + "]",
                          errors);
    }
}

inline std::vector<std::string> validate(const json& value, const json& schema_root) {
    std::vector<std::string> errors;
    validate_node(value, schema_root, schema_root, "$", errors);
    return errors;
}

}  // namespace schema
