#pragma once

#include "json.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace minkhelix {

/// Schemas shipped in schemas/, by file stem ("helix_report", "profile_spec", ...).
const nlohmann::json& schema(std::string_view name);

/// Checks `instance` against the subset of JSON Schema used by the shipped
/// schemas: type, enum, required, properties, additionalProperties, items,
/// minItems, maxItems, minimum, maximum, exclusiveMinimum. Returns one
/// message per violation, prefixed with a JSON pointer.
std::vector<std::string> validate_json(const nlohmann::json& instance, const nlohmann::json& schema);

/// validate_json against a shipped schema; throws InvalidSpec listing the violations.
void require_valid(const nlohmann::json& instance, std::string_view schema_name);

}  // namespace minkhelix
