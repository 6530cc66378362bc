#pragma once

#include <string>

#include <json.hpp>

#include "core/instance.hpp"

namespace fairorient {

// Insertion-ordered JSON keeps serialized output stable for golden files.
using Json = nlohmann::ordered_json;

// Rational <-> JSON. Accepted inputs: "p/q" strings, decimal strings
// ("1.25"), integer strings, and integer JSON numbers. Non-integer numeric
// literals are rejected; write them as strings to keep exactness.
Rational rational_from_json(const Json& j, const std::string& where);
Json rational_to_json(const Rational& r);

Instance instance_from_json(const Json& j);
Json instance_to_json(const Instance& inst);

Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);

Allocation allocation_from_json(const Instance& inst, const Json& j);
Json allocation_to_json(const Instance& inst, const Allocation& alloc);

// {"instance": {...}, "allocation": {...}}
std::pair<Instance, Allocation> parse_check_file(const std::string& text);

Json parse_json_text(const std::string& text);
std::string dump_json(const Json& j);  // 2-space indent + trailing newline

// FNV-1a over the canonical compact serialization; 16 hex digits.
std::string digest64(const std::string& bytes);
std::string instance_digest(const Instance& inst);

}  // namespace fairorient
