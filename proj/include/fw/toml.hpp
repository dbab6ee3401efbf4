#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace fw::toml {

/// Value subset sufficient for experiment configs: scalars, strings, and
/// homogeneous arrays. Integers are stored as doubles.
using Value = std::variant<bool, double, std::string, std::vector<double>, std::vector<std::string>>;

using Table = std::map<std::string, Value>;
using Document = std::map<std::string, Table>;

/// Parses `[section]` headers and `key = value` lines. Supports comments
/// introduced by '#', quoted strings, true/false, numbers, and [a, b, c]
/// arrays. Throws std::invalid_argument with a line number on bad input.
Document parse(const std::string& text);

std::string serialize(const Document& doc);

bool has(const Document& doc, const std::string& section, const std::string& key);

// Typed access with clear error messages; *_or variants take defaults.
double get_number(const Document& doc, const std::string& section, const std::string& key);
double get_number_or(const Document& doc, const std::string& section, const std::string& key,
                     double fallback);
std::string get_string(const Document& doc, const std::string& section, const std::string& key);
std::string get_string_or(const Document& doc, const std::string& section, const std::string& key,
                          const std::string& fallback);
bool get_bool_or(const Document& doc, const std::string& section, const std::string& key,
                 bool fallback);
std::vector<double> get_array(const Document& doc, const std::string& section,
                              const std::string& key);
std::vector<std::string> get_string_array(const Document& doc, const std::string& section,
                                          const std::string& key);

}  // namespace fw::toml
