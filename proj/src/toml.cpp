#include "fw/toml.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fw::toml {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw std::invalid_argument("config line " + std::to_string(line) + ": " + msg);
}

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Removes a trailing comment, respecting quoted strings.
std::string strip_comment(const std::string& s) {
  bool in_str = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') in_str = !in_str;
    if (s[i] == '#' && !in_str) return s.substr(0, i);
  }
  return s;
}

bool parse_number(const std::string& tok, double& out) {
  try {
    std::size_t used = 0;
    out = std::stod(tok, &used);
    return used == tok.size();
  } catch (...) {
    return false;
  }
}

Value parse_scalar(const std::string& tok, int line) {
  if (tok.size() >= 2 && tok.front() == '"' && tok.back() == '"') {
    return tok.substr(1, tok.size() - 2);
  }
  if (tok == "true") return true;
  if (tok == "false") return false;
  double num = 0;
  if (parse_number(tok, num)) return num;
  fail(line, "cannot parse value '" + tok + "'");
}

std::vector<std::string> split_items(const std::string& body, int line) {
  std::vector<std::string> items;
  std::string cur;
  bool in_str = false;
  for (char c : body) {
    if (c == '"') in_str = !in_str;
    if (c == ',' && !in_str) {
      items.push_back(strip(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  std::string last = strip(cur);
  if (!last.empty()) items.push_back(last);
  if (in_str) fail(line, "unterminated string");
  return items;
}

Value parse_value(const std::string& tok, int line) {
  if (!tok.empty() && tok.front() == '[') {
    if (tok.back() != ']') fail(line, "unterminated array");
    auto items = split_items(tok.substr(1, tok.size() - 2), line);
    if (items.empty()) return std::vector<double>{};
    if (items.front().empty()) fail(line, "empty array element");
    if (items.front().front() == '"') {
      std::vector<std::string> out;
      for (const auto& it : items) {
        Value v = parse_scalar(it, line);
        if (!std::holds_alternative<std::string>(v)) fail(line, "mixed array types");
        out.push_back(std::get<std::string>(v));
      }
      return out;
    }
    std::vector<double> out;
    for (const auto& it : items) {
      double num = 0;
      if (!parse_number(it, num)) fail(line, "expected number in array, got '" + it + "'");
      out.push_back(num);
    }
    return out;
  }
  return parse_scalar(tok, line);
}

std::string format_number(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    std::ostringstream os;
    os << static_cast<long long>(v);
    return os.str();
  }
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string format_value(const Value& v) {
  std::ostringstream os;
  if (std::holds_alternative<bool>(v)) {
    os << (std::get<bool>(v) ? "true" : "false");
  } else if (std::holds_alternative<double>(v)) {
    os << format_number(std::get<double>(v));
  } else if (std::holds_alternative<std::string>(v)) {
    os << '"' << std::get<std::string>(v) << '"';
  } else if (std::holds_alternative<std::vector<double>>(v)) {
    os << '[';
    const auto& a = std::get<std::vector<double>>(v);
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? ", " : "") << format_number(a[i]);
    os << ']';
  } else {
    os << '[';
    const auto& a = std::get<std::vector<std::string>>(v);
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? ", " : "") << '"' << a[i] << '"';
    os << ']';
  }
  return os.str();
}

}  // namespace

Document parse(const std::string& text) {
  Document doc;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      section = strip(line.substr(1, line.size() - 2));
      if (section.empty()) fail(line_no, "empty section name");
      doc[section];
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
    std::string key = strip(line.substr(0, eq));
    std::string val = strip(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");
    if (section.empty()) fail(line_no, "key outside any [section]");
    doc[section][key] = parse_value(val, line_no);
  }
  return doc;
}

std::string serialize(const Document& doc) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [section, table] : doc) {
    if (!first) os << '\n';
    first = false;
    os << '[' << section << "]\n";
    for (const auto& [key, value] : table) {
      os << key << " = " << format_value(value) << '\n';
    }
  }
  return os.str();
}

bool has(const Document& doc, const std::string& section, const std::string& key) {
  auto s = doc.find(section);
  return s != doc.end() && s->second.count(key) > 0;
}

namespace {
const Value& lookup(const Document& doc, const std::string& section, const std::string& key) {
  auto s = doc.find(section);
  if (s == doc.end()) throw std::invalid_argument("config: missing section [" + section + "]");
  auto k = s->second.find(key);
  if (k == s->second.end()) {
    throw std::invalid_argument("config: missing key '" + key + "' in [" + section + "]");
  }
  return k->second;
}
}  // namespace

double get_number(const Document& doc, const std::string& section, const std::string& key) {
  const Value& v = lookup(doc, section, key);
  if (!std::holds_alternative<double>(v)) {
    throw std::invalid_argument("config: [" + section + "]." + key + " must be a number");
  }
  return std::get<double>(v);
}

double get_number_or(const Document& doc, const std::string& section, const std::string& key,
                     double fallback) {
  return has(doc, section, key) ? get_number(doc, section, key) : fallback;
}

std::string get_string(const Document& doc, const std::string& section, const std::string& key) {
  const Value& v = lookup(doc, section, key);
  if (!std::holds_alternative<std::string>(v)) {
    throw std::invalid_argument("config: [" + section + "]." + key + " must be a string");
  }
  return std::get<std::string>(v);
}

std::string get_string_or(const Document& doc, const std::string& section, const std::string& key,
                          const std::string& fallback) {
  return has(doc, section, key) ? get_string(doc, section, key) : fallback;
}

bool get_bool_or(const Document& doc, const std::string& section, const std::string& key,
                 bool fallback) {
  if (!has(doc, section, key)) return fallback;
  const Value& v = lookup(doc, section, key);
  if (!std::holds_alternative<bool>(v)) {
    throw std::invalid_argument("config: [" + section + "]." + key + " must be a bool");
  }
  return std::get<bool>(v);
}

std::vector<double> get_array(const Document& doc, const std::string& section,
                              const std::string& key) {
  const Value& v = lookup(doc, section, key);
  if (std::holds_alternative<std::vector<double>>(v)) return std::get<std::vector<double>>(v);
  if (std::holds_alternative<double>(v)) return {std::get<double>(v)};
  throw std::invalid_argument("config: [" + section + "]." + key + " must be a numeric array");
}

std::vector<std::string> get_string_array(const Document& doc, const std::string& section,
                                          const std::string& key) {
  const Value& v = lookup(doc, section, key);
  if (std::holds_alternative<std::vector<std::string>>(v)) {
    return std::get<std::vector<std::string>>(v);
  }
  if (std::holds_alternative<std::string>(v)) return {std::get<std::string>(v)};
  throw std::invalid_argument("config: [" + section + "]." + key + " must be a string array");
}

}  // namespace fw::toml
