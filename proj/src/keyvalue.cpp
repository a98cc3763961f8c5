// SPDX-License-Identifier: Apache-2.0

#include "lcris/keyvalue.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace lcris
{

namespace
{

std::string trim(const std::string &s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> to_double(const std::string &text)
{
  if (text.empty())
    return std::nullopt;
  errno = 0;
  char *end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (errno != 0 || end != text.c_str() + text.size())
    return std::nullopt;
  return value;
}

std::string format_message(const std::string &key, int line, const std::string &message)
{
  std::ostringstream os;
  if (line > 0)
    os << "line " << line << ": ";
  if (!key.empty())
    os << "'" << key << "': ";
  os << message;
  return os.str();
}

} // namespace

ParseError::ParseError(Kind kind, std::string key, int line, const std::string &message)
    : std::runtime_error(format_message(key, line, message)), kind_(kind), key_(std::move(key)),
      line_(line)
{
}

const char *to_string(ParseError::Kind kind)
{
  switch (kind)
  {
  case ParseError::Kind::syntax:
    return "syntax";
  case ParseError::Kind::missing_field:
    return "missing-field";
  case ParseError::Kind::type_mismatch:
    return "type-mismatch";
  case ParseError::Kind::invariant:
    return "invariant-violation";
  case ParseError::Kind::io:
    return "io";
  }
  return "unknown";
}

KeyValueDocument KeyValueDocument::parse(const std::string &text)
{
  KeyValueDocument doc;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw))
  {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(ParseError::Kind::syntax, "", line_no, "expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ParseError(ParseError::Kind::syntax, "", line_no, "empty key");
    if (doc.entries_.count(key))
      throw ParseError(ParseError::Kind::syntax, key, line_no,
                       "duplicate key (first defined on line " +
                           std::to_string(doc.entries_.at(key).line) + ")");
    doc.entries_.emplace(key, Entry{std::move(value), line_no});
    doc.order_.push_back(std::move(key));
  }
  return doc;
}

KeyValueDocument KeyValueDocument::load(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
    throw ParseError(ParseError::Kind::io, "", 0, "cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

int KeyValueDocument::line_of(const std::string &key) const
{
  const auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second.line;
}

const KeyValueDocument::Entry &KeyValueDocument::require(const std::string &key) const
{
  const auto it = entries_.find(key);
  if (it == entries_.end())
    throw ParseError(ParseError::Kind::missing_field, key, 0, "required key is missing");
  return it->second;
}

std::string KeyValueDocument::get_string(const std::string &key) const
{
  return require(key).value;
}

double KeyValueDocument::get_double(const std::string &key) const
{
  const Entry &e = require(key);
  const auto value = to_double(e.value);
  if (!value)
    throw ParseError(ParseError::Kind::type_mismatch, key, e.line,
                     "expected a number, got '" + e.value + "'");
  return *value;
}

long KeyValueDocument::get_int(const std::string &key) const
{
  const Entry &e = require(key);
  const auto value = to_double(e.value);
  if (!value || *value != static_cast<double>(static_cast<long>(*value)))
    throw ParseError(ParseError::Kind::type_mismatch, key, e.line,
                     "expected an integer, got '" + e.value + "'");
  return static_cast<long>(*value);
}

std::vector<double> KeyValueDocument::get_double_list(const std::string &key) const
{
  const Entry &e = require(key);
  std::vector<double> out;
  std::istringstream in(e.value);
  std::string item;
  while (std::getline(in, item, ','))
  {
    const auto value = to_double(trim(item));
    if (!value)
      throw ParseError(ParseError::Kind::type_mismatch, key, e.line,
                       "expected a comma-separated list of numbers, got '" + e.value + "'");
    out.push_back(*value);
  }
  return out;
}

std::optional<std::string> KeyValueDocument::find_string(const std::string &key) const
{
  if (!contains(key))
    return std::nullopt;
  return get_string(key);
}

std::optional<double> KeyValueDocument::find_double(const std::string &key) const
{
  if (!contains(key))
    return std::nullopt;
  return get_double(key);
}

std::vector<std::string> KeyValueDocument::keys_with_prefix(const std::string &prefix) const
{
  std::vector<std::string> out;
  std::copy_if(order_.begin(), order_.end(), std::back_inserter(out),
               [&](const std::string &k) { return k.rfind(prefix, 0) == 0; });
  return out;
}

std::vector<std::string> KeyValueDocument::keys() const { return order_; }

} // namespace lcris
