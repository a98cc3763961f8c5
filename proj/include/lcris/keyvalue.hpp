// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcris
{

/// Error tied to a position in a structured text file. `line` is 0 when the
/// problem is not attached to a specific line (e.g. a missing key).
class ParseError : public std::runtime_error
{
public:
  enum class Kind
  {
    syntax,
    missing_field,
    type_mismatch,
    invariant,
    io,
  };

  ParseError(Kind kind, std::string key, int line, const std::string &message);

  Kind kind() const { return kind_; }
  const std::string &key() const { return key_; }
  int line() const { return line_; }

private:
  Kind kind_;
  std::string key_;
  int line_;
};

const char *to_string(ParseError::Kind kind);

/// Flat `key = value` document. `#` starts a comment, blank lines are ignored
/// and a repeated key is a syntax error.
class KeyValueDocument
{
public:
  static KeyValueDocument parse(const std::string &text);
  static KeyValueDocument load(const std::filesystem::path &path);

  bool empty() const { return entries_.empty(); }
  bool contains(const std::string &key) const { return entries_.count(key) != 0; }
  int line_of(const std::string &key) const;

  std::string get_string(const std::string &key) const;
  double get_double(const std::string &key) const;
  long get_int(const std::string &key) const;
  std::vector<double> get_double_list(const std::string &key) const;

  std::optional<std::string> find_string(const std::string &key) const;
  std::optional<double> find_double(const std::string &key) const;

  /// Keys beginning with `prefix`, in file order.
  std::vector<std::string> keys_with_prefix(const std::string &prefix) const;
  std::vector<std::string> keys() const;

private:
  struct Entry
  {
    std::string value;
    int line = 0;
  };

  const Entry &require(const std::string &key) const;

  std::map<std::string, Entry> entries_;
  std::vector<std::string> order_;
};

} // namespace lcris
