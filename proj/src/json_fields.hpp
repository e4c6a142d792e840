#pragma once

// Strict JSON field access shared by the scenario, config and trace readers.

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "passafe/errors.hpp"

namespace passafe::detail {

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw FileError("cannot read '" + path + "'");
  return buf.str();
}

inline void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FileError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw FileError("cannot write '" + path + "'");
}

// nlohmann reports "line L, column C" in parse_error::what().
template <typename Error = InputError>
nlohmann::json parse_json_text(std::string_view text, const std::string& what) {
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(what + ": parse error: " + e.what());
  }
}

template <typename Error = InputError>
class BasicFieldReader {
 public:
  BasicFieldReader(const nlohmann::json& object, std::string where)
      : object_(object), where_(std::move(where)) {
    if (!object_.is_object()) fail(where_, "expected a JSON object");
  }

  void allow_only(std::initializer_list<std::string_view> keys) const {
    for (const auto& item : object_.items()) {
      bool known = false;
      for (auto k : keys) known = known || item.key() == k;
      if (!known) fail(path(item.key()), "unknown key");
    }
  }

  bool has(const std::string& key) const { return object_.contains(key); }

  const nlohmann::json& required(const std::string& key) const {
    auto it = object_.find(key);
    if (it == object_.end()) fail(path(key), "missing required field");
    return *it;
  }

  int required_int(const std::string& key) const {
    const nlohmann::json& v = required(key);
    if (!v.is_number_integer()) fail(path(key), "expected an integer");
    const auto wide = v.get<std::int64_t>();
    if (wide < INT32_MIN || wide > INT32_MAX) fail(path(key), "integer out of range");
    return static_cast<int>(wide);
  }

  int optional_int(const std::string& key, int fallback) const {
    return has(key) ? required_int(key) : fallback;
  }

  std::uint64_t required_uint64(const std::string& key) const {
    const nlohmann::json& v = required(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
      fail(path(key), "expected a non-negative integer");
    return v.get<std::uint64_t>();
  }

  double required_number(const std::string& key) const {
    const nlohmann::json& v = required(key);
    if (!v.is_number()) fail(path(key), "expected a number");
    return v.get<double>();
  }

  double optional_number(const std::string& key, double fallback) const {
    return has(key) ? required_number(key) : fallback;
  }

  bool required_bool(const std::string& key) const {
    const nlohmann::json& v = required(key);
    if (!v.is_boolean()) fail(path(key), "expected true or false");
    return v.get<bool>();
  }

  std::string required_string(const std::string& key) const {
    const nlohmann::json& v = required(key);
    if (!v.is_string()) fail(path(key), "expected a string");
    return v.get<std::string>();
  }

  const nlohmann::json& required_array(const std::string& key) const {
    const nlohmann::json& v = required(key);
    if (!v.is_array()) fail(path(key), "expected an array");
    return v;
  }

  const nlohmann::json& required_object(const std::string& key) const {
    const nlohmann::json& v = required(key);
    if (!v.is_object()) fail(path(key), "expected an object");
    return v;
  }

  std::string path(const std::string& key) const { return where_ + "." + key; }

  [[noreturn]] static void fail(const std::string& where, const std::string& message) {
    throw Error(where + ": " + message);
  }

 private:
  const nlohmann::json& object_;
  std::string where_;
};

}  // namespace passafe::detail
