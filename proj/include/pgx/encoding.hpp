#pragma once

// Small text helpers shared by the tuple and presentation encodings.

#include <array>
#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "pgx/modarith.hpp"

namespace pgx {

template <std::size_t N>
std::string join_ints(const std::array<i64, N>& a) {
  std::string out;
  for (std::size_t i = 0; i < N; ++i) {
    if (i) out += ',';
    out += std::to_string(a[i]);
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n' ||
                        s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline bool looks_like_json(std::string_view text) {
  text = trim(text);
  return !text.empty() && text.front() == '{';
}

inline i64 parse_int(std::string_view field, const char* what) {
  field = trim(field);
  i64 v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw std::invalid_argument(std::string("malformed ") + what + ": bad integer '" +
                                std::string(field) + "'");
  }
  return v;
}

/// Exactly N comma-separated integers.
template <std::size_t N>
std::array<i64, N> parse_positional(std::string_view text, const char* what) {
  std::array<i64, N> out{};
  std::size_t count = 0;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string_view field =
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (count == N) {
      throw std::invalid_argument(std::string("malformed ") + what + ": expected " +
                                  std::to_string(N) + " fields");
    }
    out[count++] = parse_int(field, what);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (count != N) {
    throw std::invalid_argument(std::string("malformed ") + what + ": expected " +
                                std::to_string(N) + " fields, got " + std::to_string(count));
  }
  return out;
}

/// JSON object carrying exactly the given integer keys.
template <std::size_t N>
std::array<i64, N> parse_json_fields(std::string_view text, const std::array<const char*, N>& keys,
                                     const char* what) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed ") + what + " JSON: " + e.what());
  }
  if (!j.is_object() || j.size() != N) {
    throw std::invalid_argument(std::string("malformed ") + what + " JSON: expected an object with " +
                                std::to_string(N) + " fields");
  }
  std::array<i64, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    auto it = j.find(keys[i]);
    if (it == j.end() || !it->is_number_integer()) {
      throw std::invalid_argument(std::string("malformed ") + what + " JSON: missing integer field '" +
                                  keys[i] + "'");
    }
    out[i] = it->template get<i64>();
  }
  return out;
}

}  // namespace pgx
