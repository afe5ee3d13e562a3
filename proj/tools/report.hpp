#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "wbell/selection.hpp"

// Byte-stable report emission. JSON key order is insertion order and every
// floating-point field is written with 17 significant digits via
// std::to_chars, so identical runs serialize identically regardless of
// locale or library version.

namespace wbell::report {

using Json = nlohmann::ordered_json;

struct RunReport {
  std::string command;
  Json params = Json::object();
  Json results = Json::object();
  std::optional<std::uint64_t> seed;
};

/// 17-significant-digit, locale-independent rendering of a double.
std::string format_double(double value);

/// Pretty-printed JSON with deterministic float formatting.
std::string to_json(const RunReport& report);

/// Flat "path = value" lines covering every scalar leaf of the report.
std::string to_text(const RunReport& report);

Json sign_linear_json(const selection::SignLinear& value);

}  // namespace wbell::report
