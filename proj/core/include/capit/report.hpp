#pragma once

#include <string>
#include <vector>

namespace capit {

inline constexpr const char* kToolVersion = "0.1.0";

struct CheckEntry {
  std::string name;
  std::string status;   // "pass", "fail" or "skip"
  std::string payload;  // pre-rendered JSON value ("" = none)
};

/// Deterministic report: same input and version always serializes to the
/// same bytes (no timestamps).
struct Report {
  std::string command;
  std::string input_hash;
  std::vector<CheckEntry> checks;

  void add(const std::string& name, bool ok, const std::string& payload = "");
  void skip(const std::string& name, const std::string& payload = "");
  bool all_passed() const;

  std::string to_json() const;
  std::string to_text() const;
};

/// FNV-1a (64-bit) of the raw input bytes, lowercase hex.
std::string fnv1a_hex(const std::string& data);

}  // namespace capit
