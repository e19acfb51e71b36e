#include "capit/report.hpp"

#include <json.hpp>

namespace capit {

void Report::add(const std::string& name, bool ok, const std::string& payload) {
  checks.push_back(CheckEntry{name, ok ? "pass" : "fail", payload});
}

void Report::skip(const std::string& name, const std::string& payload) {
  checks.push_back(CheckEntry{name, "skip", payload});
}

bool Report::all_passed() const {
  for (const CheckEntry& c : checks)
    if (c.status == "fail") return false;
  return true;
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["tool"] = "capit";
  j["version"] = kToolVersion;
  j["command"] = command;
  j["input_hash"] = input_hash;
  j["checks"] = nlohmann::ordered_json::array();
  for (const CheckEntry& c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["status"] = c.status;
    if (!c.payload.empty())
      e["payload"] = nlohmann::ordered_json::parse(c.payload);
    j["checks"].push_back(std::move(e));
  }
  j["ok"] = all_passed();
  return j.dump(2) + "\n";
}

std::string Report::to_text() const {
  std::string out;
  out += "capit " + std::string(kToolVersion) + " " + command + " (input " +
         input_hash + ")\n";
  for (const CheckEntry& c : checks) {
    out += "  [" + c.status + "] " + c.name;
    if (!c.payload.empty()) out += " " + c.payload;
    out += "\n";
  }
  out += all_passed() ? "ok\n" : "FAILED\n";
  return out;
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace capit
