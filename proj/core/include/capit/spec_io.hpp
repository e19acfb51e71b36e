#pragma once

#include <string>
#include <vector>

#include "capit/extension.hpp"

namespace capit {

/// On-disk description of one extension: the two groups, the action
/// matrices, and the sparse cocycle table (omitted entries are zero).
struct ExtensionSpec {
  IVec g_invariants;
  IVec a_invariants;
  std::vector<std::vector<IVec>> action;  // per G generator, rows

  struct Entry {
    IVec sigma, tau, value;
    bool operator==(const Entry&) const = default;
  };
  std::vector<Entry> cocycle;

  bool operator==(const ExtensionSpec&) const = default;

  GAction make_action() const;
  TwoCocycle make_cocycle() const;
  ExtensionGroup make_extension() const;
};

/// Throws ParseError with a line/column anchor on malformed input and a
/// named failing triple when the cocycle identity is violated.
ExtensionSpec parse_spec(const std::string& text);

/// Canonical serialization; parse(serialize(s)) == s.
std::string serialize_spec(const ExtensionSpec& spec);

ExtensionSpec spec_from_extension(const ExtensionGroup& ext);

}  // namespace capit
