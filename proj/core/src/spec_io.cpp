#include "capit/spec_io.hpp"

#include <set>
#include <sstream>

#include <json.hpp>

#include "capit/error.hpp"

namespace capit {

namespace {

using json = nlohmann::ordered_json;

IVec to_ivec(const json& j, const char* where) {
  if (!j.is_array())
    throw Error(ErrorKind::ParseError, std::string(where) + ": expected an array");
  IVec out;
  for (const auto& v : j) {
    if (!v.is_number_integer())
      throw Error(ErrorKind::ParseError, std::string(where) + ": expected integers");
    out.push_back(v.get<i64>());
  }
  return out;
}

std::string coords_str(const IVec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

}  // namespace

GAction ExtensionSpec::make_action() const {
  FiniteAbelianGroup g(g_invariants);
  FiniteAbelianGroup a(a_invariants);
  if (action.size() != g.rank())
    throw Error(ErrorKind::ParseError, "action: need one matrix per G generator");
  std::vector<IMat> mats;
  for (const auto& rows : action) {
    if (rows.size() != a.rank())
      throw Error(ErrorKind::ParseError, "action: matrix has wrong row count");
    IMat m(a.rank(), a.rank());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != a.rank())
        throw Error(ErrorKind::ParseError, "action: matrix row has wrong length");
      for (std::size_t j = 0; j < a.rank(); ++j) m(i, j) = rows[i][j];
    }
    mats.push_back(std::move(m));
  }
  GAction act(std::move(g), std::move(a), std::move(mats));
  act.validate();
  return act;
}

TwoCocycle ExtensionSpec::make_cocycle() const {
  GAction act = make_action();
  const FiniteAbelianGroup& g = act.group;
  const FiniteAbelianGroup& a = act.module;
  const i64 n = g.order();
  std::vector<IVec> table(static_cast<std::size_t>(n * n), a.zero());
  std::set<i64> seen;
  for (const Entry& e : cocycle) {
    if (e.sigma.size() != g.rank() || e.tau.size() != g.rank())
      throw Error(ErrorKind::ParseError,
                  "cocycle: group coordinates have wrong rank");
    if (e.value.size() != a.rank())
      throw Error(ErrorKind::ParseError, "cocycle: value has wrong rank");
    i64 s = g.index_of(g.reduce(e.sigma));
    i64 t = g.index_of(g.reduce(e.tau));
    if (!seen.insert(s * n + t).second)
      throw Error(ErrorKind::ParseError,
                  "cocycle: duplicate entry at " + coords_str(e.sigma) + "," +
                      coords_str(e.tau));
    table[static_cast<std::size_t>(s * n + t)] = a.reduce(e.value);
  }
  if (auto v = TwoCocycle::check(act, table))
    throw Error(ErrorKind::ParseError,
                "cocycle identity fails at triple " + coords_str(v->sigma) + "," +
                    coords_str(v->tau) + "," + coords_str(v->rho));
  return TwoCocycle(std::move(act), std::move(table));
}

ExtensionGroup ExtensionSpec::make_extension() const {
  return ExtensionGroup(make_cocycle());
}

ExtensionSpec parse_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // the library message already carries "at line L, column C"
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (!j.is_object())
    throw Error(ErrorKind::ParseError, "top level: expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k != "g_invariants" && k != "a_invariants" && k != "action" &&
        k != "cocycle")
      throw Error(ErrorKind::ParseError, "unknown key: " + k);
  }
  if (!j.contains("g_invariants") || !j.contains("a_invariants"))
    throw Error(ErrorKind::ParseError,
                "missing g_invariants or a_invariants section");

  ExtensionSpec spec;
  spec.g_invariants = to_ivec(j["g_invariants"], "g_invariants");
  spec.a_invariants = to_ivec(j["a_invariants"], "a_invariants");
  if (j.contains("action")) {
    if (!j["action"].is_array())
      throw Error(ErrorKind::ParseError, "action: expected an array of matrices");
    for (const auto& mat : j["action"]) {
      if (!mat.is_array())
        throw Error(ErrorKind::ParseError, "action: expected a matrix (array of rows)");
      std::vector<IVec> rows;
      for (const auto& row : mat) rows.push_back(to_ivec(row, "action"));
      spec.action.push_back(std::move(rows));
    }
  } else {
    // default: trivial action
    std::size_t ka = spec.a_invariants.size();
    for (std::size_t g = 0; g < spec.g_invariants.size(); ++g) {
      std::vector<IVec> rows(ka, IVec(ka, 0));
      for (std::size_t i = 0; i < ka; ++i) rows[i][i] = 1;
      spec.action.push_back(std::move(rows));
    }
  }
  if (j.contains("cocycle")) {
    if (!j["cocycle"].is_array())
      throw Error(ErrorKind::ParseError, "cocycle: expected an array of triples");
    for (const auto& t : j["cocycle"]) {
      if (!t.is_array() || t.size() != 3)
        throw Error(ErrorKind::ParseError,
                    "cocycle: each entry is [sigma, tau, value]");
      ExtensionSpec::Entry e;
      e.sigma = to_ivec(t[0], "cocycle");
      e.tau = to_ivec(t[1], "cocycle");
      e.value = to_ivec(t[2], "cocycle");
      spec.cocycle.push_back(std::move(e));
    }
  }
  // semantic validation: invariant chains, action axioms, cocycle identity
  spec.make_cocycle();
  return spec;
}

std::string serialize_spec(const ExtensionSpec& spec) {
  json j;
  j["g_invariants"] = spec.g_invariants;
  j["a_invariants"] = spec.a_invariants;
  j["action"] = json::array();
  for (const auto& mat : spec.action) {
    json rows = json::array();
    for (const IVec& r : mat) rows.push_back(r);
    j["action"].push_back(std::move(rows));
  }
  j["cocycle"] = json::array();
  for (const auto& e : spec.cocycle)
    j["cocycle"].push_back(json::array({e.sigma, e.tau, e.value}));
  return j.dump(2) + "\n";
}

ExtensionSpec spec_from_extension(const ExtensionGroup& ext) {
  ExtensionSpec spec;
  const FiniteAbelianGroup& g = ext.g();
  const FiniteAbelianGroup& a = ext.a();
  spec.g_invariants = g.invariants();
  spec.a_invariants = a.invariants();
  for (const IMat& m : ext.cocycle().action().matrices) {
    std::vector<IVec> rows;
    for (std::size_t i = 0; i < m.rows; ++i) {
      IVec r(m.cols);
      for (std::size_t j = 0; j < m.cols; ++j) r[j] = m(i, j);
      rows.push_back(std::move(r));
    }
    spec.action.push_back(std::move(rows));
  }
  for (i64 s = 0; s < g.order(); ++s)
    for (i64 t = 0; t < g.order(); ++t) {
      const IVec& v = ext.cocycle().at(s, t);
      if (a.element_order(v) == 1) continue;
      spec.cocycle.push_back(
          ExtensionSpec::Entry{g.element_at(s), g.element_at(t), v});
    }
  return spec;
}

}  // namespace capit
