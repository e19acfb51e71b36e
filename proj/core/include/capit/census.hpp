#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "capit/cohomology.hpp"
#include "capit/extension.hpp"
#include "capit/transfer.hpp"

namespace capit {

/// Invariant-factor lists of every abelian group of order 1..max_order,
/// deterministic order (by order, then lexicographic).
std::vector<IVec> abelian_types_up_to(i64 max_order);

/// Every action of G on A, i.e. every homomorphism G -> Aut(A), given as one
/// matrix per G generator.  Deterministic order.
std::vector<std::vector<IMat>> all_actions(const FiniteAbelianGroup& g,
                                           const FiniteAbelianGroup& a);

struct ExtensionCheckOptions {
  std::size_t cocycle_cap = 256;  // Z^1(U, A) enumeration bound
  std::uint64_t seed = 0;
  bool intermediate_subgroups = true;
  bool cocycle_checks = true;  // Tannaka-Terada + Miyake sweeps
};

/// Full verification battery for one extension.  The abelianization oracle
/// cross-check happens implicitly (abelianization throws on disagreement).
struct ExtensionCheckResult {
  bool lemma_a = false;          // direct transfer equals resolvent trace
  bool lemma_b = false;          // (A:U') Tr(B) = 0
  bool power_identity = false;   // Ver(x) maps to (U:A).x in U/U'
  bool divisibility = false;     // (U:A) divides |Ker Ver|
  bool principal_ideal = false;  // transfer to U' vanishes
  bool suzuki_all = false;       // divisibility at every U' <= A' <= A
  i64 subgroup_cases = 0;
  bool gamma_found = false;      // some cocycle gamma meets A = U^{gamma-1}U'
  bool tannaka_ok = true;
  bool miyake_found = false;     // surjective phi exists
  bool miyake_scolie = true;     // (Ker phi)^{d_phi} <= Ker Ver throughout
  bool cocycles_exhaustive = true;
  i64 cocycles_checked = 0;
  i64 index = 0;  // (U:A)
  IVec kernel_invariants;

  bool all_ok() const {
    return lemma_a && lemma_b && power_identity && divisibility &&
           principal_ideal && suzuki_all && tannaka_ok && miyake_scolie;
  }
};

ExtensionCheckResult check_extension(const ExtensionGroup& ext,
                                     const ExtensionCheckOptions& opt = {});

struct CensusOptions {
  i64 max_order = 64;  // bound on |G| * |A|
  ExtensionCheckOptions checks;
  unsigned threads = 0;  // 0 = hardware concurrency

  // Everything with |G| * |A| <= exhaustive_below is swept in full.  Above
  // that, action lists and H^2 class lists are thinned to a deterministic
  // evenly-strided subset: a single pair like (Z/2)^2 acting on (Z/2)^4
  // already carries ~10^4 actions with up to 4096 classes each, so a full
  // sweep at 64 is out of reach at desk scale.  0 = unlimited.
  i64 exhaustive_below = 24;
  std::size_t max_actions = 48;  // per (G, A) pair
  std::size_t max_classes = 48;  // H^2 classes per action
};

struct CensusViolation {
  std::string instance;  // canonical key
  std::string check;
};

struct CensusSummary {
  i64 pairs = 0;       // (G, A, action) triples
  i64 extensions = 0;  // H^2 classes expanded and checked
  i64 subgroup_cases = 0;
  i64 gamma_hits = 0;
  i64 miyake_found = 0;
  bool sampled_somewhere = false;  // some Z^1 was too large to enumerate
  i64 skipped_actions = 0;  // thinned away by max_actions
  i64 skipped_classes = 0;  // thinned away by max_classes
  std::vector<CensusViolation> violations;  // expected empty
};

/// Exhaustive sweep over all (G, A, action, H^2 class) with
/// |G| * |A| <= max_order; |G| itself is bounded by 16 (degree-2 cap).
CensusSummary run_census(const CensusOptions& opt = {});

/// Canonical key naming one census extension, used to sort reports.
std::string instance_key(const IVec& g_inv, const IVec& a_inv,
                         const std::vector<IMat>& action, i64 h2_index);

}  // namespace capit
