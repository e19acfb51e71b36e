#pragma once

#include <cstdint>
#include <vector>

#include "capit/extension.hpp"

namespace capit {

struct TransferReport {
  i64 u_order = 0;
  i64 a_order = 0;
  i64 index = 0;  // (U : A)
  IVec kernel_invariants;
  i64 kernel_order = 0;
  bool divides = false;        // (U:A) divides |Ker Ver|
  bool methods_agree = false;  // direct formula vs resolvent trace
};

/// Direct formula: Ver(a, tau) = sum_sigma sigma.a + sum_sigma c(sigma, tau),
/// an element of A.  Constant on U'-cosets.
IVec transfer(const ExtensionGroup& ext, i64 x);

/// Tr(log x) in the resolvent module; must equal transfer(ext, x).
IVec transfer_via_trace(const ResolventModule& res, i64 x);

/// The induced homomorphism U/U' -> A on the abelianization.
Homomorphism induced_transfer(const ExtensionGroup& ext, const Abelianization& ab);

struct TransferKernelResult {
  Abelianization ab;
  GroupWithMap kernel;  // subgroup of U/U'
  TransferReport report;
};

TransferKernelResult transfer_kernel(const ExtensionGroup& ext);

/// Transfer to an intermediate subgroup A' with U' <= A' <= A, computed by
/// the generic transversal formula Ver(x) = prod_i t_i x t_{pi(i)}^{-1}.
/// Throws DerivedNotContained when U' is not inside A'.
struct SubgroupTransferReport {
  i64 index = 0;         // (U : A')
  i64 kernel_order = 0;  // kernel of the induced map on U/U'
  IVec kernel_invariants;
  bool divides = false;
};

SubgroupTransferReport transfer_to_subgroup(const ExtensionGroup& ext,
                                            const Abelianization& ab,
                                            const DerivedSubgroup& der,
                                            const std::vector<i64>& a_prime_indices);

/// True iff the transfer U/U' -> U' vanishes identically.
bool check_principal_ideal(const ExtensionGroup& ext);

/// Solutions of f(xy) = f(x) + x.f(y) (conjugation action through G), one
/// value table per U element.  When the solution group is larger than `cap`
/// a deterministic seeded sample of that size is returned instead.
struct CocycleSpace {
  std::vector<std::vector<IVec>> cocycles;
  i64 total = 0;  // order of Z^1(U, A)
  bool exhaustive = true;
};

CocycleSpace one_cocycles(const ExtensionGroup& ext, std::size_t cap = 4096,
                          std::uint64_t seed = 0);

/// Th. on gamma-fixed classes: with gamma an endomorphism of U satisfying
/// A = U^{gamma-1} U', every gamma-fixed class of U/U' lies in Ker Ver.
/// Throws HypothesisFailed when the subgroup condition does not hold.
bool tannaka_terada_check(const ExtensionGroup& ext, const Abelianization& ab,
                          const Endomorphism& gamma);

/// Whether gamma satisfies the hypothesis A = U^{gamma-1} U'.
bool gamma_hypothesis_holds(const ExtensionGroup& ext, const Endomorphism& gamma);

struct MiyakeResult {
  bool found = false;   // a 1-cocycle with surjective phi = f mod U' exists
  i64 best_d_phi = 0;   // minimal (A/U' : Im phi) over checked cocycles
  bool scolie_ok = true;    // (Ker phi)^{d_phi} <= Ker Ver for all of them
  bool divisibility_ok = true;  // (U:A) | |Ker Ver| whenever found
  i64 cocycles_checked = 0;
  bool exhaustive = true;
};

MiyakeResult miyake_criterion(const ExtensionGroup& ext, std::size_t cap = 4096,
                              std::uint64_t seed = 0);

}  // namespace capit
