#pragma once

#include <memory>
#include <vector>

#include "capit/extension.hpp"

namespace capit {

/// A finite abelian group with an action of a finite abelian G; the action
/// object already carries both groups.
using GModule = GAction;

/// H^n(G, M) for n in {0, 1, 2}, computed on normalized cochains (vanishing
/// whenever an argument is the identity) so representatives feed directly
/// into the extension machinery.
///
/// External cochain tables are indexed over all of G^n in enumeration order
/// (n = 1: [sigma_idx]; n = 2: [sigma_idx * |G| + tau_idx]) and must be
/// normalized.
class CohomologyResult {
public:
  int degree() const { return n_; }
  const FiniteAbelianGroup& group() const { return group_; }
  const GModule& gmodule() const { return gm_; }

  /// One normalized cocycle per generator of group().
  const std::vector<std::vector<IVec>>& representatives() const { return reps_; }

  /// Class of a normalized n-cocycle; throws NotACocycle when the table is
  /// not a normalized cocycle.
  IVec class_of(const std::vector<IVec>& cochain) const;

  /// A normalized cocycle representing the given class.
  std::vector<IVec> cocycle_for(const IVec& cls) const;

private:
  friend CohomologyResult cohomology(const GModule& gm, int n);
  int n_ = 0;
  GModule gm_;
  FiniteAbelianGroup group_;
  std::vector<std::vector<IVec>> reps_;

  // normalized-cochain coordinates: tuple_index * rank(M) + i over tuples
  // of non-identity elements
  IMat z_basis_;      // columns generate the cocycle lattice
  IVec c_moduli_;     // per cochain coordinate
  IVec x_moduli_;     // per z_basis_ column (order of the column in C)
  IMat proj_;         // group rank x #columns, class from coefficients
  Mat lifts_;         // #columns x group rank

  std::vector<IVec> to_internal(const std::vector<IVec>& cochain) const;
  std::vector<IVec> to_external(const IVec& internal) const;
};

/// Throws DegreeUnsupported for n > 2 and CapExceeded when |G| > 16 at n = 2.
CohomologyResult cohomology(const GModule& gm, int n);

/// For trivial actions: H^1(G, M) is Hom(G, M); compares invariant factors.
/// Throws NontrivialAction.
bool hom_identity_check(const GModule& gm);

/// Orders of the Tate groups H^0 = M^G / N.M and H^1 = Ker N / (sigma-1)M
/// for cyclic G with the given generator, each from an independent
/// kernel/image computation.  The quotient must be 1 on finite modules.
struct HerbrandResult {
  i64 h0_order = 0;
  i64 h1_order = 0;
  bool is_one() const { return h0_order == h1_order; }
};

HerbrandResult herbrand_quotient(const GModule& gm, const IVec& sigma);

/// 1 -> H^1(G/H, M^H) -> H^1(G, M) -> H^1(H, M) with explicit matrices.
struct InflationRestrictionReport {
  FiniteAbelianGroup h1_quotient;  // H^1(G/H, M^H)
  FiniteAbelianGroup h1_total;     // H^1(G, M)
  FiniteAbelianGroup h1_subgroup;  // H^1(H, M)
  bool inflation_injective = false;
  bool composition_zero = false;
  bool exact = false;  // Im(inf) = Ker(res)
};

InflationRestrictionReport inflation_restriction(const GModule& gm,
                                                 const std::vector<IVec>& h_gens);

/// One ExtensionGroup per class of H^2(G, A), deterministic order.
std::vector<ExtensionGroup> enumerate_extensions(const GAction& action);

}  // namespace capit
