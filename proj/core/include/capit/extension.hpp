#pragma once

#include <map>
#include <optional>
#include <vector>

#include "capit/abgroup.hpp"

namespace capit {

/// Action of a finite abelian G on a finite abelian module, given by one
/// automorphism matrix per G generator.  Per-element matrices are
/// precomputed; instances are immutable after construction.
struct GAction {
  FiniteAbelianGroup group;   // G
  FiniteAbelianGroup module;  // A (or M)
  std::vector<IMat> matrices; // one per G generator

  GAction() = default;
  GAction(FiniteAbelianGroup g, FiniteAbelianGroup mod, std::vector<IMat> mats);
  static GAction trivial(const FiniteAbelianGroup& g, const FiniteAbelianGroup& mod);

  /// Throws InvalidAction unless every matrix is an automorphism of the
  /// module, the matrices commute, and matrix_i^{d_i} is the identity.
  void validate() const;

  const IMat& matrix_of(i64 sigma_index) const { return elem_mats_[sigma_index]; }
  IVec apply(i64 sigma_index, const IVec& a) const;
  IVec apply(const IVec& sigma, const IVec& a) const;
  Homomorphism as_hom(i64 sigma_index) const;

  bool is_trivial() const;
  bool operator==(const GAction& o) const {
    return group == o.group && module == o.module && matrices == o.matrices;
  }

private:
  std::vector<IMat> elem_mats_;  // one per element of G, enumeration order
};

/// Normalized 2-cocycle c : G x G -> A for a GAction.  Non-normalized input
/// is shifted by the coboundary of the constant c(1,1) before validation.
class TwoCocycle {
public:
  struct Violation {
    IVec sigma, tau, rho;
  };

  TwoCocycle() = default;
  /// table indexed by sigma_index * |G| + tau_index.
  TwoCocycle(GAction action, std::vector<IVec> table);
  static TwoCocycle trivial(GAction action);

  /// The cocycle-identity defect of a table, if any (pre-normalization
  /// shift applied); used for line-anchored CLI errors.
  static std::optional<Violation> check(const GAction& action,
                                        const std::vector<IVec>& table);

  const GAction& action() const { return action_; }
  const FiniteAbelianGroup& g() const { return action_.group; }
  const FiniteAbelianGroup& a() const { return action_.module; }
  const IVec& at(i64 sigma_index, i64 tau_index) const;
  const std::vector<IVec>& table() const { return table_; }

private:
  GAction action_;
  std::vector<IVec> table_;
};

/// The group U presented as an extension 1 -> A -> U -> G -> 1.  Elements
/// are indices a_index * |G| + g_index (lexicographic on A-coords then
/// G-coords).  Index 0 is the identity.
class ExtensionGroup {
public:
  ExtensionGroup() = default;
  explicit ExtensionGroup(TwoCocycle cocycle);

  const TwoCocycle& cocycle() const { return coc_; }
  const FiniteAbelianGroup& a() const { return coc_.a(); }
  const FiniteAbelianGroup& g() const { return coc_.g(); }
  i64 order() const { return aOrder_ * gOrder_; }
  i64 index_of_a() const { return gOrder_; }  // (U : A)

  i64 identity() const { return 0; }
  i64 make(const IVec& a_coords, const IVec& g_coords) const;
  IVec a_part(i64 x) const { return a().element_at(x / gOrder_); }
  IVec g_part(i64 x) const { return g().element_at(x % gOrder_); }
  i64 a_index(i64 x) const { return x / gOrder_; }
  i64 g_index(i64 x) const { return x % gOrder_; }
  i64 from_a_index(i64 a_idx) const { return a_idx * gOrder_; }

  i64 mul(i64 x, i64 y) const;
  i64 inv(i64 x) const;
  i64 pow(i64 x, i64 n) const;
  i64 conj(i64 x, i64 y) const;        // x y x^-1
  i64 commutator(i64 x, i64 y) const;  // x y x^-1 y^-1
  i64 element_order(i64 x) const;

  bool is_abelian() const;

private:
  TwoCocycle coc_;
  i64 aOrder_ = 1, gOrder_ = 1;
  std::vector<i64> gmul_;    // G multiplication table (indices)
  std::vector<i64> cocIdx_;  // cocycle values as A-element indices
  std::vector<i64> actA_;    // [sigma_idx * |A| + a_idx] -> index of sigma*a
};

struct DerivedSubgroup {
  std::vector<i64> a_indices;  // U' as sorted element indices inside A
  GroupWithMap sub;            // abstract group + embedding into A
};

/// U' generated by (tau - 1)A and the cocycle skews, closed under the
/// G-action; always a subgroup of A here because U/A is abelian.
DerivedSubgroup derived_subgroup(const ExtensionGroup& ext);

/// Resolvent module B = A + I_G (free symbols (tau - 1), tau != 1) with the
/// twisted G-action; carries the log isomorphism U/U' ~ B/I_G*B.
class ResolventModule {
public:
  explicit ResolventModule(const ExtensionGroup& ext);

  const ExtensionGroup& ext() const { return *ext_; }
  std::size_t dim() const { return ka_ + free_; }  // A-rank + (|G|-1)

  IVec log_vector(i64 u_elem) const;       // representative in B
  IVec act(i64 sigma_index, const IVec& b) const;
  /// Tr = sum over sigma of sigma * b; lands in A (free part must vanish).
  IVec trace(const IVec& b) const;
  /// B / I_G*B with projection data.
  const Presentation& quotient_presentation() const { return pres_; }
  IVec class_of(i64 u_elem) const;

private:
  const ExtensionGroup* ext_ = nullptr;
  std::size_t ka_ = 0, free_ = 0;
  Presentation pres_;
};

struct Abelianization {
  FiniteAbelianGroup group;        // U/U'
  std::vector<i64> class_index;    // per U element, index in `group`
  std::vector<i64> rep;            // per class, one U element mapping to it
};

/// U/U' computed through the resolvent quotient and cross-checked against
/// coset enumeration of U' in U (order statistics).
Abelianization abelianization(const ExtensionGroup& ext);

/// Same, reusing an already-built resolvent and derived subgroup.
Abelianization abelianization(const ExtensionGroup& ext,
                              const ResolventModule& res,
                              const DerivedSubgroup& der);

/// Invariant factors recovered from coset enumeration alone; the
/// independent oracle for `abelianization`.
IVec abelianization_by_cosets(const ExtensionGroup& ext,
                              const std::vector<i64>& derived_a_indices);

/// Endomorphism of U as a full value table over element indices.
struct Endomorphism {
  std::vector<i64> table;
  bool is_endomorphism(const ExtensionGroup& ext) const;
  static Endomorphism identity(const ExtensionGroup& ext);
};

/// gamma(x) = f(x) x for a 1-cocycle f : U -> A (conjugation action),
/// given as a per-element table of A coordinates.  Throws NotACocycle.
Endomorphism endomorphism_from_cocycle(const ExtensionGroup& ext,
                                       const std::vector<IVec>& f);

/// All invariant-factor lists with the given product, deterministic order.
std::vector<IVec> invariant_factor_lists(i64 n);

/// The unique invariant-factor list matching the given element-order
/// statistics of an abelian group of order n.
IVec invariant_factors_from_order_stats(const std::map<i64, i64>& stats, i64 n);

}  // namespace capit
