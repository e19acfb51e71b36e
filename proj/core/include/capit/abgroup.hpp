#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "capit/congruence.hpp"
#include "capit/matrix.hpp"

namespace capit {

/// Finite abelian group in invariant-factor form: Z/d1 x ... x Z/dk with
/// d1 | d2 | ... | dk and every d_i >= 2.  The empty list is the trivial
/// group.  Two groups are equal iff their invariant lists are equal.
class FiniteAbelianGroup {
public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(IVec invariants);

  const IVec& invariants() const { return inv_; }
  std::size_t rank() const { return inv_.size(); }
  i64 order() const;
  i64 exponent() const;
  bool trivial() const { return inv_.empty(); }

  bool operator==(const FiniteAbelianGroup&) const = default;

  IVec zero() const { return IVec(rank(), 0); }
  IVec reduce(const IVec& x) const;
  IVec add(const IVec& x, const IVec& y) const;
  IVec sub(const IVec& x, const IVec& y) const;
  IVec neg(const IVec& x) const;
  IVec scale(i64 n, const IVec& x) const;
  bool contains(const IVec& x) const;  // reduced representative?
  i64 element_order(const IVec& x) const;

  /// Lexicographic element enumeration; index 0 is the identity.
  i64 index_of(const IVec& x) const;
  IVec element_at(i64 index) const;
  std::vector<IVec> elements() const;

  std::string to_string() const;  // e.g. "Z/2 x Z/4"

private:
  IVec inv_;
};

/// Homomorphism between finite abelian groups, stored as the integer matrix
/// of generator images (codomain rank x domain rank, entries reduced).
struct Homomorphism {
  FiniteAbelianGroup domain, codomain;
  IMat matrix;

  IVec apply(const IVec& x) const;
  bool is_well_defined() const;
  /// requires matching codomain/domain
  Homomorphism compose_after(const Homomorphism& inner) const;
  bool same_map_as(const Homomorphism& o) const;
  bool is_zero() const;

  static Homomorphism zero(const FiniteAbelianGroup& dom,
                           const FiniteAbelianGroup& cod);
  static Homomorphism identity(const FiniteAbelianGroup& g);
};

struct GroupWithMap {
  FiniteAbelianGroup group;
  Homomorphism map;  // embedding (into the parent) or projection (from it)
};

/// Z^n modulo the row lattice of `relations`, together with the projection
/// data Z^n -> group and integer lifts of the group generators.
struct Presentation {
  FiniteAbelianGroup group;
  IMat projection;   // group rank x n, reduced mod invariants
  Mat gen_lifts;     // n x group rank, projection(gen_lifts col j) = e_j
  IVec project(const IVec& x) const;
};

/// modulus, when nonzero, must annihilate the quotient (any multiple of its
/// exponent works); the Smith reduction then runs in bounded residues.
Presentation from_presentation(std::size_t n_gens, const Mat& relations,
                               i64 modulus = 0);

GroupWithMap subgroup_generated(const FiniteAbelianGroup& g,
                                const std::vector<IVec>& gens);
GroupWithMap quotient(const FiniteAbelianGroup& g,
                      const std::vector<IVec>& sub_gens);
GroupWithMap hom_kernel(const Homomorphism& h);
GroupWithMap hom_image(const Homomorphism& h);

/// x expressed through h, i.e. some preimage; nullopt if x is not in im(h).
std::optional<IVec> hom_preimage(const Homomorphism& h, const IVec& x);

/// Hom(g, m) as an abstract group (direct sum of Z/gcd(g_i, m_j)).
FiniteAbelianGroup hom_group(const FiniteAbelianGroup& g,
                             const FiniteAbelianGroup& m);

/// All subgroups, each given by a generating set, in a deterministic order.
std::vector<std::vector<IVec>> all_subgroups(const FiniteAbelianGroup& g);

}  // namespace capit
