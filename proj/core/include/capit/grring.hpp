#pragma once

#include <vector>

#include "capit/abgroup.hpp"
#include "capit/matrix.hpp"

namespace capit {

struct GAction;  // extension.hpp

/// Element of the integral group ring Z[G] for a finite abelian G, with a
/// dense coefficient vector indexed by the group's element enumeration.
class GroupRingElement {
public:
  GroupRingElement() = default;
  explicit GroupRingElement(FiniteAbelianGroup g)
      : group_(std::move(g)), coeffs_(group_.order(), 0) {}

  static GroupRingElement one(const FiniteAbelianGroup& g);
  static GroupRingElement basis(const FiniteAbelianGroup& g, const IVec& sigma);
  /// nu = sum of all group elements (the norm element / trace).
  static GroupRingElement norm_element(const FiniteAbelianGroup& g);

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<Int>& coeffs() const { return coeffs_; }
  Int& coeff(i64 index) { return coeffs_[static_cast<std::size_t>(index)]; }
  const Int& coeff(i64 index) const { return coeffs_[static_cast<std::size_t>(index)]; }

  bool is_zero() const;
  bool operator==(const GroupRingElement&) const = default;

  GroupRingElement operator+(const GroupRingElement& o) const;
  GroupRingElement operator-(const GroupRingElement& o) const;
  GroupRingElement operator-() const;
  GroupRingElement operator*(const GroupRingElement& o) const;
  GroupRingElement operator*(const Int& n) const;

  /// The degree map Z[G] -> Z, sum of coefficients.
  Int augmentation() const;

  /// Linear extension of the group action: sum n_sigma (sigma * a).
  IVec act(const GAction& action, const IVec& target) const;

private:
  void check_same(const GroupRingElement& o) const;
  FiniteAbelianGroup group_;
  std::vector<Int> coeffs_;
};

using RingMat = std::vector<std::vector<GroupRingElement>>;  // square, row-major

struct DetAdjugate {
  GroupRingElement det;
  RingMat adj;  // adj * m = m * adj = det * I
};

/// Cofactor-expansion determinant and adjugate over the commutative ring
/// Z[G]; sizes are capped at 6.
DetAdjugate det_adjugate(const RingMat& m);

}  // namespace capit
