#include "capit/grring.hpp"

#include <cassert>

#include "capit/error.hpp"
#include "capit/extension.hpp"

namespace capit {

GroupRingElement GroupRingElement::one(const FiniteAbelianGroup& g) {
  GroupRingElement x(g);
  x.coeffs_[0] = 1;
  return x;
}

GroupRingElement GroupRingElement::basis(const FiniteAbelianGroup& g,
                                         const IVec& sigma) {
  GroupRingElement x(g);
  x.coeff(g.index_of(sigma)) = 1;
  return x;
}

GroupRingElement GroupRingElement::norm_element(const FiniteAbelianGroup& g) {
  GroupRingElement x(g);
  for (auto& c : x.coeffs_) c = 1;
  return x;
}

bool GroupRingElement::is_zero() const {
  for (const Int& c : coeffs_)
    if (c != 0) return false;
  return true;
}

void GroupRingElement::check_same(const GroupRingElement& o) const {
  if (group_ != o.group_)
    throw Error(ErrorKind::GroupMismatch, "group ring elements over different groups");
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
  check_same(o);
  GroupRingElement r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
  return r;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const {
  check_same(o);
  GroupRingElement r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] -= o.coeffs_[i];
  return r;
}

GroupRingElement GroupRingElement::operator-() const {
  GroupRingElement r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const {
  check_same(o);
  GroupRingElement r(group_);
  const i64 n = group_.order();
  for (i64 i = 0; i < n; ++i) {
    if (coeffs_[i] == 0) continue;
    IVec si = group_.element_at(i);
    for (i64 j = 0; j < n; ++j) {
      if (o.coeffs_[j] == 0) continue;
      i64 k = group_.index_of(group_.add(si, group_.element_at(j)));
      r.coeffs_[k] += coeffs_[i] * o.coeffs_[j];
    }
  }
  return r;
}

GroupRingElement GroupRingElement::operator*(const Int& n) const {
  GroupRingElement r = *this;
  for (auto& c : r.coeffs_) c *= n;
  return r;
}

Int GroupRingElement::augmentation() const {
  Int s = 0;
  for (const Int& c : coeffs_) s += c;
  return s;
}

IVec GroupRingElement::act(const GAction& action, const IVec& target) const {
  if (action.group != group_)
    throw Error(ErrorKind::GroupMismatch, "action is over a different group");
  const FiniteAbelianGroup& mod = action.module;
  IVec out = mod.zero();
  for (i64 i = 0; i < group_.order(); ++i) {
    if (coeffs_[i] == 0) continue;
    i64 c = static_cast<i64>(coeffs_[i] % mod.exponent());
    out = mod.add(out, mod.scale(c, action.apply(i, target)));
  }
  return out;
}

namespace {

GroupRingElement minor_det(const RingMat& m, std::vector<std::size_t> rows,
                           std::vector<std::size_t> cols) {
  const FiniteAbelianGroup& g = m[0][0].group();
  assert(rows.size() == cols.size());
  if (rows.empty()) return GroupRingElement::one(g);
  if (rows.size() == 1) return m[rows[0]][cols[0]];
  GroupRingElement det(g);
  std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (m[rows[0]][cols[j]].is_zero()) continue;
    std::vector<std::size_t> sub_cols;
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (k != j) sub_cols.push_back(cols[k]);
    GroupRingElement term = m[rows[0]][cols[j]] * minor_det(m, sub_rows, sub_cols);
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

}  // namespace

DetAdjugate det_adjugate(const RingMat& m) {
  const std::size_t n = m.size();
  if (n == 0 || n > 6)
    throw Error(ErrorKind::CapExceeded, "det_adjugate supports sizes 1..6");
  const FiniteAbelianGroup& g = m[0][0].group();
  for (const auto& row : m) {
    if (row.size() != n)
      throw Error(ErrorKind::Internal, "matrix is not square");
    for (const auto& e : row)
      if (e.group() != g)
        throw Error(ErrorKind::GroupMismatch, "mixed groups in ring matrix");
  }

  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  DetAdjugate r{minor_det(m, all, all),
                RingMat(n, std::vector<GroupRingElement>(n, GroupRingElement(g)))};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::size_t> rows, cols;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != j) rows.push_back(k);
        if (k != i) cols.push_back(k);
      }
      GroupRingElement c = minor_det(m, rows, cols);
      r.adj[i][j] = ((i + j) % 2 == 0) ? c : -c;
    }
  return r;
}

}  // namespace capit
