#include "capit/abgroup.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>
#include <set>

#include "capit/error.hpp"

namespace capit {

namespace {

i64 checked_i64(const Int& x) {
  if (x > std::numeric_limits<i64>::max() || x < std::numeric_limits<i64>::min())
    throw Error(ErrorKind::Internal, "invariant factor exceeds 64-bit range");
  return static_cast<i64>(x);
}

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(IVec invariants) : inv_(std::move(invariants)) {
  for (std::size_t i = 0; i < inv_.size(); ++i) {
    if (inv_[i] < 2)
      throw Error(ErrorKind::Internal, "invariant factors must be >= 2");
    if (i + 1 < inv_.size() && inv_[i + 1] % inv_[i] != 0)
      throw Error(ErrorKind::Internal, "invariant factors must form a divisibility chain");
  }
}

i64 FiniteAbelianGroup::order() const {
  i64 n = 1;
  for (i64 d : inv_) n *= d;
  return n;
}

i64 FiniteAbelianGroup::exponent() const {
  return inv_.empty() ? 1 : inv_.back();
}

IVec FiniteAbelianGroup::reduce(const IVec& x) const {
  if (x.size() != rank())
    throw Error(ErrorKind::ElementOutOfGroup, "coordinate vector has wrong length");
  IVec r(rank());
  for (std::size_t i = 0; i < rank(); ++i) r[i] = mod_reduce(x[i], inv_[i]);
  return r;
}

IVec FiniteAbelianGroup::add(const IVec& x, const IVec& y) const {
  IVec r(rank());
  for (std::size_t i = 0; i < rank(); ++i) r[i] = mod_reduce(x[i] + y[i], inv_[i]);
  return r;
}

IVec FiniteAbelianGroup::sub(const IVec& x, const IVec& y) const {
  IVec r(rank());
  for (std::size_t i = 0; i < rank(); ++i) r[i] = mod_reduce(x[i] - y[i], inv_[i]);
  return r;
}

IVec FiniteAbelianGroup::neg(const IVec& x) const {
  IVec r(rank());
  for (std::size_t i = 0; i < rank(); ++i) r[i] = mod_reduce(-x[i], inv_[i]);
  return r;
}

IVec FiniteAbelianGroup::scale(i64 n, const IVec& x) const {
  IVec r(rank());
  for (std::size_t i = 0; i < rank(); ++i)
    r[i] = mod_reduce(mod_reduce(n, inv_[i]) * x[i], inv_[i]);
  return r;
}

bool FiniteAbelianGroup::contains(const IVec& x) const {
  if (x.size() != rank()) return false;
  for (std::size_t i = 0; i < rank(); ++i)
    if (x[i] < 0 || x[i] >= inv_[i]) return false;
  return true;
}

i64 FiniteAbelianGroup::element_order(const IVec& x) const {
  i64 o = 1;
  for (std::size_t i = 0; i < rank(); ++i)
    o = std::lcm(o, inv_[i] / gcd_i64(inv_[i], mod_reduce(x[i], inv_[i])));
  return o;
}

i64 FiniteAbelianGroup::index_of(const IVec& x) const {
  i64 idx = 0;
  for (std::size_t i = 0; i < rank(); ++i)
    idx = idx * inv_[i] + mod_reduce(x[i], inv_[i]);
  return idx;
}

IVec FiniteAbelianGroup::element_at(i64 index) const {
  IVec x(rank());
  for (std::size_t i = rank(); i-- > 0;) {
    x[i] = index % inv_[i];
    index /= inv_[i];
  }
  return x;
}

std::vector<IVec> FiniteAbelianGroup::elements() const {
  std::vector<IVec> out;
  out.reserve(static_cast<std::size_t>(order()));
  for (i64 i = 0; i < order(); ++i) out.push_back(element_at(i));
  return out;
}

std::string FiniteAbelianGroup::to_string() const {
  if (inv_.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < inv_.size(); ++i) {
    if (i) s += " x ";
    s += "Z/" + std::to_string(inv_[i]);
  }
  return s;
}

IVec Homomorphism::apply(const IVec& x) const {
  if (x.size() != domain.rank())
    throw Error(ErrorKind::ElementOutOfGroup, "element not in hom domain");
  IVec y(codomain.rank(), 0);
  for (std::size_t i = 0; i < codomain.rank(); ++i) {
    i64 m = codomain.invariants()[i];
    i64 acc = 0;
    for (std::size_t j = 0; j < domain.rank(); ++j)
      acc = mod_reduce(acc + matrix(i, j) * mod_reduce(x[j], m), m);
    y[i] = acc;
  }
  return y;
}

bool Homomorphism::is_well_defined() const {
  if (matrix.rows != codomain.rank() || matrix.cols != domain.rank()) return false;
  for (std::size_t j = 0; j < domain.rank(); ++j) {
    i64 dj = domain.invariants()[j];
    for (std::size_t i = 0; i < codomain.rank(); ++i)
      if (mod_reduce(matrix(i, j) * dj, codomain.invariants()[i]) != 0)
        return false;
  }
  return true;
}

Homomorphism Homomorphism::compose_after(const Homomorphism& inner) const {
  if (inner.codomain != domain)
    throw Error(ErrorKind::IncompatibleHom, "composition domain mismatch");
  Homomorphism h{inner.domain, codomain, matrix * inner.matrix};
  for (std::size_t i = 0; i < h.matrix.rows; ++i)
    for (std::size_t j = 0; j < h.matrix.cols; ++j)
      h.matrix(i, j) = mod_reduce(h.matrix(i, j), codomain.invariants()[i]);
  return h;
}

bool Homomorphism::same_map_as(const Homomorphism& o) const {
  if (domain != o.domain || codomain != o.codomain) return false;
  for (std::size_t i = 0; i < matrix.rows; ++i)
    for (std::size_t j = 0; j < matrix.cols; ++j)
      if (mod_reduce(matrix(i, j), codomain.invariants()[i]) !=
          mod_reduce(o.matrix(i, j), codomain.invariants()[i]))
        return false;
  return true;
}

bool Homomorphism::is_zero() const {
  for (std::size_t i = 0; i < matrix.rows; ++i)
    for (std::size_t j = 0; j < matrix.cols; ++j)
      if (mod_reduce(matrix(i, j), codomain.invariants()[i]) != 0) return false;
  return true;
}

Homomorphism Homomorphism::zero(const FiniteAbelianGroup& dom,
                                const FiniteAbelianGroup& cod) {
  return {dom, cod, IMat(cod.rank(), dom.rank())};
}

Homomorphism Homomorphism::identity(const FiniteAbelianGroup& g) {
  return {g, g, IMat::identity(g.rank())};
}

IVec Presentation::project(const IVec& x) const {
  IVec y(group.rank(), 0);
  for (std::size_t i = 0; i < group.rank(); ++i) {
    i64 m = group.invariants()[i];
    i64 acc = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
      acc = mod_reduce(acc + projection(i, j) * mod_reduce(x[j], m), m);
    y[i] = acc;
  }
  return y;
}

Presentation from_presentation(std::size_t n_gens, const Mat& relations,
                               i64 modulus) {
  assert(relations.cols() == n_gens || relations.rows() == 0);
  Mat c = relations.rows() ? relations.transpose() : Mat(n_gens, 0);
  SmithResult s =
      smith_normal_form(c, {.col_transforms = false, .modulus = modulus});

  IVec inv;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n_gens; ++i) {
    Int di = s.diag(i);
    if (di == 0)
      throw Error(ErrorKind::InfiniteQuotient, "presentation has infinite quotient");
    if (di >= 2) {
      inv.push_back(checked_i64(di));
      kept.push_back(i);
    }
  }
  FiniteAbelianGroup group(inv);

  IMat proj(inv.size(), n_gens);
  Mat lifts(n_gens, inv.size());
  for (std::size_t r = 0; r < kept.size(); ++r) {
    for (std::size_t j = 0; j < n_gens; ++j)
      proj(r, j) = mod_reduce(checked_i64(s.u(kept[r], j) % inv[r]), inv[r]);
    for (std::size_t j = 0; j < n_gens; ++j) lifts(j, r) = s.u_inv(j, kept[r]);
  }
  return Presentation{std::move(group), std::move(proj), std::move(lifts)};
}

GroupWithMap subgroup_generated(const FiniteAbelianGroup& g,
                                const std::vector<IVec>& gens) {
  const std::size_t k = g.rank();
  const std::size_t m = gens.size();
  IMat b(k, m);
  IVec col_moduli(m, 1);
  for (std::size_t j = 0; j < m; ++j) {
    IVec e = g.reduce(gens[j]);
    for (std::size_t i = 0; i < k; ++i) b(i, j) = e[i];
    col_moduli[j] = g.element_order(e);
  }

  // Relation lattice {x in Z^m : sum x_j gens_j = 0 in g}.
  IMat rel = kernel_of_congruences(b, g.invariants(), col_moduli);
  Mat rel_rows(rel.cols, m);
  for (std::size_t j = 0; j < rel.cols; ++j)
    for (std::size_t i = 0; i < m; ++i) rel_rows(j, i) = rel(i, j);

  i64 exp = 1;
  for (i64 d : col_moduli) exp = std::lcm(exp, d);
  Presentation p = from_presentation(m, rel_rows, exp);

  IMat emb(k, p.group.rank());
  for (std::size_t j = 0; j < p.group.rank(); ++j) {
    IVec acc(k, 0);
    for (std::size_t i = 0; i < m; ++i) {
      i64 ci = checked_i64(p.gen_lifts(i, j) % g.order());
      for (std::size_t r = 0; r < k; ++r)
        acc[r] = mod_reduce(acc[r] + ci * b(r, i), g.invariants()[r]);
    }
    for (std::size_t r = 0; r < k; ++r) emb(r, j) = acc[r];
  }
  return {p.group, Homomorphism{p.group, g, std::move(emb)}};
}

GroupWithMap quotient(const FiniteAbelianGroup& g,
                      const std::vector<IVec>& sub_gens) {
  const std::size_t k = g.rank();
  Mat rel(sub_gens.size() + k, k);
  for (std::size_t r = 0; r < sub_gens.size(); ++r) {
    IVec e = g.reduce(sub_gens[r]);
    for (std::size_t j = 0; j < k; ++j) rel(r, j) = e[j];
  }
  for (std::size_t i = 0; i < k; ++i)
    rel(sub_gens.size() + i, i) = g.invariants()[i];

  Presentation p = from_presentation(k, rel, g.exponent());
  return {p.group, Homomorphism{g, p.group, p.projection}};
}

GroupWithMap hom_kernel(const Homomorphism& h) {
  if (!h.is_well_defined())
    throw Error(ErrorKind::IncompatibleHom, "homomorphism is not well-defined");
  IMat gen = kernel_of_congruences(h.matrix, h.codomain.invariants(),
                                   h.domain.invariants());
  std::vector<IVec> gens;
  for (std::size_t j = 0; j < gen.cols; ++j) {
    IVec x(h.domain.rank());
    for (std::size_t i = 0; i < h.domain.rank(); ++i) x[i] = gen(i, j);
    gens.push_back(h.domain.reduce(x));
  }
  return subgroup_generated(h.domain, gens);
}

GroupWithMap hom_image(const Homomorphism& h) {
  std::vector<IVec> gens;
  for (std::size_t j = 0; j < h.domain.rank(); ++j) {
    IVec x(h.codomain.rank());
    for (std::size_t i = 0; i < h.codomain.rank(); ++i) x[i] = h.matrix(i, j);
    gens.push_back(h.codomain.reduce(x));
  }
  return subgroup_generated(h.codomain, gens);
}

std::optional<IVec> hom_preimage(const Homomorphism& h, const IVec& x) {
  return solve_congruences(h.matrix, h.codomain.invariants(),
                           h.domain.invariants(), h.codomain.reduce(x));
}

FiniteAbelianGroup hom_group(const FiniteAbelianGroup& g,
                             const FiniteAbelianGroup& m) {
  IVec ds;
  for (i64 a : g.invariants())
    for (i64 b : m.invariants()) {
      i64 d = gcd_i64(a, b);
      if (d >= 2) ds.push_back(d);
    }
  Mat rel(ds.size(), ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) rel(i, i) = ds[i];
  return from_presentation(ds.size(), rel).group;
}

std::vector<std::vector<IVec>> all_subgroups(const FiniteAbelianGroup& g) {
  const i64 n = g.order();
  if (n > 4096)
    throw Error(ErrorKind::CapExceeded, "subgroup enumeration limited to order 4096");

  using ElemSet = std::vector<i64>;  // sorted element indices
  auto close = [&](const ElemSet& s, i64 extra) {
    IVec e = g.element_at(extra);
    std::set<i64> t(s.begin(), s.end());
    i64 ord = g.element_order(e);
    IVec acc = g.zero();
    for (i64 j = 1; j < ord; ++j) {
      acc = g.add(acc, e);
      for (i64 base : s) t.insert(g.index_of(g.add(g.element_at(base), acc)));
    }
    return ElemSet(t.begin(), t.end());
  };

  std::set<ElemSet> seen;
  std::vector<std::pair<ElemSet, std::vector<IVec>>> found;
  ElemSet triv{0};
  seen.insert(triv);
  found.push_back({triv, {}});
  for (std::size_t head = 0; head < found.size(); ++head) {
    auto [cur, gens] = found[head];
    for (i64 e = 1; e < n; ++e) {
      if (std::binary_search(cur.begin(), cur.end(), e)) continue;
      ElemSet next = close(cur, e);
      if (seen.insert(next).second) {
        std::vector<IVec> g2 = gens;
        g2.push_back(g.element_at(e));
        found.push_back({std::move(next), std::move(g2)});
      }
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  std::vector<std::vector<IVec>> out;
  out.reserve(found.size());
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

}  // namespace capit
