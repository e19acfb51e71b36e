#include "capit/extension.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "capit/error.hpp"

namespace capit {

namespace {

IMat mat_mul_mod(const IMat& x, const IMat& y, const IVec& row_moduli) {
  IMat r = x * y;
  for (std::size_t i = 0; i < r.rows; ++i)
    for (std::size_t j = 0; j < r.cols; ++j)
      r(i, j) = mod_reduce(r(i, j), row_moduli[i]);
  return r;
}

}  // namespace

GAction::GAction(FiniteAbelianGroup g, FiniteAbelianGroup mod,
                 std::vector<IMat> mats)
    : group(std::move(g)), module(std::move(mod)), matrices(std::move(mats)) {
  if (matrices.size() != group.rank())
    throw Error(ErrorKind::InvalidAction, "need one matrix per G generator");
  for (auto& m : matrices) {
    if (m.rows != module.rank() || m.cols != module.rank())
      throw Error(ErrorKind::InvalidAction, "action matrix has wrong shape");
    for (std::size_t i = 0; i < m.rows; ++i)
      for (std::size_t j = 0; j < m.cols; ++j)
        m(i, j) = mod_reduce(m(i, j), module.invariants()[i]);
  }
  // Per-element matrices, walking the enumeration so each element reuses its
  // predecessor along the last varying coordinate.
  elem_mats_.reserve(static_cast<std::size_t>(group.order()));
  for (i64 idx = 0; idx < group.order(); ++idx) {
    IVec s = group.element_at(idx);
    IMat m = IMat::identity(module.rank());
    for (std::size_t i = 0; i < group.rank(); ++i)
      for (i64 p = 0; p < s[i]; ++p)
        m = mat_mul_mod(matrices[i], m, module.invariants());
    elem_mats_.push_back(std::move(m));
  }
}

GAction GAction::trivial(const FiniteAbelianGroup& g,
                         const FiniteAbelianGroup& mod) {
  std::vector<IMat> mats(g.rank(), IMat::identity(mod.rank()));
  return GAction(g, mod, std::move(mats));
}

void GAction::validate() const {
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    Homomorphism h{module, module, matrices[i]};
    if (!h.is_well_defined())
      throw Error(ErrorKind::InvalidAction, "action matrix is not a homomorphism");
    if (hom_kernel(h).group.order() != 1)
      throw Error(ErrorKind::InvalidAction, "action matrix is not injective");
    // power d_i must be the identity automorphism
    IMat p = IMat::identity(module.rank());
    for (i64 k = 0; k < group.invariants()[i]; ++k)
      p = mat_mul_mod(matrices[i], p, module.invariants());
    if (!(Homomorphism{module, module, p}.same_map_as(Homomorphism::identity(module))))
      throw Error(ErrorKind::InvalidAction, "action matrix order does not divide the generator order");
    for (std::size_t j = i + 1; j < matrices.size(); ++j) {
      IMat ab = mat_mul_mod(matrices[i], matrices[j], module.invariants());
      IMat ba = mat_mul_mod(matrices[j], matrices[i], module.invariants());
      if (!(Homomorphism{module, module, ab}.same_map_as(Homomorphism{module, module, ba})))
        throw Error(ErrorKind::InvalidAction, "action matrices do not commute");
    }
  }
}

IVec GAction::apply(i64 sigma_index, const IVec& a) const {
  const IMat& m = elem_mats_[static_cast<std::size_t>(sigma_index)];
  IVec out(module.rank(), 0);
  for (std::size_t i = 0; i < module.rank(); ++i) {
    i64 mi = module.invariants()[i];
    i64 acc = 0;
    for (std::size_t j = 0; j < module.rank(); ++j)
      acc = mod_reduce(acc + m(i, j) * mod_reduce(a[j], mi), mi);
    out[i] = acc;
  }
  return out;
}

IVec GAction::apply(const IVec& sigma, const IVec& a) const {
  return apply(group.index_of(sigma), a);
}

Homomorphism GAction::as_hom(i64 sigma_index) const {
  return Homomorphism{module, module, elem_mats_[static_cast<std::size_t>(sigma_index)]};
}

bool GAction::is_trivial() const {
  Homomorphism id = Homomorphism::identity(module);
  for (const auto& m : matrices)
    if (!(Homomorphism{module, module, m}.same_map_as(id))) return false;
  return true;
}

TwoCocycle::TwoCocycle(GAction action, std::vector<IVec> table)
    : action_(std::move(action)), table_(std::move(table)) {
  const i64 n = action_.group.order();
  if (table_.size() != static_cast<std::size_t>(n * n))
    throw Error(ErrorKind::NotACocycle, "cocycle table has wrong size");
  for (auto& v : table_) v = action_.module.reduce(v);

  // Standard normalization shift: subtract the coboundary of the constant
  // cochain h == c(1,1), which forces c(1,.) = c(.,1) = 0 for cocycles.
  IVec b = table_[0];
  if (action_.module.element_order(b) != 1) {
    for (i64 s = 0; s < n; ++s) {
      IVec sb = action_.apply(s, b);
      for (i64 t = 0; t < n; ++t) {
        auto& v = table_[static_cast<std::size_t>(s * n + t)];
        v = action_.module.sub(v, sb);
      }
    }
  }

  if (auto bad = check(action_, table_))
    throw Error(ErrorKind::NotACocycle, "2-cocycle identity fails");
  for (i64 s = 0; s < n; ++s)
    if (action_.module.element_order(at(s, 0)) != 1 ||
        action_.module.element_order(at(0, s)) != 1)
      throw Error(ErrorKind::NotACocycle, "cocycle is not normalized");
}

TwoCocycle TwoCocycle::trivial(GAction action) {
  const i64 n = action.group.order();
  std::vector<IVec> table(static_cast<std::size_t>(n * n), action.module.zero());
  return TwoCocycle(std::move(action), std::move(table));
}

std::optional<TwoCocycle::Violation> TwoCocycle::check(
    const GAction& action, const std::vector<IVec>& table) {
  const FiniteAbelianGroup& g = action.group;
  const FiniteAbelianGroup& a = action.module;
  const i64 n = g.order();
  auto at = [&](i64 s, i64 t) -> const IVec& {
    return table[static_cast<std::size_t>(s * n + t)];
  };
  for (i64 s = 0; s < n; ++s) {
    IVec sc = g.element_at(s);
    for (i64 t = 0; t < n; ++t) {
      IVec tc = g.element_at(t);
      i64 st = g.index_of(g.add(sc, tc));
      for (i64 r = 0; r < n; ++r) {
        IVec rc = g.element_at(r);
        i64 tr = g.index_of(g.add(tc, rc));
        // sigma.c(tau,rho) - c(sigma tau, rho) + c(sigma, tau rho) - c(sigma, tau)
        IVec lhs = action.apply(s, at(t, r));
        lhs = a.sub(lhs, at(st, r));
        lhs = a.add(lhs, at(s, tr));
        lhs = a.sub(lhs, at(s, t));
        if (a.element_order(lhs) != 1) return Violation{sc, tc, rc};
      }
    }
  }
  return std::nullopt;
}

const IVec& TwoCocycle::at(i64 sigma_index, i64 tau_index) const {
  return table_[static_cast<std::size_t>(sigma_index * g().order() + tau_index)];
}

ExtensionGroup::ExtensionGroup(TwoCocycle cocycle) : coc_(std::move(cocycle)) {
  const FiniteAbelianGroup& A = coc_.a();
  const FiniteAbelianGroup& G = coc_.g();
  aOrder_ = A.order();
  gOrder_ = G.order();

  gmul_.resize(static_cast<std::size_t>(gOrder_ * gOrder_));
  for (i64 s = 0; s < gOrder_; ++s)
    for (i64 t = 0; t < gOrder_; ++t)
      gmul_[static_cast<std::size_t>(s * gOrder_ + t)] =
          G.index_of(G.add(G.element_at(s), G.element_at(t)));

  cocIdx_.resize(static_cast<std::size_t>(gOrder_ * gOrder_));
  for (i64 s = 0; s < gOrder_; ++s)
    for (i64 t = 0; t < gOrder_; ++t)
      cocIdx_[static_cast<std::size_t>(s * gOrder_ + t)] = A.index_of(coc_.at(s, t));

  actA_.resize(static_cast<std::size_t>(gOrder_ * aOrder_));
  for (i64 s = 0; s < gOrder_; ++s)
    for (i64 ai = 0; ai < aOrder_; ++ai)
      actA_[static_cast<std::size_t>(s * aOrder_ + ai)] =
          A.index_of(coc_.action().apply(s, A.element_at(ai)));
}

i64 ExtensionGroup::make(const IVec& a_coords, const IVec& g_coords) const {
  return a().index_of(a_coords) * gOrder_ + g().index_of(g_coords);
}

i64 ExtensionGroup::mul(i64 x, i64 y) const {
  const i64 xa = x / gOrder_, xg = x % gOrder_;
  const i64 ya = y / gOrder_, yg = y % gOrder_;
  IVec acc = a().add(a().element_at(xa),
                     a().element_at(actA_[static_cast<std::size_t>(xg * aOrder_ + ya)]));
  acc = a().add(acc, a().element_at(cocIdx_[static_cast<std::size_t>(xg * gOrder_ + yg)]));
  return a().index_of(acc) * gOrder_ + gmul_[static_cast<std::size_t>(xg * gOrder_ + yg)];
}

i64 ExtensionGroup::inv(i64 x) const {
  const i64 xa = x / gOrder_, xg = x % gOrder_;
  const i64 gi = g().index_of(g().neg(g().element_at(xg)));
  IVec t = a().neg(a().add(a().element_at(xa),
                           a().element_at(cocIdx_[static_cast<std::size_t>(xg * gOrder_ + gi)])));
  i64 ti = a().index_of(t);
  return actA_[static_cast<std::size_t>(gi * aOrder_ + ti)] * gOrder_ + gi;
}

i64 ExtensionGroup::pow(i64 x, i64 n) const {
  if (n < 0) return pow(inv(x), -n);
  i64 r = identity();
  for (i64 i = 0; i < n; ++i) r = mul(r, x);
  return r;
}

i64 ExtensionGroup::conj(i64 x, i64 y) const { return mul(mul(x, y), inv(x)); }

i64 ExtensionGroup::commutator(i64 x, i64 y) const {
  return mul(mul(x, y), mul(inv(x), inv(y)));
}

i64 ExtensionGroup::element_order(i64 x) const {
  i64 n = 1, y = x;
  while (y != identity()) {
    y = mul(y, x);
    ++n;
  }
  return n;
}

bool ExtensionGroup::is_abelian() const {
  for (i64 x = 0; x < order(); ++x)
    for (i64 y = x + 1; y < order(); ++y)
      if (mul(x, y) != mul(y, x)) return false;
  return true;
}

DerivedSubgroup derived_subgroup(const ExtensionGroup& ext) {
  const FiniteAbelianGroup& A = ext.a();
  const FiniteAbelianGroup& G = ext.g();
  const GAction& act = ext.cocycle().action();

  std::set<i64> gens;
  for (std::size_t gi = 0; gi < G.rank(); ++gi) {
    IVec tau(G.rank(), 0);
    tau[gi] = 1;
    i64 tidx = G.index_of(tau);
    for (std::size_t aj = 0; aj < A.rank(); ++aj) {
      IVec e(A.rank(), 0);
      e[aj] = 1;
      gens.insert(A.index_of(A.sub(act.apply(tidx, e), e)));
    }
  }
  for (i64 s = 0; s < G.order(); ++s)
    for (i64 t = s + 1; t < G.order(); ++t)
      gens.insert(A.index_of(A.sub(ext.cocycle().at(s, t), ext.cocycle().at(t, s))));

  // Close under addition and the G-action.
  std::set<i64> closed{0};
  std::vector<i64> work(gens.begin(), gens.end());
  while (!work.empty()) {
    i64 x = work.back();
    work.pop_back();
    if (closed.count(x)) continue;
    IVec xv = A.element_at(x);
    std::vector<i64> sums;
    for (i64 y : closed) sums.push_back(A.index_of(A.add(A.element_at(y), xv)));
    for (i64 s : sums)
      if (!closed.count(s)) work.push_back(s);
    closed.insert(x);
    for (i64 si = 0; si < G.order(); ++si) {
      i64 img = A.index_of(act.apply(si, xv));
      if (!closed.count(img)) work.push_back(img);
    }
  }
  // closure: keep folding sums until stable
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<i64> cur(closed.begin(), closed.end());
    for (i64 x : cur)
      for (i64 y : cur) {
        i64 s = A.index_of(A.add(A.element_at(x), A.element_at(y)));
        if (closed.insert(s).second) grew = true;
      }
  }

  std::vector<i64> idx(closed.begin(), closed.end());
  std::vector<IVec> elem_gens;
  for (i64 i : idx) elem_gens.push_back(A.element_at(i));
  return DerivedSubgroup{std::move(idx), subgroup_generated(A, elem_gens)};
}

ResolventModule::ResolventModule(const ExtensionGroup& ext)
    : ext_(&ext), ka_(ext.a().rank()),
      free_(static_cast<std::size_t>(ext.g().order() - 1)) {
  const i64 ng = ext.g().order();
  const std::size_t dim = ka_ + free_;

  // Relations: the A invariants plus the generators of I_G*B, namely
  // sigma*b - b for every sigma in G and every basis vector b.
  std::vector<IVec> rows;
  for (i64 s = 1; s < ng; ++s) {
    for (std::size_t j = 0; j < dim; ++j) {
      IVec e(dim, 0);
      e[j] = 1;
      IVec r = act(s, e);
      for (std::size_t i = 0; i < dim; ++i) r[i] -= e[i];
      rows.push_back(std::move(r));
    }
  }
  Mat rel(rows.size() + ka_, dim);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) rel(i, j) = rows[i][j];
  for (std::size_t i = 0; i < ka_; ++i)
    rel(rows.size() + i, i) = ext.a().invariants()[i];
  // the quotient is the abelianization of U, so |U| annihilates it
  pres_ = from_presentation(dim, rel, ext.order());
}

IVec ResolventModule::log_vector(i64 u_elem) const {
  IVec b(dim(), 0);
  IVec ac = ext_->a_part(u_elem);
  for (std::size_t i = 0; i < ka_; ++i) b[i] = ac[i];
  i64 t = ext_->g_index(u_elem);
  if (t != 0) b[ka_ + static_cast<std::size_t>(t - 1)] = 1;
  return b;
}

IVec ResolventModule::act(i64 sigma_index, const IVec& b) const {
  const FiniteAbelianGroup& A = ext_->a();
  const FiniteAbelianGroup& G = ext_->g();
  IVec out(dim(), 0);

  // module part: sigma * a
  IVec apart(ka_);
  for (std::size_t i = 0; i < ka_; ++i) apart[i] = b[i];
  IVec acc = ext_->cocycle().action().apply(sigma_index, A.reduce(apart));

  IVec sc = G.element_at(sigma_index);
  for (std::size_t f = 0; f < free_; ++f) {
    i64 coef = b[ka_ + f];
    if (coef == 0) continue;
    i64 tau = static_cast<i64>(f) + 1;
    // sigma*(tau-1) = c(sigma,tau) + (sigma tau - 1) - (sigma - 1)
    acc = A.add(acc, A.scale(coef, ext_->cocycle().at(sigma_index, tau)));
    i64 st = G.index_of(G.add(sc, G.element_at(tau)));
    if (st != 0) out[ka_ + static_cast<std::size_t>(st - 1)] += coef;
    if (sigma_index != 0) out[ka_ + static_cast<std::size_t>(sigma_index - 1)] -= coef;
  }
  for (std::size_t i = 0; i < ka_; ++i) out[i] = acc[i];
  return out;
}

IVec ResolventModule::trace(const IVec& b) const {
  const FiniteAbelianGroup& A = ext_->a();
  IVec acc(dim(), 0);
  for (i64 s = 0; s < ext_->g().order(); ++s) {
    IVec sb = act(s, b);
    IVec apart(ka_), accA(ka_);
    for (std::size_t i = 0; i < ka_; ++i) {
      apart[i] = sb[i];
      accA[i] = acc[i];
    }
    IVec sum = A.add(A.reduce(accA), A.reduce(apart));
    for (std::size_t i = 0; i < ka_; ++i) acc[i] = sum[i];
    for (std::size_t i = ka_; i < dim(); ++i) acc[i] += sb[i];
  }
  for (std::size_t i = ka_; i < dim(); ++i)
    if (acc[i] != 0)
      throw Error(ErrorKind::Internal, "trace has nonzero free part");
  acc.resize(ka_);
  return acc;
}

IVec ResolventModule::class_of(i64 u_elem) const {
  return pres_.project(log_vector(u_elem));
}

Abelianization abelianization(const ExtensionGroup& ext) {
  ResolventModule res(ext);
  return abelianization(ext, res, derived_subgroup(ext));
}

Abelianization abelianization(const ExtensionGroup& ext,
                              const ResolventModule& res,
                              const DerivedSubgroup& der) {
  const FiniteAbelianGroup& q = res.quotient_presentation().group;

  Abelianization ab;
  ab.group = q;
  ab.class_index.resize(static_cast<std::size_t>(ext.order()));
  ab.rep.assign(static_cast<std::size_t>(q.order()), -1);
  std::size_t hit = 0;
  for (i64 x = 0; x < ext.order(); ++x) {
    i64 c = q.index_of(res.class_of(x));
    ab.class_index[static_cast<std::size_t>(x)] = c;
    if (ab.rep[static_cast<std::size_t>(c)] < 0) {
      ab.rep[static_cast<std::size_t>(c)] = x;
      ++hit;
    }
  }
  if (hit != static_cast<std::size_t>(q.order()))
    throw Error(ErrorKind::Internal, "log map is not surjective onto B/I_G*B");

  // Independent route: coset enumeration of U' and order statistics.
  IVec oracle = abelianization_by_cosets(ext, der.a_indices);
  if (oracle != q.invariants())
    throw Error(ErrorKind::Internal, "abelianization routes disagree");
  return ab;
}

IVec abelianization_by_cosets(const ExtensionGroup& ext,
                              const std::vector<i64>& derived_a_indices) {
  const i64 n = ext.order();
  std::vector<i64> coset(static_cast<std::size_t>(n), -1);
  std::vector<i64> reps;
  for (i64 x = 0; x < n; ++x) {
    if (coset[static_cast<std::size_t>(x)] >= 0) continue;
    i64 id = static_cast<i64>(reps.size());
    reps.push_back(x);
    for (i64 u : derived_a_indices)
      coset[static_cast<std::size_t>(ext.mul(x, ext.from_a_index(u)))] = id;
  }
  const i64 q = static_cast<i64>(reps.size());
  std::map<i64, i64> stats;
  for (i64 c = 0; c < q; ++c) {
    i64 ord = 1, y = reps[static_cast<std::size_t>(c)];
    while (coset[static_cast<std::size_t>(y)] != 0) {
      y = ext.mul(y, reps[static_cast<std::size_t>(c)]);
      ++ord;
    }
    ++stats[ord];
  }
  return invariant_factors_from_order_stats(stats, q);
}

bool Endomorphism::is_endomorphism(const ExtensionGroup& ext) const {
  if (table.size() != static_cast<std::size_t>(ext.order())) return false;
  for (i64 x = 0; x < ext.order(); ++x)
    for (i64 y = 0; y < ext.order(); ++y)
      if (table[static_cast<std::size_t>(ext.mul(x, y))] !=
          ext.mul(table[static_cast<std::size_t>(x)], table[static_cast<std::size_t>(y)]))
        return false;
  return true;
}

Endomorphism Endomorphism::identity(const ExtensionGroup& ext) {
  Endomorphism e;
  e.table.resize(static_cast<std::size_t>(ext.order()));
  for (i64 x = 0; x < ext.order(); ++x) e.table[static_cast<std::size_t>(x)] = x;
  return e;
}

Endomorphism endomorphism_from_cocycle(const ExtensionGroup& ext,
                                       const std::vector<IVec>& f) {
  const FiniteAbelianGroup& A = ext.a();
  if (f.size() != static_cast<std::size_t>(ext.order()))
    throw Error(ErrorKind::NotACocycle, "1-cocycle table has wrong size");
  const GAction& act = ext.cocycle().action();
  for (i64 x = 0; x < ext.order(); ++x) {
    i64 xg = ext.g_index(x);
    for (i64 y = 0; y < ext.order(); ++y) {
      IVec rhs = A.add(A.reduce(f[static_cast<std::size_t>(x)]),
                       act.apply(xg, A.reduce(f[static_cast<std::size_t>(y)])));
      IVec lhs = A.reduce(f[static_cast<std::size_t>(ext.mul(x, y))]);
      if (lhs != rhs)
        throw Error(ErrorKind::NotACocycle, "1-cocycle identity fails");
    }
  }
  Endomorphism gamma;
  gamma.table.resize(static_cast<std::size_t>(ext.order()));
  for (i64 x = 0; x < ext.order(); ++x) {
    i64 fx = ext.from_a_index(A.index_of(A.reduce(f[static_cast<std::size_t>(x)])));
    gamma.table[static_cast<std::size_t>(x)] = ext.mul(fx, x);
  }
  return gamma;
}

namespace {

void ifl_rec(i64 m, i64 limit, IVec& acc, std::vector<IVec>& out) {
  if (m == 1) {
    IVec list(acc.rbegin(), acc.rend());
    out.push_back(std::move(list));
    return;
  }
  for (i64 d = 2; d <= m && d <= limit; ++d) {
    if (m % d != 0 || limit % d != 0) continue;
    acc.push_back(d);
    ifl_rec(m / d, d, acc, out);
    acc.pop_back();
  }
}

}  // namespace

std::vector<IVec> invariant_factor_lists(i64 n) {
  std::vector<IVec> out;
  IVec acc;
  ifl_rec(n, n, acc, out);
  std::sort(out.begin(), out.end());
  return out;
}

IVec invariant_factors_from_order_stats(const std::map<i64, i64>& stats, i64 n) {
  for (const IVec& cand : invariant_factor_lists(n)) {
    FiniteAbelianGroup g(cand);
    std::map<i64, i64> s;
    for (i64 i = 0; i < g.order(); ++i) ++s[g.element_order(g.element_at(i))];
    if (s == stats) return cand;
  }
  throw Error(ErrorKind::Internal, "order statistics match no abelian group");
}

}  // namespace capit
