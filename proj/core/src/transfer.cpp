#include "capit/transfer.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "capit/error.hpp"
#include "capit/matrix.hpp"

namespace capit {

IVec transfer(const ExtensionGroup& ext, i64 x) {
  const FiniteAbelianGroup& A = ext.a();
  const GAction& act = ext.cocycle().action();
  IVec a = ext.a_part(x);
  i64 tau = ext.g_index(x);
  IVec out = A.zero();
  for (i64 s = 0; s < ext.g().order(); ++s) {
    out = A.add(out, act.apply(s, a));
    out = A.add(out, ext.cocycle().at(s, tau));
  }
  return out;
}

IVec transfer_via_trace(const ResolventModule& res, i64 x) {
  return res.trace(res.log_vector(x));
}

Homomorphism induced_transfer(const ExtensionGroup& ext, const Abelianization& ab) {
  const FiniteAbelianGroup& q = ab.group;
  const FiniteAbelianGroup& A = ext.a();
  IMat m(A.rank(), q.rank());
  for (std::size_t j = 0; j < q.rank(); ++j) {
    IVec e = q.zero();
    e[j] = 1;
    i64 rep = ab.rep[static_cast<std::size_t>(q.index_of(e))];
    IVec v = transfer(ext, rep);
    for (std::size_t i = 0; i < A.rank(); ++i) m(i, j) = v[i];
  }
  Homomorphism h{q, A, std::move(m)};
  if (!h.is_well_defined())
    throw Error(ErrorKind::Internal, "transfer is not well defined on U/U'");
  return h;
}

TransferKernelResult transfer_kernel(const ExtensionGroup& ext) {
  TransferKernelResult r;
  r.ab = abelianization(ext);

  ResolventModule res(ext);
  bool agree = true;
  for (i64 x = 0; x < ext.order(); ++x)
    if (transfer(ext, x) != transfer_via_trace(res, x)) agree = false;

  Homomorphism ver = induced_transfer(ext, r.ab);
  r.kernel = hom_kernel(ver);

  r.report.u_order = ext.order();
  r.report.a_order = ext.a().order();
  r.report.index = ext.index_of_a();
  r.report.kernel_invariants = r.kernel.group.invariants();
  r.report.kernel_order = r.kernel.group.order();
  r.report.divides = r.report.kernel_order % r.report.index == 0;
  r.report.methods_agree = agree;
  return r;
}

SubgroupTransferReport transfer_to_subgroup(const ExtensionGroup& ext,
                                            const Abelianization& ab,
                                            const DerivedSubgroup& der,
                                            const std::vector<i64>& a_prime_indices) {
  const FiniteAbelianGroup& A = ext.a();
  std::set<i64> aset(a_prime_indices.begin(), a_prime_indices.end());
  for (i64 u : der.a_indices)
    if (!aset.count(u))
      throw Error(ErrorKind::DerivedNotContained, "U' is not inside A'");

  // Coset decomposition of U by A' and a transversal.
  const i64 n = ext.order();
  std::vector<i64> coset(static_cast<std::size_t>(n), -1);
  std::vector<i64> reps;
  for (i64 x = 0; x < n; ++x) {
    if (coset[static_cast<std::size_t>(x)] >= 0) continue;
    i64 id = static_cast<i64>(reps.size());
    reps.push_back(x);
    for (i64 u : a_prime_indices)
      coset[static_cast<std::size_t>(ext.mul(x, ext.from_a_index(u)))] = id;
  }
  const i64 index = static_cast<i64>(reps.size());

  auto ver = [&](i64 x) -> IVec {
    IVec acc = A.zero();
    for (i64 i = 0; i < index; ++i) {
      i64 y = ext.mul(reps[static_cast<std::size_t>(i)], x);
      i64 j = coset[static_cast<std::size_t>(y)];
      i64 term = ext.mul(y, ext.inv(reps[static_cast<std::size_t>(j)]));
      if (ext.g_index(term) != 0 || !aset.count(ext.a_index(term)))
        throw Error(ErrorKind::Internal, "transversal term escapes A'");
      acc = A.add(acc, ext.a_part(term));
    }
    return acc;
  };

  const FiniteAbelianGroup& q = ab.group;
  std::vector<IVec> kernel_classes;
  for (i64 c = 0; c < q.order(); ++c) {
    IVec v = ver(ab.rep[static_cast<std::size_t>(c)]);
    if (A.element_order(v) == 1) kernel_classes.push_back(q.element_at(c));
  }
  GroupWithMap k = subgroup_generated(q, kernel_classes);
  if (k.group.order() != static_cast<i64>(kernel_classes.size()))
    throw Error(ErrorKind::Internal, "transfer kernel classes do not form a subgroup");

  SubgroupTransferReport rep;
  rep.index = index;
  rep.kernel_order = k.group.order();
  rep.kernel_invariants = k.group.invariants();
  rep.divides = rep.kernel_order % rep.index == 0;
  return rep;
}

bool check_principal_ideal(const ExtensionGroup& ext) {
  Abelianization ab = abelianization(ext);
  DerivedSubgroup der = derived_subgroup(ext);
  SubgroupTransferReport r = transfer_to_subgroup(ext, ab, der, der.a_indices);
  return r.kernel_order == ab.group.order();
}

namespace {

/// Linear expressions f(x) = E_x . t over the unknown generator values
/// t in A^m, built by walking the Cayley graph on a fixed generating set.
struct CocycleSystem {
  std::vector<i64> gens;      // U element indices of the generators
  std::vector<IMat> expr;     // per U element, ka x (m*ka)
  IMat basis;                 // solution lattice, columns generate
  IVec col_moduli;
  std::size_t ka = 0;
};

CocycleSystem build_cocycle_system(const ExtensionGroup& ext) {
  const FiniteAbelianGroup& A = ext.a();
  const FiniteAbelianGroup& G = ext.g();
  const GAction& act = ext.cocycle().action();

  CocycleSystem sys;
  sys.ka = A.rank();
  for (std::size_t j = 0; j < A.rank(); ++j) {
    IVec e = A.zero();
    e[j] = 1;
    sys.gens.push_back(ext.make(e, G.zero()));
  }
  for (std::size_t i = 0; i < G.rank(); ++i) {
    IVec e = G.zero();
    e[i] = 1;
    sys.gens.push_back(ext.make(A.zero(), e));
  }
  const std::size_t m = sys.gens.size();
  const std::size_t n = m * sys.ka;
  sys.col_moduli.resize(n);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t j = 0; j < sys.ka; ++j)
      sys.col_moduli[k * sys.ka + j] = A.invariants()[j];

  CongruenceKernel ker(sys.col_moduli);
  sys.expr.assign(static_cast<std::size_t>(ext.order()), IMat());
  std::vector<bool> seen(static_cast<std::size_t>(ext.order()), false);
  sys.expr[0] = IMat(sys.ka, n);
  seen[0] = true;
  std::vector<i64> queue{ext.identity()};
  while (!queue.empty()) {
    i64 x = queue.back();
    queue.pop_back();
    const IMat& ex = sys.expr[static_cast<std::size_t>(x)];
    const IMat& mx = act.matrix_of(ext.g_index(x));
    for (std::size_t k = 0; k < m; ++k) {
      i64 y = ext.mul(x, sys.gens[k]);
      // f(x g_k) = f(x) + x.f(g_k)
      IMat cand = ex;
      for (std::size_t i = 0; i < sys.ka; ++i)
        for (std::size_t j = 0; j < sys.ka; ++j)
          cand(i, k * sys.ka + j) += mx(i, j);
      auto yi = static_cast<std::size_t>(y);
      if (!seen[yi]) {
        sys.expr[yi] = std::move(cand);
        seen[yi] = true;
        queue.push_back(y);
      } else {
        for (std::size_t i = 0; i < sys.ka; ++i) {
          IVec row(n);
          for (std::size_t j = 0; j < n; ++j)
            row[j] = sys.expr[yi](i, j) - cand(i, j);
          ker.add_row(row, A.invariants()[i]);
        }
      }
    }
  }
  sys.basis = ker.basis();
  return sys;
}

i64 lattice_quotient_order(const IMat& basis, const IVec& moduli) {
  // the full solution lattice is spanned by the working basis together with
  // the moduli lattice
  Mat b(basis.rows, basis.cols + basis.rows);
  for (std::size_t i = 0; i < basis.rows; ++i) {
    for (std::size_t j = 0; j < basis.cols; ++j) b(i, j) = basis(i, j);
    b(i, basis.cols + i) = moduli[i];
  }
  SmithResult s = smith_normal_form(
      b, {.row_transforms = false, .col_transforms = false});
  Int idx = 1, full = 1;
  for (std::size_t i = 0; i < basis.rows; ++i) {
    if (s.diag(i) == 0)
      throw Error(ErrorKind::Internal, "solution lattice is not full rank");
    idx *= s.diag(i);
    full *= moduli[i];
  }
  if (full % idx != 0)
    throw Error(ErrorKind::Internal, "lattice index does not divide");
  return static_cast<i64>(full / idx);
}

}  // namespace

CocycleSpace one_cocycles(const ExtensionGroup& ext, std::size_t cap,
                          std::uint64_t seed) {
  const FiniteAbelianGroup& A = ext.a();
  CocycleSpace out;
  if (A.rank() == 0 || ext.order() == 0) {
    out.total = 1;
    out.cocycles.push_back(
        std::vector<IVec>(static_cast<std::size_t>(ext.order()), A.zero()));
    return out;
  }
  CocycleSystem sys = build_cocycle_system(ext);
  const std::size_t n = sys.col_moduli.size();
  out.total = lattice_quotient_order(sys.basis, sys.col_moduli);

  auto reduce_t = [&](IVec t) {
    for (std::size_t j = 0; j < n; ++j) t[j] = mod_reduce(t[j], sys.col_moduli[j]);
    return t;
  };

  std::set<IVec> params;
  if (out.total <= static_cast<i64>(cap)) {
    params.insert(IVec(n, 0));
    for (std::size_t c = 0; c < n; ++c) {
      IVec col(n);
      for (std::size_t i = 0; i < n; ++i) col[i] = sys.basis(i, c);
      col = reduce_t(col);
      for (bool grew = true; grew;) {
        grew = false;
        std::vector<IVec> cur(params.begin(), params.end());
        for (const IVec& p : cur) {
          IVec q(n);
          for (std::size_t i = 0; i < n; ++i) q[i] = p[i] + col[i];
          if (params.insert(reduce_t(q)).second) grew = true;
        }
      }
    }
    if (static_cast<i64>(params.size()) != out.total)
      throw Error(ErrorKind::Internal, "cocycle enumeration disagrees with lattice index");
  } else {
    out.exhaustive = false;
    std::mt19937_64 rng(seed);
    params.insert(IVec(n, 0));
    std::size_t attempts = 0;
    while (params.size() < cap && attempts < 16 * cap) {
      ++attempts;
      IVec t(n, 0);
      for (std::size_t c = 0; c < n; ++c) {
        i64 r = static_cast<i64>(rng() % static_cast<std::uint64_t>(
                                             std::max<i64>(sys.col_moduli[c], 1)));
        for (std::size_t i = 0; i < n; ++i) t[i] += r * sys.basis(i, c);
      }
      params.insert(reduce_t(t));
    }
  }

  for (const IVec& t : params) {
    std::vector<IVec> f(static_cast<std::size_t>(ext.order()));
    for (i64 x = 0; x < ext.order(); ++x)
      f[static_cast<std::size_t>(x)] =
          A.reduce(sys.expr[static_cast<std::size_t>(x)].apply(t));
    out.cocycles.push_back(std::move(f));
  }
  return out;
}

bool gamma_hypothesis_holds(const ExtensionGroup& ext, const Endomorphism& gamma) {
  const FiniteAbelianGroup& A = ext.a();
  std::set<i64> gens;
  for (i64 x = 0; x < ext.order(); ++x) {
    i64 d = ext.mul(gamma.table[static_cast<std::size_t>(x)], ext.inv(x));
    if (ext.g_index(d) != 0) return false;  // leaves A, cannot generate A
    gens.insert(ext.a_index(d));
  }
  for (i64 u : derived_subgroup(ext).a_indices) gens.insert(u);
  // additive closure inside A
  std::set<i64> closed(gens.begin(), gens.end());
  closed.insert(0);
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<i64> cur(closed.begin(), closed.end());
    for (i64 x : cur)
      for (i64 y : cur)
        if (closed.insert(A.index_of(A.add(A.element_at(x), A.element_at(y)))).second)
          grew = true;
  }
  return static_cast<i64>(closed.size()) == A.order();
}

bool tannaka_terada_check(const ExtensionGroup& ext, const Abelianization& ab,
                          const Endomorphism& gamma) {
  if (!gamma.is_endomorphism(ext))
    throw Error(ErrorKind::HypothesisFailed, "gamma is not an endomorphism");
  if (!gamma_hypothesis_holds(ext, gamma))
    throw Error(ErrorKind::HypothesisFailed, "A != U^{gamma-1} U'");

  const FiniteAbelianGroup& A = ext.a();
  const FiniteAbelianGroup& q = ab.group;
  for (i64 c = 0; c < q.order(); ++c) {
    i64 rep = ab.rep[static_cast<std::size_t>(c)];
    i64 img = ab.class_index[static_cast<std::size_t>(
        gamma.table[static_cast<std::size_t>(rep)])];
    if (img != c) continue;  // not gamma-fixed
    if (A.element_order(transfer(ext, rep)) != 1) return false;
  }
  return true;
}

MiyakeResult miyake_criterion(const ExtensionGroup& ext, std::size_t cap,
                              std::uint64_t seed) {
  const FiniteAbelianGroup& A = ext.a();
  DerivedSubgroup der = derived_subgroup(ext);
  std::vector<IVec> der_elems;
  for (i64 u : der.a_indices) der_elems.push_back(A.element_at(u));
  GroupWithMap aq = quotient(A, der_elems);  // A/U'

  std::vector<IVec> ver(static_cast<std::size_t>(ext.order()));
  for (i64 x = 0; x < ext.order(); ++x) ver[static_cast<std::size_t>(x)] = transfer(ext, x);

  CocycleSpace space = one_cocycles(ext, cap, seed);

  MiyakeResult r;
  r.exhaustive = space.exhaustive;
  r.best_d_phi = aq.group.order() + 1;

  // Distinct cocycles often agree mod U'; dedupe the induced phi tables.
  std::set<IVec> phis;
  for (const auto& f : space.cocycles) {
    ++r.cocycles_checked;
    IVec phi(static_cast<std::size_t>(ext.order()));
    for (i64 x = 0; x < ext.order(); ++x)
      phi[static_cast<std::size_t>(x)] =
          aq.group.index_of(aq.map.apply(f[static_cast<std::size_t>(x)]));
    phis.insert(std::move(phi));
  }
  for (const IVec& phi : phis) {
    // image = additive closure of the value set inside A/U'
    std::set<i64> im(phi.begin(), phi.end());
    im.insert(0);
    for (bool grew = true; grew;) {
      grew = false;
      std::vector<i64> cur(im.begin(), im.end());
      for (i64 x : cur)
        for (i64 y : cur)
          if (im.insert(aq.group.index_of(aq.group.add(aq.group.element_at(x),
                                                       aq.group.element_at(y))))
                  .second)
            grew = true;
    }
    i64 d_phi = aq.group.order() / static_cast<i64>(im.size());
    r.best_d_phi = std::min(r.best_d_phi, d_phi);
    if (d_phi == 1) r.found = true;
    for (i64 x = 0; x < ext.order(); ++x) {
      if (phi[static_cast<std::size_t>(x)] != 0) continue;
      // x in Ker phi: need d_phi . Ver(x) = 0
      if (A.element_order(A.scale(d_phi, ver[static_cast<std::size_t>(x)])) != 1)
        r.scolie_ok = false;
    }
  }
  if (r.best_d_phi > aq.group.order()) r.best_d_phi = 0;

  if (r.found) {
    TransferKernelResult k = transfer_kernel(ext);
    r.divisibility_ok = k.report.divides;
  }
  return r;
}

}  // namespace capit
