#include "capit/cohomology.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "capit/error.hpp"

namespace capit {

namespace {

i64 lcm_i64(i64 a, i64 b) { return a / gcd_i64(a, b) * b; }

// order of v in Z/d1 x ... (coordinatewise)
i64 order_mod(const IVec& v, const IVec& moduli) {
  i64 ord = 1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    i64 d = moduli[i];
    i64 r = mod_reduce(v[i], d);
    ord = lcm_i64(ord, d / gcd_i64(d, r));
  }
  return ord;
}

struct CochainShape {
  int n = 0;
  i64 ng = 1;           // |G|
  std::size_t ka = 0;   // rank M
  std::size_t tuples = 0;

  std::size_t dim() const { return tuples * ka; }
  // tuple index from non-identity component indices (each in 1..ng-1)
  std::size_t tuple_of(std::initializer_list<i64> comps) const {
    std::size_t t = 0;
    for (i64 c : comps) t = t * static_cast<std::size_t>(ng - 1) +
                             static_cast<std::size_t>(c - 1);
    return t;
  }
};

}  // namespace

std::vector<IVec> CohomologyResult::to_internal(
    const std::vector<IVec>& cochain) const {
  const i64 ng = gm_.group.order();
  const std::size_t want =
      n_ == 0 ? 1 : (n_ == 1 ? static_cast<std::size_t>(ng)
                             : static_cast<std::size_t>(ng * ng));
  if (cochain.size() != want)
    throw Error(ErrorKind::NotACocycle, "cochain table has wrong size");
  const FiniteAbelianGroup& m = gm_.module;
  for (const IVec& v : cochain)
    if (v.size() != m.rank())
      throw Error(ErrorKind::NotACocycle, "cochain value has wrong rank");
  auto is_zero = [&](const IVec& v) { return m.element_order(m.reduce(v)) == 1; };
  std::vector<IVec> out;
  if (n_ == 0) {
    out.push_back(m.reduce(cochain[0]));
  } else if (n_ == 1) {
    if (!is_zero(cochain[0]))
      throw Error(ErrorKind::NotACocycle, "cochain is not normalized");
    for (i64 s = 1; s < ng; ++s) out.push_back(m.reduce(cochain[static_cast<std::size_t>(s)]));
  } else {
    for (i64 s = 0; s < ng; ++s)
      if (!is_zero(cochain[static_cast<std::size_t>(s)]) ||
          !is_zero(cochain[static_cast<std::size_t>(s * ng)]))
        throw Error(ErrorKind::NotACocycle, "cochain is not normalized");
    for (i64 s = 1; s < ng; ++s)
      for (i64 t = 1; t < ng; ++t)
        out.push_back(m.reduce(cochain[static_cast<std::size_t>(s * ng + t)]));
  }
  return out;
}

std::vector<IVec> CohomologyResult::to_external(const IVec& internal) const {
  const i64 ng = gm_.group.order();
  const FiniteAbelianGroup& m = gm_.module;
  const std::size_t ka = m.rank();
  auto value = [&](std::size_t tuple) {
    IVec v(ka);
    for (std::size_t i = 0; i < ka; ++i) v[i] = internal[tuple * ka + i];
    return m.reduce(v);
  };
  std::vector<IVec> out;
  if (n_ == 0) {
    out.push_back(internal.empty() ? m.zero() : value(0));
  } else if (n_ == 1) {
    out.assign(static_cast<std::size_t>(ng), m.zero());
    for (i64 s = 1; s < ng; ++s)
      out[static_cast<std::size_t>(s)] = value(static_cast<std::size_t>(s - 1));
  } else {
    out.assign(static_cast<std::size_t>(ng * ng), m.zero());
    for (i64 s = 1; s < ng; ++s)
      for (i64 t = 1; t < ng; ++t)
        out[static_cast<std::size_t>(s * ng + t)] =
            value(static_cast<std::size_t>((s - 1) * (ng - 1) + (t - 1)));
  }
  return out;
}

IVec CohomologyResult::class_of(const std::vector<IVec>& cochain) const {
  std::vector<IVec> vals = to_internal(cochain);
  IVec z;
  for (const IVec& v : vals) z.insert(z.end(), v.begin(), v.end());
  if (z.empty()) return group_.zero();
  auto x = solve_congruences(z_basis_, c_moduli_, x_moduli_, z);
  if (!x) throw Error(ErrorKind::NotACocycle, "table is not a cocycle");
  return group_.reduce(proj_.apply(*x));
}

std::vector<IVec> CohomologyResult::cocycle_for(const IVec& cls) const {
  if (cls.size() != group_.rank())
    throw Error(ErrorKind::ElementOutOfGroup, "class has wrong rank");
  // z = z_basis * (lifts * cls), reduced coordinatewise
  const std::size_t c = c_moduli_.size();
  std::vector<Int> x(c, 0);
  for (std::size_t j = 0; j < c; ++j)
    for (std::size_t g = 0; g < group_.rank(); ++g)
      x[j] += lifts_(j, g) * cls[g];
  for (std::size_t j = 0; j < c; ++j) {
    Int r = x[j] % x_moduli_[j];
    if (r < 0) r += x_moduli_[j];
    x[j] = r;
  }
  IVec z2(c, 0);
  for (std::size_t i = 0; i < c; ++i) {
    Int acc = 0;
    for (std::size_t j = 0; j < c; ++j) acc += Int(z_basis_(i, j)) * x[j];
    Int r = acc % c_moduli_[i];
    if (r < 0) r += c_moduli_[i];
    z2[i] = static_cast<i64>(r);
  }
  return to_external(z2);
}

CohomologyResult cohomology(const GModule& gm, int n) {
  if (n < 0 || n > 2)
    throw Error(ErrorKind::DegreeUnsupported, "cohomology supports degrees 0..2");
  if (n == 2 && gm.group.order() > 16)
    throw Error(ErrorKind::CapExceeded, "|G| capped at 16 for degree 2");

  const FiniteAbelianGroup& G = gm.group;
  const FiniteAbelianGroup& M = gm.module;

  CochainShape sh;
  sh.n = n;
  sh.ng = G.order();
  sh.ka = M.rank();
  const std::size_t nm1 = static_cast<std::size_t>(sh.ng - 1);
  sh.tuples = n == 0 ? 1 : (n == 1 ? nm1 : nm1 * nm1);
  const std::size_t c = sh.dim();
  const std::size_t ka = sh.ka;

  CohomologyResult res;
  res.n_ = n;
  res.gm_ = gm;

  if (c == 0) {
    res.group_ = FiniteAbelianGroup();
    return res;
  }

  res.c_moduli_.resize(c);
  for (std::size_t t = 0; t < sh.tuples; ++t)
    for (std::size_t i = 0; i < ka; ++i)
      res.c_moduli_[t * ka + i] = M.invariants()[i];

  // multiplication table on G element indices
  const i64 ng = sh.ng;
  std::vector<i64> gmul(static_cast<std::size_t>(ng * ng));
  for (i64 s = 0; s < ng; ++s)
    for (i64 t = 0; t < ng; ++t)
      gmul[static_cast<std::size_t>(s * ng + t)] =
          G.index_of(G.add(G.element_at(s), G.element_at(t)));

  // --- cocycle lattice ---
  // the (s,t,r) sweep produces many repeated and zero rows; skip them, each
  // kernel intersection costs O(c^2)
  CongruenceKernel ker(res.c_moduli_);
  std::set<std::pair<IVec, i64>> seen_rows;
  auto feed = [&](const IVec& row, i64 modulus) {
    bool zero = true;
    for (i64 v : row)
      if (v != 0) { zero = false; break; }
    if (zero) return;
    if (seen_rows.insert({row, modulus}).second) ker.add_row(row, modulus);
  };
  auto add_block = [&](IVec& row, std::size_t tuple, const IMat* mat, i64 sign,
                       std::size_t out_i) {
    // contribution of the value at `tuple` to output coordinate out_i:
    // either +-identity or a matrix row
    if (mat) {
      for (std::size_t j = 0; j < ka; ++j)
        row[tuple * ka + j] += sign * (*mat)(out_i, j);
    } else {
      row[tuple * ka + out_i] += sign;
    }
  };

  if (n == 0) {
    for (i64 s = 1; s < ng; ++s) {
      const IMat& ms = gm.matrix_of(s);
      for (std::size_t i = 0; i < ka; ++i) {
        IVec row(c, 0);
        add_block(row, 0, &ms, 1, i);
        add_block(row, 0, nullptr, -1, i);
        feed(row, M.invariants()[i]);
      }
    }
  } else if (n == 1) {
    for (i64 s = 1; s < ng; ++s) {
      const IMat& ms = gm.matrix_of(s);
      for (i64 t = 1; t < ng; ++t) {
        i64 st = gmul[static_cast<std::size_t>(s * ng + t)];
        for (std::size_t i = 0; i < ka; ++i) {
          IVec row(c, 0);
          add_block(row, sh.tuple_of({t}), &ms, 1, i);
          if (st != 0) add_block(row, sh.tuple_of({st}), nullptr, -1, i);
          add_block(row, sh.tuple_of({s}), nullptr, 1, i);
          feed(row, M.invariants()[i]);
        }
      }
    }
  } else {
    for (i64 s = 1; s < ng; ++s) {
      const IMat& ms = gm.matrix_of(s);
      for (i64 t = 1; t < ng; ++t) {
        i64 st = gmul[static_cast<std::size_t>(s * ng + t)];
        for (i64 r = 1; r < ng; ++r) {
          i64 tr = gmul[static_cast<std::size_t>(t * ng + r)];
          for (std::size_t i = 0; i < ka; ++i) {
            IVec row(c, 0);
            add_block(row, sh.tuple_of({t, r}), &ms, 1, i);
            if (st != 0) add_block(row, sh.tuple_of({st, r}), nullptr, -1, i);
            if (tr != 0) add_block(row, sh.tuple_of({s, tr}), nullptr, 1, i);
            add_block(row, sh.tuple_of({s, t}), nullptr, -1, i);
            feed(row, M.invariants()[i]);
          }
        }
      }
    }
  }
  res.z_basis_ = ker.basis();

  // --- coboundary generators ---
  std::vector<IVec> cob;
  if (n == 1) {
    for (std::size_t i = 0; i < ka; ++i) {
      IVec v(c, 0);
      for (i64 s = 1; s < ng; ++s) {
        const IMat& ms = gm.matrix_of(s);
        for (std::size_t r = 0; r < ka; ++r)
          v[sh.tuple_of({s}) * ka + r] += ms(r, i) - (r == i ? 1 : 0);
      }
      cob.push_back(std::move(v));
    }
  } else if (n == 2) {
    for (i64 tau = 1; tau < ng; ++tau) {
      for (std::size_t i = 0; i < ka; ++i) {
        IVec v(c, 0);
        for (i64 s = 1; s < ng; ++s) {
          const IMat& ms = gm.matrix_of(s);
          for (i64 r = 1; r < ng; ++r) {
            std::size_t tup = sh.tuple_of({s, r});
            if (r == tau)
              for (std::size_t q = 0; q < ka; ++q) v[tup * ka + q] += ms(q, i);
            if (gmul[static_cast<std::size_t>(s * ng + r)] == tau)
              v[tup * ka + i] -= 1;
            if (s == tau) v[tup * ka + i] += 1;
          }
        }
        cob.push_back(std::move(v));
      }
    }
  }

  // --- relation lattice of the generator classes in Z/B ---
  res.x_moduli_.resize(c);
  for (std::size_t j = 0; j < c; ++j) {
    IVec col(c);
    for (std::size_t i = 0; i < c; ++i) col[i] = res.z_basis_(i, j);
    res.x_moduli_[j] = order_mod(col, res.c_moduli_);
  }

  // x is a relation iff z_basis * x lands in the coboundary span modulo the
  // cochain moduli; solve jointly in (x, t) and project t away
  const std::size_t nb = cob.size();
  IVec aug_moduli(c + nb);
  for (std::size_t j = 0; j < c; ++j) aug_moduli[j] = res.x_moduli_[j];
  for (std::size_t k = 0; k < nb; ++k)
    aug_moduli[c + k] = order_mod(cob[k], res.c_moduli_);
  CongruenceKernel rker(aug_moduli);
  for (std::size_t i = 0; i < c; ++i) {
    IVec row(c + nb);
    for (std::size_t j = 0; j < c; ++j) row[j] = res.z_basis_(i, j);
    for (std::size_t k = 0; k < nb; ++k) row[c + k] = -cob[k][i];
    rker.add_row(row, res.c_moduli_[i]);
  }
  const IMat& rbasis = rker.basis();

  // an x-modulus of 1 marks a generator whose cocycle is already a
  // coboundary of zero, i.e. the zero class; dropping those up front keeps
  // the presentation at the size of the cocycle group instead of the whole
  // cochain space (e_j lies in the relation lattice for every dropped j, so
  // the quotient is untouched)
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < c; ++j)
    if (res.x_moduli_[j] > 1) keep.push_back(j);
  const std::size_t kc = keep.size();

  // working-basis columns plus the column-moduli lattice (the working basis
  // alone need not contain it, cf. kernel_of_congruences)
  Mat rel(c + nb + kc, kc);
  for (std::size_t r = 0; r < c + nb; ++r)
    for (std::size_t j = 0; j < kc; ++j) rel(r, j) = rbasis(keep[j], r);
  for (std::size_t r = 0; r < kc; ++r)
    rel(c + nb + r, r) = res.x_moduli_[keep[r]];
  i64 exp = 1;
  for (std::size_t j = 0; j < kc; ++j)
    exp = std::lcm(exp, res.x_moduli_[keep[j]]);
  Presentation pres = from_presentation(kc, rel, exp);
  res.group_ = pres.group;

  // re-embed the projection and the lifts into the full x coordinate space;
  // dropped coordinates project to zero and never appear in a lift
  res.proj_ = IMat(pres.group.rank(), c);
  res.lifts_ = Mat(c, pres.group.rank());
  for (std::size_t j = 0; j < kc; ++j)
    for (std::size_t g = 0; g < pres.group.rank(); ++g) {
      res.proj_(g, keep[j]) = pres.projection(g, j);
      res.lifts_(keep[j], g) = pres.gen_lifts(j, g);
    }

  for (std::size_t g = 0; g < res.group_.rank(); ++g) {
    IVec e = res.group_.zero();
    e[g] = 1;
    res.reps_.push_back(res.cocycle_for(e));
  }
  return res;
}

bool hom_identity_check(const GModule& gm) {
  if (!gm.is_trivial())
    throw Error(ErrorKind::NontrivialAction, "requires a trivial action");
  CohomologyResult h1 = cohomology(gm, 1);
  return h1.group().invariants() ==
         hom_group(gm.group, gm.module).invariants();
}

HerbrandResult herbrand_quotient(const GModule& gm, const IVec& sigma) {
  const FiniteAbelianGroup& G = gm.group;
  const FiniteAbelianGroup& M = gm.module;
  if (G.element_order(G.reduce(sigma)) != G.order())
    throw Error(ErrorKind::NotCyclic, "element does not generate G");
  const i64 sidx = G.index_of(G.reduce(sigma));

  const std::size_t ka = M.rank();
  IMat s_minus_1 = gm.matrix_of(sidx);
  for (std::size_t i = 0; i < ka; ++i) s_minus_1(i, i) -= 1;

  IMat nmat(ka, ka);
  i64 p = 0;  // index of sigma^i
  for (i64 i = 0; i < G.order(); ++i) {
    const IMat& mp = gm.matrix_of(p);
    for (std::size_t r = 0; r < ka; ++r)
      for (std::size_t cidx = 0; cidx < ka; ++cidx) nmat(r, cidx) += mp(r, cidx);
    p = G.index_of(G.add(G.element_at(p), G.element_at(sidx)));
  }

  Homomorphism hs{M, M, s_minus_1};
  Homomorphism hn{M, M, nmat};

  i64 fixed = hom_kernel(hs).group.order();
  i64 nm = hom_image(hn).group.order();
  i64 kern = hom_kernel(hn).group.order();
  i64 sm = hom_image(hs).group.order();
  if (fixed % nm != 0 || kern % sm != 0)
    throw Error(ErrorKind::Internal, "Tate group orders fail to divide");
  return HerbrandResult{fixed / nm, kern / sm};
}

InflationRestrictionReport inflation_restriction(const GModule& gm,
                                                 const std::vector<IVec>& h_gens) {
  const FiniteAbelianGroup& G = gm.group;
  const FiniteAbelianGroup& M = gm.module;
  for (const IVec& v : h_gens)
    if (v.size() != G.rank())
      throw Error(ErrorKind::NotASubgroup, "generator has wrong rank");

  GroupWithMap hsub = subgroup_generated(G, h_gens);
  std::vector<IMat> hmats;
  for (std::size_t j = 0; j < hsub.group.rank(); ++j) {
    IVec e = hsub.group.zero();
    e[j] = 1;
    hmats.push_back(gm.matrix_of(G.index_of(hsub.map.apply(e))));
  }
  GAction act_h(hsub.group, M, hmats);

  // M^H from the simultaneous kernels of (sigma - 1) over the generators
  CongruenceKernel mk(M.invariants());
  for (const IMat& hm : hmats)
    for (std::size_t i = 0; i < M.rank(); ++i) {
      IVec row(M.rank());
      for (std::size_t j = 0; j < M.rank(); ++j)
        row[j] = hm(i, j) - (i == j ? 1 : 0);
      mk.add_row(row, M.invariants()[i]);
    }
  std::vector<IVec> mh_gens;
  for (std::size_t j = 0; j < M.rank(); ++j) {
    IVec col(M.rank());
    for (std::size_t i = 0; i < M.rank(); ++i) col[i] = mk.basis()(i, j);
    mh_gens.push_back(M.reduce(col));
  }
  GroupWithMap mh = subgroup_generated(M, mh_gens);

  std::vector<IVec> h_images;
  for (const IVec& v : h_gens) h_images.push_back(G.reduce(v));
  GroupWithMap qg = quotient(G, h_images);

  // induced action of G/H on M^H through lifted generators
  std::vector<IMat> qmats;
  for (std::size_t j = 0; j < qg.group.rank(); ++j) {
    IVec e = qg.group.zero();
    e[j] = 1;
    auto lift = hom_preimage(qg.map, e);
    if (!lift) throw Error(ErrorKind::Internal, "quotient projection not surjective");
    const IMat& lm = gm.matrix_of(G.index_of(G.reduce(*lift)));
    IMat col_mat(mh.group.rank(), mh.group.rank());
    for (std::size_t k = 0; k < mh.group.rank(); ++k) {
      IVec ek = mh.group.zero();
      ek[k] = 1;
      IVec w = M.reduce(lm.apply(mh.map.apply(ek)));
      auto back = hom_preimage(mh.map, w);
      if (!back) throw Error(ErrorKind::Internal, "M^H is not stable under G");
      IVec b = mh.group.reduce(*back);
      for (std::size_t r = 0; r < mh.group.rank(); ++r) col_mat(r, k) = b[r];
    }
    qmats.push_back(std::move(col_mat));
  }
  GAction act_q(qg.group, mh.group, qmats);

  CohomologyResult h1q = cohomology(act_q, 1);
  CohomologyResult h1g = cohomology(gm, 1);
  CohomologyResult h1h = cohomology(act_h, 1);

  // inflation matrix
  IMat inf_m(h1g.group().rank(), h1q.group().rank());
  for (std::size_t j = 0; j < h1q.group().rank(); ++j) {
    const std::vector<IVec>& f = h1q.representatives()[j];
    std::vector<IVec> lifted(static_cast<std::size_t>(G.order()));
    for (i64 s = 0; s < G.order(); ++s) {
      IVec qs = qg.group.reduce(qg.map.apply(G.element_at(s)));
      lifted[static_cast<std::size_t>(s)] =
          M.reduce(mh.map.apply(f[static_cast<std::size_t>(qg.group.index_of(qs))]));
    }
    IVec cls = h1g.class_of(lifted);
    for (std::size_t i = 0; i < h1g.group().rank(); ++i) inf_m(i, j) = cls[i];
  }
  Homomorphism inf{h1q.group(), h1g.group(), inf_m};

  // restriction matrix
  IMat res_m(h1h.group().rank(), h1g.group().rank());
  for (std::size_t j = 0; j < h1g.group().rank(); ++j) {
    const std::vector<IVec>& f = h1g.representatives()[j];
    std::vector<IVec> restricted(static_cast<std::size_t>(hsub.group.order()));
    for (i64 h = 0; h < hsub.group.order(); ++h) {
      IVec img = G.reduce(hsub.map.apply(hsub.group.element_at(h)));
      restricted[static_cast<std::size_t>(h)] =
          f[static_cast<std::size_t>(G.index_of(img))];
    }
    IVec cls = h1h.class_of(restricted);
    for (std::size_t i = 0; i < h1h.group().rank(); ++i) res_m(i, j) = cls[i];
  }
  Homomorphism rst{h1g.group(), h1h.group(), res_m};

  InflationRestrictionReport rep;
  rep.h1_quotient = h1q.group();
  rep.h1_total = h1g.group();
  rep.h1_subgroup = h1h.group();
  rep.inflation_injective = hom_kernel(inf).group.order() == 1;
  rep.composition_zero = rst.compose_after(inf).is_zero();
  rep.exact = rep.composition_zero &&
              hom_image(inf).group.order() == hom_kernel(rst).group.order();
  return rep;
}

std::vector<ExtensionGroup> enumerate_extensions(const GAction& action) {
  CohomologyResult h2 = cohomology(action, 2);
  std::vector<ExtensionGroup> out;
  for (i64 idx = 0; idx < h2.group().order(); ++idx)
    out.emplace_back(
        TwoCocycle(action, h2.cocycle_for(h2.group().element_at(idx))));
  return out;
}

}  // namespace capit
