#include "capit/census.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "capit/error.hpp"

namespace capit {

std::vector<IVec> abelian_types_up_to(i64 max_order) {
  std::vector<IVec> out;
  for (i64 n = 1; n <= max_order; ++n)
    for (IVec& t : invariant_factor_lists(n)) out.push_back(std::move(t));
  return out;
}

namespace {

IMat mul_mod(const IMat& x, const IMat& y, const IVec& moduli) {
  IMat r = x * y;
  for (std::size_t i = 0; i < r.rows; ++i)
    for (std::size_t j = 0; j < r.cols; ++j) r(i, j) = mod_reduce(r(i, j), moduli[i]);
  return r;
}

bool is_identity(const IMat& m) {
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j)
      if (m(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

// automorphisms M of an elementary 2-group with M^2 = I, by bitmask scan
std::vector<IMat> involutions_f2(std::size_t k) {
  std::vector<IMat> out;
  const std::uint64_t total = std::uint64_t{1} << (k * k);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::uint32_t rows[8];
    for (std::size_t i = 0; i < k; ++i)
      rows[i] = static_cast<std::uint32_t>((mask >> (i * k)) & ((1u << k) - 1));
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
      std::uint32_t sq = 0;
      for (std::size_t j = 0; j < k; ++j)
        if (rows[i] & (1u << j)) sq ^= rows[j];
      if (sq != (1u << i)) ok = false;
    }
    if (!ok) continue;
    IMat m(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        m(i, j) = (rows[i] >> j) & 1;
    out.push_back(std::move(m));
  }
  return out;
}

// all automorphisms of `a` whose order divides d
std::vector<IMat> automorphisms_of_order_dividing(const FiniteAbelianGroup& a,
                                                  i64 d) {
  const std::size_t k = a.rank();
  if (k == 0) return {IMat(0, 0)};
  if (d == 1) return {IMat::identity(k)};

  bool all_two = true;
  for (i64 v : a.invariants())
    if (v != 2) all_two = false;
  if (all_two && d == 2 && k * k > 20) return involutions_f2(k);

  const IVec& inv = a.invariants();
  // entry (i,j) ranges over multiples of inv[i]/gcd(inv[i], inv[j])
  std::vector<i64> radix(k * k), step(k * k);
  Int total = 1;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      i64 g = gcd_i64(inv[i], inv[j]);
      radix[i * k + j] = g;
      step[i * k + j] = inv[i] / g;
      total *= g;
    }
  if (total > (Int(1) << 26))
    throw Error(ErrorKind::CapExceeded, "endomorphism scan too large");

  std::vector<IMat> out;
  std::vector<i64> digits(k * k, 0);
  const i64 order = a.order();
  std::vector<char> seen(static_cast<std::size_t>(order));
  for (;;) {
    IMat m(k, k);
    for (std::size_t e = 0; e < k * k; ++e)
      m.a[e] = digits[e] * step[e];
    // bijectivity on elements
    std::fill(seen.begin(), seen.end(), 0);
    bool bij = true;
    for (i64 x = 0; x < order && bij; ++x) {
      i64 y = a.index_of(a.reduce(m.apply(a.element_at(x))));
      if (seen[static_cast<std::size_t>(y)]) bij = false;
      seen[static_cast<std::size_t>(y)] = 1;
    }
    if (bij) {
      IMat p = IMat::identity(k);
      for (i64 t = 0; t < d; ++t) p = mul_mod(m, p, inv);
      if (is_identity(p)) out.push_back(std::move(m));
    }
    // increment mixed-radix counter
    std::size_t pos = 0;
    while (pos < k * k && ++digits[pos] == radix[pos]) digits[pos++] = 0;
    if (pos == k * k) break;
  }
  return out;
}

void assemble_actions(const FiniteAbelianGroup& g, const FiniteAbelianGroup& a,
                      const std::vector<const std::vector<IMat>*>& cands,
                      std::size_t pos, std::vector<IMat>& cur,
                      std::vector<std::vector<IMat>>& out) {
  if (pos == cands.size()) {
    out.push_back(cur);
    return;
  }
  for (const IMat& m : *cands[pos]) {
    bool ok = true;
    for (const IMat& prev : cur)
      if (mul_mod(prev, m, a.invariants()) != mul_mod(m, prev, a.invariants())) {
        ok = false;
        break;
      }
    if (!ok) continue;
    cur.push_back(m);
    assemble_actions(g, a, cands, pos + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<IMat>> all_actions(const FiniteAbelianGroup& g,
                                           const FiniteAbelianGroup& a) {
  if (g.rank() == 0) return {{}};
  std::map<i64, std::vector<IMat>> by_order;
  for (i64 d : g.invariants())
    if (!by_order.count(d)) by_order[d] = automorphisms_of_order_dividing(a, d);
  std::vector<const std::vector<IMat>*> cands;
  for (i64 d : g.invariants()) cands.push_back(&by_order[d]);
  std::vector<std::vector<IMat>> out;
  std::vector<IMat> cur;
  assemble_actions(g, a, cands, 0, cur, out);
  return out;
}

namespace {

std::mutex subgroup_cache_mutex;
std::map<IVec, std::vector<std::vector<IVec>>> subgroup_cache;

const std::vector<std::vector<IVec>>& cached_subgroups(const FiniteAbelianGroup& g) {
  std::lock_guard<std::mutex> lock(subgroup_cache_mutex);
  auto it = subgroup_cache.find(g.invariants());
  if (it == subgroup_cache.end())
    it = subgroup_cache.emplace(g.invariants(), all_subgroups(g)).first;
  return it->second;
}

// additive closure of a set of A-element indices
std::vector<i64> additive_closure(const FiniteAbelianGroup& a,
                                  const std::set<i64>& start) {
  std::set<i64> closed(start);
  closed.insert(0);
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<i64> cur(closed.begin(), closed.end());
    for (i64 x : cur)
      for (i64 y : cur)
        if (closed.insert(a.index_of(a.add(a.element_at(x), a.element_at(y)))).second)
          grew = true;
  }
  return {closed.begin(), closed.end()};
}

}  // namespace

ExtensionCheckResult check_extension(const ExtensionGroup& ext,
                                     const ExtensionCheckOptions& opt) {
  const FiniteAbelianGroup& A = ext.a();
  ExtensionCheckResult r;
  r.index = ext.index_of_a();

  DerivedSubgroup der = derived_subgroup(ext);
  ResolventModule res(ext);
  // throws if the resolvent route and the coset oracle disagree
  Abelianization ab = abelianization(ext, res, der);
  const FiniteAbelianGroup& q = ab.group;

  std::vector<IVec> ver(static_cast<std::size_t>(ext.order()));
  r.lemma_a = true;
  for (i64 x = 0; x < ext.order(); ++x) {
    ver[static_cast<std::size_t>(x)] = transfer(ext, x);
    if (ver[static_cast<std::size_t>(x)] != transfer_via_trace(res, x))
      r.lemma_a = false;
  }

  // (A : U') kills the trace of every basis vector of B
  const i64 au = A.order() / der.sub.group.order();
  r.lemma_b = true;
  for (std::size_t j = 0; j < res.dim(); ++j) {
    IVec e(res.dim(), 0);
    e[j] = 1;
    if (A.element_order(A.scale(au, res.trace(e))) != 1) r.lemma_b = false;
  }

  Homomorphism vh = induced_transfer(ext, ab);
  GroupWithMap kern = hom_kernel(vh);
  r.kernel_invariants = kern.group.invariants();
  r.divisibility = kern.group.order() % r.index == 0;

  r.power_identity = true;
  for (i64 x = 0; x < ext.order(); ++x) {
    i64 u = ext.from_a_index(A.index_of(ver[static_cast<std::size_t>(x)]));
    IVec lhs = q.element_at(ab.class_index[static_cast<std::size_t>(u)]);
    IVec rhs = q.scale(r.index, q.element_at(ab.class_index[static_cast<std::size_t>(x)]));
    if (lhs != rhs) r.power_identity = false;
  }

  SubgroupTransferReport pid = transfer_to_subgroup(ext, ab, der, der.a_indices);
  r.principal_ideal = pid.kernel_order == q.order();

  std::vector<IVec> der_elems;
  for (i64 u : der.a_indices) der_elems.push_back(A.element_at(u));
  GroupWithMap aq = quotient(A, der_elems);  // A/U'

  r.suzuki_all = true;
  if (opt.intermediate_subgroups) {
    for (const auto& sg : cached_subgroups(aq.group)) {
      std::set<i64> gens(der.a_indices.begin(), der.a_indices.end());
      for (const IVec& gen : sg) {
        auto lift = hom_preimage(aq.map, aq.group.reduce(gen));
        if (!lift) throw Error(ErrorKind::Internal, "quotient lift missing");
        gens.insert(A.index_of(A.reduce(*lift)));
      }
      std::vector<i64> aprime = additive_closure(A, gens);
      SubgroupTransferReport sr = transfer_to_subgroup(ext, ab, der, aprime);
      ++r.subgroup_cases;
      if (!sr.divides) r.suzuki_all = false;
    }
  } else {
    // endpoints only
    r.subgroup_cases = 2;
    if (!pid.divides || !r.divisibility) r.suzuki_all = false;
  }

  if (!opt.cocycle_checks) return r;

  // 1-cocycle family: Tannaka-Terada gammas and Miyake phis
  CocycleSpace space = one_cocycles(ext, opt.cocycle_cap, opt.seed);
  r.cocycles_exhaustive = space.exhaustive;
  r.cocycles_checked = static_cast<i64>(space.cocycles.size());

  std::set<IVec> phis;
  for (const auto& f : space.cocycles) {
    // gamma(x) = f(x) x; hypothesis A = U^{gamma-1} U'
    std::set<i64> fgens(der.a_indices.begin(), der.a_indices.end());
    for (i64 x = 0; x < ext.order(); ++x)
      fgens.insert(A.index_of(f[static_cast<std::size_t>(x)]));
    std::vector<i64> span = additive_closure(A, fgens);
    if (static_cast<i64>(span.size()) == A.order()) {
      r.gamma_found = true;
      for (i64 c = 0; c < q.order(); ++c) {
        i64 rep = ab.rep[static_cast<std::size_t>(c)];
        i64 fcls = ab.class_index[static_cast<std::size_t>(
            ext.from_a_index(A.index_of(f[static_cast<std::size_t>(rep)])))];
        if (fcls != 0) continue;  // class not gamma-fixed
        if (A.element_order(ver[static_cast<std::size_t>(rep)]) != 1)
          r.tannaka_ok = false;
      }
    }

    IVec phi(static_cast<std::size_t>(ext.order()));
    for (i64 x = 0; x < ext.order(); ++x)
      phi[static_cast<std::size_t>(x)] =
          aq.group.index_of(aq.map.apply(f[static_cast<std::size_t>(x)]));
    phis.insert(std::move(phi));
  }

  for (const IVec& phi : phis) {
    std::set<i64> vals(phi.begin(), phi.end());
    std::vector<i64> im = additive_closure(aq.group, vals);
    i64 d_phi = aq.group.order() / static_cast<i64>(im.size());
    if (d_phi == 1) r.miyake_found = true;
    for (i64 x = 0; x < ext.order(); ++x) {
      if (phi[static_cast<std::size_t>(x)] != 0) continue;
      if (A.element_order(A.scale(d_phi, ver[static_cast<std::size_t>(x)])) != 1)
        r.miyake_scolie = false;
    }
  }
  return r;
}

std::string instance_key(const IVec& g_inv, const IVec& a_inv,
                         const std::vector<IMat>& action, i64 h2_index) {
  std::ostringstream os;
  os << "g=";
  for (std::size_t i = 0; i < g_inv.size(); ++i) os << (i ? "." : "") << g_inv[i];
  os << ";a=";
  for (std::size_t i = 0; i < a_inv.size(); ++i) os << (i ? "." : "") << a_inv[i];
  os << ";act=";
  for (std::size_t m = 0; m < action.size(); ++m) {
    if (m) os << "|";
    for (std::size_t e = 0; e < action[m].a.size(); ++e)
      os << (e ? "," : "") << action[m].a[e];
  }
  os << ";h2=" << h2_index;
  return os.str();
}

namespace {

// cap-many indices spread evenly over [0, total)
std::vector<std::size_t> strided_subset(std::size_t total, std::size_t cap) {
  std::vector<std::size_t> out;
  if (cap == 0 || total <= cap) {
    for (std::size_t i = 0; i < total; ++i) out.push_back(i);
  } else {
    for (std::size_t i = 0; i < cap; ++i) out.push_back(i * total / cap);
  }
  return out;
}

}  // namespace

CensusSummary run_census(const CensusOptions& opt) {
  struct Task {
    IVec g_inv, a_inv;
    std::vector<IMat> action;
    bool thin_classes = false;
  };
  std::vector<Task> tasks;
  CensusSummary sum;
  for (const IVec& gt : abelian_types_up_to(std::min<i64>(opt.max_order, 16))) {
    FiniteAbelianGroup g(gt);
    for (const IVec& at : abelian_types_up_to(opt.max_order)) {
      FiniteAbelianGroup a(at);
      if (g.order() * a.order() > opt.max_order) continue;
      bool thin = opt.exhaustive_below != 0 &&
                  g.order() * a.order() > opt.exhaustive_below;
      std::vector<std::vector<IMat>> acts = all_actions(g, a);
      std::vector<std::size_t> pick =
          strided_subset(acts.size(), thin ? opt.max_actions : 0);
      sum.skipped_actions += static_cast<i64>(acts.size() - pick.size());
      for (std::size_t i : pick)
        tasks.push_back(Task{gt, at, std::move(acts[i]), thin});
    }
  }

  sum.pairs = static_cast<i64>(tasks.size());

  std::atomic<std::size_t> next{0};
  std::mutex merge_mutex;
  unsigned n_threads = opt.threads ? opt.threads
                                   : std::max(1u, std::thread::hardware_concurrency());

  auto worker = [&]() {
    CensusSummary local;
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) break;
      const Task& t = tasks[i];
      try {
        FiniteAbelianGroup g(t.g_inv), a(t.a_inv);
        GAction action(g, a, t.action);
        CohomologyResult h2 = cohomology(action, 2);
        std::size_t n_classes = static_cast<std::size_t>(h2.group().order());
        std::vector<std::size_t> pick =
            strided_subset(n_classes, t.thin_classes ? opt.max_classes : 0);
        local.skipped_classes += static_cast<i64>(n_classes - pick.size());
        for (std::size_t h : pick) {
          std::string key = instance_key(t.g_inv, t.a_inv, t.action,
                                         static_cast<i64>(h));
          ExtensionGroup ext(TwoCocycle(
              action, h2.cocycle_for(h2.group().element_at(static_cast<i64>(h)))));
          ExtensionCheckResult r = check_extension(ext, opt.checks);
          ++local.extensions;
          local.subgroup_cases += r.subgroup_cases;
          if (r.gamma_found) ++local.gamma_hits;
          if (r.miyake_found) ++local.miyake_found;
          if (!r.cocycles_exhaustive) local.sampled_somewhere = true;
          auto flag = [&](bool ok, const char* name) {
            if (!ok) local.violations.push_back(CensusViolation{key, name});
          };
          flag(r.lemma_a, "lemma_a");
          flag(r.lemma_b, "lemma_b");
          flag(r.power_identity, "power_identity");
          flag(r.divisibility, "divisibility");
          flag(r.principal_ideal, "principal_ideal");
          flag(r.suzuki_all, "suzuki_intermediate");
          flag(r.tannaka_ok, "tannaka_terada");
          flag(r.miyake_scolie, "miyake_scolie");
        }
      } catch (const std::exception& e) {
        local.violations.push_back(CensusViolation{
            instance_key(t.g_inv, t.a_inv, t.action, -1),
            std::string("exception: ") + e.what()});
      }
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    sum.extensions += local.extensions;
    sum.subgroup_cases += local.subgroup_cases;
    sum.gamma_hits += local.gamma_hits;
    sum.miyake_found += local.miyake_found;
    sum.sampled_somewhere = sum.sampled_somewhere || local.sampled_somewhere;
    sum.skipped_classes += local.skipped_classes;
    for (auto& v : local.violations) sum.violations.push_back(std::move(v));
  };

  std::vector<std::thread> pool;
  for (unsigned i = 0; i + 1 < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::sort(sum.violations.begin(), sum.violations.end(),
            [](const CensusViolation& x, const CensusViolation& y) {
              return std::tie(x.instance, x.check) < std::tie(y.instance, y.check);
            });
  return sum;
}

}  // namespace capit
