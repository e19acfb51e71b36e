#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "capit/cohomology.hpp"
#include "capit/error.hpp"
#include "capit/transfer.hpp"

using namespace capit;

namespace {

IMat imat(std::size_t r, std::size_t c, std::initializer_list<i64> vals) {
  IMat m(r, c);
  auto it = vals.begin();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = *it++;
  return m;
}

// A = Z/2, G = Z/2 trivial, c(s,s) = 1: U is cyclic of order 4.
ExtensionGroup z4_over_z2() {
  GAction act = GAction::trivial(FiniteAbelianGroup({2}), FiniteAbelianGroup({2}));
  std::vector<IVec> table(4, IVec{0});
  table[3] = IVec{1};
  return ExtensionGroup(TwoCocycle(act, table));
}

ExtensionGroup q8() {
  GAction act(FiniteAbelianGroup({2}), FiniteAbelianGroup({4}),
              {imat(1, 1, {3})});
  std::vector<IVec> table(4, IVec{0});
  table[3] = IVec{2};
  return ExtensionGroup(TwoCocycle(act, table));
}

std::vector<ExtensionGroup> sample_extensions() {
  std::vector<ExtensionGroup> out{z4_over_z2(), q8()};
  GAction swap_act(FiniteAbelianGroup({2}), FiniteAbelianGroup({2, 2}),
                   {imat(2, 2, {0, 1, 1, 0})});
  for (ExtensionGroup& e : enumerate_extensions(swap_act)) out.push_back(e);
  GAction inv8(FiniteAbelianGroup({2}), FiniteAbelianGroup({8}),
               {imat(1, 1, {7})});
  for (ExtensionGroup& e : enumerate_extensions(inv8)) out.push_back(e);
  GAction triv22 = GAction::trivial(FiniteAbelianGroup({2, 2}),
                                    FiniteAbelianGroup({2}));
  for (ExtensionGroup& e : enumerate_extensions(triv22)) out.push_back(e);
  return out;
}

}  // namespace

TEST_CASE("trivial G gives the identity transfer") {
  GAction act = GAction::trivial(FiniteAbelianGroup(IVec{}),
                                 FiniteAbelianGroup({2, 4}));
  ExtensionGroup ext{TwoCocycle::trivial(act)};
  for (i64 x = 0; x < ext.order(); ++x)
    CHECK(transfer(ext, x) == ext.a_part(x));
  TransferKernelResult k = transfer_kernel(ext);
  CHECK(k.report.index == 1);
  CHECK(k.report.kernel_order == 1);
  CHECK(k.kernel.group.trivial());
}

TEST_CASE("transfer on the Z/4 over Z/2 instance doubles") {
  ExtensionGroup ext = z4_over_z2();
  i64 us = ext.make({0}, {1});
  CHECK(transfer(ext, us) == IVec{1});  // c(1,s) + c(s,s)
  TransferKernelResult k = transfer_kernel(ext);
  CHECK(k.report.index == 2);
  CHECK(k.report.kernel_order == 2);
  CHECK(k.report.kernel_invariants == IVec{2});
  CHECK(k.report.divides);
  CHECK(k.report.methods_agree);
}

TEST_CASE("Q8 transfer to A = Z/4 and its kernel") {
  ExtensionGroup ext = q8();
  TransferKernelResult k = transfer_kernel(ext);
  CHECK(k.report.index == 2);
  CHECK(k.report.divides);
  CHECK(k.report.methods_agree);
  // U/U' = Z/2 x Z/2; N = 1 + s annihilates A, so Ver factors through the
  // cocycle sums alone and its kernel has order 4 or 2; divisibility pins 2 | it
  CHECK(k.report.kernel_order % 2 == 0);
}

TEST_CASE("transfer is constant on U'-cosets and a homomorphism") {
  for (const ExtensionGroup& ext : sample_extensions()) {
    DerivedSubgroup der = derived_subgroup(ext);
    Abelianization ab = abelianization(ext);
    const FiniteAbelianGroup& a = ext.a();
    for (i64 x = 0; x < ext.order(); ++x) {
      IVec tx = transfer(ext, x);
      for (i64 d : der.a_indices)
        CHECK(transfer(ext, ext.mul(x, ext.from_a_index(d))) == tx);
      for (i64 y = 0; y < ext.order(); ++y)
        CHECK(transfer(ext, ext.mul(x, y)) == a.add(tx, transfer(ext, y)));
    }
    // the induced map on U/U' agrees with the raw formula
    Homomorphism ver = induced_transfer(ext, ab);
    for (i64 x = 0; x < ext.order(); ++x)
      CHECK(ver.apply(ab.group.element_at(ab.class_index[x])) ==
            transfer(ext, x));
  }
}

TEST_CASE("direct transfer equals the resolvent trace pointwise") {
  for (const ExtensionGroup& ext : sample_extensions()) {
    ResolventModule res(ext);
    for (i64 x = 0; x < ext.order(); ++x)
      CHECK(transfer(ext, x) == transfer_via_trace(res, x));
  }
}

TEST_CASE("power identity: Ver(x) projects to (U:A).x in U/U'") {
  for (const ExtensionGroup& ext : sample_extensions()) {
    Abelianization ab = abelianization(ext);
    i64 n = ext.index_of_a();
    for (i64 x = 0; x < ext.order(); ++x) {
      i64 img = ab.class_index[ext.make(transfer(ext, x), ext.g().zero())];
      IVec cls = ab.group.element_at(ab.class_index[x]);
      CHECK(img == ab.group.index_of(ab.group.scale(n, cls)));
    }
  }
}

TEST_CASE("principal ideal: transfer into U' vanishes") {
  for (const ExtensionGroup& ext : sample_extensions())
    CHECK(check_principal_ideal(ext));
}

TEST_CASE("Q8 transfer to A' = U' has full kernel of order 4") {
  ExtensionGroup ext = q8();
  DerivedSubgroup der = derived_subgroup(ext);
  Abelianization ab = abelianization(ext);
  SubgroupTransferReport r = transfer_to_subgroup(ext, ab, der, der.a_indices);
  CHECK(r.index == 4);
  CHECK(r.kernel_order == 4);
  CHECK(r.kernel_invariants == IVec({2, 2}));
  CHECK(r.divides);
}

TEST_CASE("transfer to a subgroup not containing U' is rejected") {
  ExtensionGroup ext = q8();
  DerivedSubgroup der = derived_subgroup(ext);
  Abelianization ab = abelianization(ext);
  // {0} does not contain U' = {0, 2}
  CHECK_THROWS_AS(transfer_to_subgroup(ext, ab, der, {0}), Error);
}

TEST_CASE("one-cocycles satisfy their defining identity") {
  for (const ExtensionGroup& ext : sample_extensions()) {
    CocycleSpace cs = one_cocycles(ext, 64, 1);
    CHECK(cs.total >= 1);
    CHECK(!cs.cocycles.empty());
    const FiniteAbelianGroup& a = ext.a();
    for (const std::vector<IVec>& f : cs.cocycles) {
      CHECK(f[ext.identity()] == a.zero());
      for (i64 x = 0; x < ext.order(); ++x)
        for (i64 y = 0; y < ext.order(); ++y) {
          IVec rhs = a.add(f[x], ext.cocycle().action().apply(
                                     ext.g().index_of(ext.g_part(x)), f[y]));
          CHECK(f[ext.mul(x, y)] == rhs);
        }
    }
  }
}

TEST_CASE("zero cocycle gives gamma = identity, hypothesis iff A = U'") {
  ExtensionGroup ext = q8();
  Endomorphism id = Endomorphism::identity(ext);
  // U^{gamma-1} is trivial for the identity and U' = {0,2} != A = Z/4
  CHECK(!gamma_hypothesis_holds(ext, id));
  Abelianization ab = abelianization(ext);
  CHECK_THROWS_AS(tannaka_terada_check(ext, ab, id), Error);
}

TEST_CASE("gamma-fixed classes capitulate whenever the hypothesis holds") {
  for (const ExtensionGroup& ext : sample_extensions()) {
    Abelianization ab = abelianization(ext);
    CocycleSpace cs = one_cocycles(ext, 256, 0);
    for (const std::vector<IVec>& f : cs.cocycles) {
      Endomorphism gamma = endomorphism_from_cocycle(ext, f);
      if (!gamma_hypothesis_holds(ext, gamma)) continue;
      CHECK(tannaka_terada_check(ext, ab, gamma));
    }
  }
}

TEST_CASE("Miyake criterion on the Z/4 instance") {
  MiyakeResult r = miyake_criterion(z4_over_z2());
  CHECK(r.found);  // a transfer-compatible cocycle reduces onto A/U'
  CHECK(r.scolie_ok);
  CHECK(r.divisibility_ok);
  CHECK(r.exhaustive);
  CHECK(r.cocycles_checked >= 1);
}

TEST_CASE("Miyake with A = U' always finds a surjection, d = 1") {
  // U' = A forces A/U' trivial, so phi = 0 is onto and the scholium is Th. 8
  ExtensionGroup ext = q8();
  DerivedSubgroup der = derived_subgroup(ext);
  REQUIRE(der.sub.group.invariants() == IVec{2});
  MiyakeResult r = miyake_criterion(ext);
  CHECK(r.scolie_ok);
  CHECK(r.divisibility_ok);
}

TEST_CASE("Miyake scholium holds across sample extensions") {
  for (const ExtensionGroup& ext : sample_extensions()) {
    MiyakeResult r = miyake_criterion(ext, 256, 0);
    CHECK(r.scolie_ok);
    CHECK(r.divisibility_ok);
  }
}

TEST_CASE("suzuki divisibility across every intermediate subgroup") {
  for (const ExtensionGroup& ext : sample_extensions()) {
    DerivedSubgroup der = derived_subgroup(ext);
    Abelianization ab = abelianization(ext);
    std::set<i64> derived(der.a_indices.begin(), der.a_indices.end());
    const FiniteAbelianGroup& a = ext.a();
    for (const std::vector<IVec>& gens : all_subgroups(a)) {
      std::vector<IVec> with_der = gens;
      for (i64 d : derived) with_der.push_back(a.element_at(d));
      GroupWithMap sub = subgroup_generated(a, with_der);
      std::vector<i64> idx;
      for (i64 i = 0; i < sub.group.order(); ++i)
        idx.push_back(a.index_of(sub.map.apply(sub.group.element_at(i))));
      std::sort(idx.begin(), idx.end());
      SubgroupTransferReport r = transfer_to_subgroup(ext, ab, der, idx);
      CHECK(r.divides);
    }
  }
}
