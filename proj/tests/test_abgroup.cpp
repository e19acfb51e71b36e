#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "capit/abgroup.hpp"
#include "capit/congruence.hpp"
#include "capit/error.hpp"
#include "capit/matrix.hpp"

using namespace capit;

namespace {

Mat make(std::size_t r, std::size_t c, std::initializer_list<long long> vals) {
  Mat m(r, c);
  auto it = vals.begin();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = *it++;
  return m;
}

bool is_identity(const Mat& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

}  // namespace

TEST_CASE("snf identity") {
  SmithResult s = smith_normal_form(Mat::identity(2));
  CHECK(s.d == Mat::identity(2));
  CHECK(s.rank == 2);
}

TEST_CASE("snf diag(2,3) gives diag(1,6)") {
  SmithResult s = smith_normal_form(make(2, 2, {2, 0, 0, 3}));
  CHECK(s.diag(0) == 1);
  CHECK(s.diag(1) == 6);
}

TEST_CASE("snf [[4,2],[2,4]] gives diag(2,6)") {
  SmithResult s = smith_normal_form(make(2, 2, {4, 2, 2, 4}));
  CHECK(s.diag(0) == 2);
  CHECK(s.diag(1) == 6);
}

TEST_CASE("snf round trip on random matrices") {
  std::mt19937_64 rng(20240817);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t r = 1 + rng() % 12, c = 1 + rng() % 12;
    Mat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        m(i, j) = static_cast<long long>(rng() % 199) - 99;
    SmithResult s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK(is_identity(s.u * s.u_inv));
    CHECK(is_identity(s.v * s.v_inv));
    std::size_t n = std::min(r, c);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      CHECK(s.d(i, i) >= 0);
      if (s.d(i, i) != 0) {
        if (s.d(i + 1, i + 1) != 0) CHECK(s.d(i + 1, i + 1) % s.d(i, i) == 0);
      } else {
        CHECK(s.d(i + 1, i + 1) == 0);
      }
    }
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) CHECK(s.d(i, j) == 0);
  }
}

TEST_CASE("snf stays fast on sparse relation matrices") {
  // Regression: the relation lattice of Z/14 generated by all of its own
  // elements used to blow coefficients past 400 digits and effectively hang.
  FiniteAbelianGroup g(IVec{14});
  std::vector<IVec> gens;
  for (i64 i = 0; i < 14; ++i) gens.push_back(g.element_at(i));
  GroupWithMap s = subgroup_generated(g, gens);
  CHECK(s.group.invariants() == IVec{14});
}

TEST_CASE("kernel basis spans the integer kernel") {
  Mat m = make(1, 3, {2, 4, 6});
  Mat k = kernel_basis(m);
  CHECK(k.cols() == 2);
  Mat prod = m * k;
  CHECK(prod.is_zero());
}

TEST_CASE("from_presentation basics") {
  CHECK(from_presentation(1, make(1, 1, {4})).group.invariants() == IVec{4});
  CHECK(from_presentation(2, make(2, 2, {2, 0, 0, 2})).group.invariants() ==
        IVec{2, 2});
  CHECK(from_presentation(2, make(2, 2, {2, 1, 0, 2})).group.invariants() ==
        IVec{4});
  CHECK_THROWS_AS(from_presentation(2, make(1, 2, {2, 0})), Error);
}

TEST_CASE("from_presentation projection is consistent") {
  Presentation p = from_presentation(2, make(2, 2, {2, 1, 0, 2}));
  // generators project to elements whose lattice relations hold
  IVec g0 = p.project(IVec{1, 0});
  IVec g1 = p.project(IVec{0, 1});
  CHECK(p.group.add(p.group.scale(2, g0), g1) == p.group.zero());
  CHECK(p.group.scale(2, g1) == p.group.zero());
}

TEST_CASE("subgroup_generated examples") {
  FiniteAbelianGroup z4(IVec{4});
  CHECK(subgroup_generated(z4, {IVec{0}}).group.trivial());
  CHECK(subgroup_generated(z4, {IVec{2}}).group.invariants() == IVec{2});

  FiniteAbelianGroup g(IVec{2, 4});
  GroupWithMap s = subgroup_generated(g, {IVec{1, 1}});
  CHECK(s.group.invariants() == IVec{4});
  // embedding really lands on the cyclic subgroup generated by (1,1)
  IVec image = s.map.apply(IVec{1});
  CHECK(g.element_order(image) == 4);
}

TEST_CASE("quotient examples") {
  FiniteAbelianGroup z4(IVec{4});
  CHECK(quotient(z4, {IVec{2}}).group.invariants() == IVec{2});
  CHECK(quotient(z4, {}).group.invariants() == IVec{4});

  FiniteAbelianGroup v(IVec{2, 2});
  CHECK(quotient(v, {IVec{1, 1}}).group.invariants() == IVec{2});
}

TEST_CASE("quotient order bookkeeping on random subgroups") {
  std::mt19937_64 rng(7);
  std::vector<IVec> shapes = {{4}, {2, 4}, {2, 2, 2}, {12}, {3, 9}};
  for (const IVec& shape : shapes) {
    FiniteAbelianGroup g(shape);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<IVec> gens;
      std::size_t n = rng() % 3;
      for (std::size_t i = 0; i < n; ++i)
        gens.push_back(g.element_at(static_cast<i64>(rng() % g.order())));
      GroupWithMap sub = subgroup_generated(g, gens);
      GroupWithMap quo = quotient(g, gens);
      CHECK(sub.group.order() * quo.group.order() == g.order());
    }
  }
}

TEST_CASE("hom_kernel examples") {
  FiniteAbelianGroup z4(IVec{4}), z2(IVec{2});
  CHECK(hom_kernel(Homomorphism::zero(z4, z2)).group.invariants() == IVec{4});

  Homomorphism red{z4, z2, IMat(1, 1)};
  red.matrix(0, 0) = 1;
  CHECK(hom_kernel(red).group.invariants() == IVec{2});

  FiniteAbelianGroup v(IVec{2, 2});
  Homomorphism sum{v, z2, IMat(1, 2)};
  sum.matrix(0, 0) = 1;
  sum.matrix(0, 1) = 1;
  GroupWithMap k = hom_kernel(sum);
  CHECK(k.group.invariants() == IVec{2});
  IVec gen = k.map.apply(IVec{1});
  CHECK(gen == IVec{1, 1});
}

TEST_CASE("kernel image order bookkeeping on random homs") {
  std::mt19937_64 rng(99);
  std::vector<IVec> shapes = {{2}, {4}, {2, 4}, {6}, {2, 2}, {8}};
  for (int trial = 0; trial < 120; ++trial) {
    FiniteAbelianGroup dom(shapes[rng() % shapes.size()]);
    FiniteAbelianGroup cod(shapes[rng() % shapes.size()]);
    IMat m(cod.rank(), dom.rank());
    // well-defined by construction: entry scaled so d_j * column = 0
    for (std::size_t i = 0; i < cod.rank(); ++i)
      for (std::size_t j = 0; j < dom.rank(); ++j) {
        i64 ci = cod.invariants()[i], dj = dom.invariants()[j];
        i64 step = ci / gcd_i64(ci, dj);
        m(i, j) = step * static_cast<i64>(rng() % static_cast<unsigned long long>(
                                              gcd_i64(ci, dj)));
      }
    Homomorphism h{dom, cod, m};
    REQUIRE(h.is_well_defined());
    CHECK(hom_kernel(h).group.order() * hom_image(h).group.order() ==
          dom.order());
  }
}

TEST_CASE("hom_preimage finds witnesses") {
  FiniteAbelianGroup z4(IVec{4}), z2(IVec{2});
  Homomorphism red{z4, z2, IMat(1, 1)};
  red.matrix(0, 0) = 1;
  auto pre = hom_preimage(red, IVec{1});
  REQUIRE(pre.has_value());
  CHECK(red.apply(z4.reduce(*pre)) == IVec{1});

  Homomorphism dbl{z2, z4, IMat(1, 1)};
  dbl.matrix(0, 0) = 2;
  CHECK_FALSE(hom_preimage(dbl, IVec{1}).has_value());
}

TEST_CASE("hom_group invariants") {
  FiniteAbelianGroup z4(IVec{4}), z2(IVec{2}), v(IVec{2, 2});
  CHECK(hom_group(z4, z2).invariants() == IVec{2});
  CHECK(hom_group(v, FiniteAbelianGroup(IVec{4})).invariants() == IVec{2, 2});
  CHECK(hom_group(z2, FiniteAbelianGroup(IVec{3})).trivial());
}

TEST_CASE("all_subgroups counts") {
  CHECK(all_subgroups(FiniteAbelianGroup(IVec{2, 2})).size() == 5);
  CHECK(all_subgroups(FiniteAbelianGroup(IVec{4})).size() == 3);
  CHECK(all_subgroups(FiniteAbelianGroup(IVec{6})).size() == 4);
  CHECK(all_subgroups(FiniteAbelianGroup(IVec{})).size() == 1);
}

TEST_CASE("group element arithmetic") {
  FiniteAbelianGroup g(IVec{2, 4});
  CHECK(g.order() == 8);
  CHECK(g.exponent() == 4);
  CHECK(g.add(IVec{1, 3}, IVec{1, 2}) == IVec{0, 1});
  CHECK(g.neg(IVec{1, 1}) == IVec{1, 3});
  CHECK(g.element_order(IVec{1, 2}) == 2);
  CHECK(g.element_order(IVec{0, 0}) == 1);
  for (i64 i = 0; i < g.order(); ++i) CHECK(g.index_of(g.element_at(i)) == i);
  CHECK_THROWS_AS(g.reduce(IVec{1}), Error);
}

TEST_CASE("invariant factor chain is enforced") {
  CHECK_THROWS_AS(FiniteAbelianGroup(IVec{4, 2}), Error);
  CHECK_THROWS_AS(FiniteAbelianGroup(IVec{1}), Error);
}

TEST_CASE("congruence kernel agrees with brute force") {
  // kernel of x + 2y == 0 (mod 4) with x mod 4, y mod 4
  IMat m(1, 2);
  m(0, 0) = 1;
  m(0, 1) = 2;
  IMat basis = kernel_of_congruences(m, IVec{4}, IVec{4, 4});
  FiniteAbelianGroup box(IVec{4, 4});
  // collect the subgroup spanned by the basis columns inside (Z/4)^2
  std::vector<IVec> gens;
  for (std::size_t j = 0; j < basis.cols; ++j)
    gens.push_back(box.reduce(IVec{basis(0, j), basis(1, j)}));
  GroupWithMap span = subgroup_generated(box, gens);
  i64 expected = 0;
  for (i64 x = 0; x < 4; ++x)
    for (i64 y = 0; y < 4; ++y)
      if ((x + 2 * y) % 4 == 0) ++expected;
  CHECK(span.group.order() == expected);
}

TEST_CASE("solve_congruences round trip") {
  std::mt19937_64 rng(5);
  FiniteAbelianGroup cod(IVec{2, 8});
  FiniteAbelianGroup dom(IVec{4, 8});
  IMat m(2, 2);
  m(0, 0) = 1;  // well-defined: 4 * 1 == 0 mod 2? yes
  m(0, 1) = 1;
  m(1, 0) = 2;
  m(1, 1) = 3;
  Homomorphism h{dom, cod, m};
  REQUIRE(h.is_well_defined());
  for (int trial = 0; trial < 40; ++trial) {
    IVec x = dom.element_at(static_cast<i64>(rng() % dom.order()));
    IVec y = h.apply(x);
    auto back = hom_preimage(h, y);
    REQUIRE(back.has_value());
    CHECK(h.apply(dom.reduce(*back)) == y);
  }
}
