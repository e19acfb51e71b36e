#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace capit {

using i64 = std::int64_t;
using IVec = std::vector<i64>;

/// Dense row-major int64 matrix for the small-modulus paths (group elements,
/// actions, cochain maps).  Entries are kept reduced by the caller.
struct IMat {
  std::size_t rows = 0, cols = 0;
  IVec a;

  IMat() = default;
  IMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
  static IMat identity(std::size_t n);

  i64& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  i64 operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  bool operator==(const IMat&) const = default;

  IMat operator*(const IMat& o) const;
  IVec apply(const IVec& x) const;
};

/// Basis of the solution lattice of a system of linear congruences
///   row_i . x == 0  (mod row_modulus_i),
/// where coordinate j of x lives modulo col_moduli[j] (col modulus must be a
/// period of the system: col_moduli[j] * column j == 0 mod every row modulus,
/// which holds for any well-defined homomorphism of finite abelian groups).
///
/// Rows are consumed one at a time through a callback so the caller never has
/// to materialize a large coboundary matrix.  The returned basis is a square
/// cols x cols matrix whose columns generate the lattice of solutions
/// (it always has full rank because the moduli lattice is contained in it).
class CongruenceKernel {
public:
  explicit CongruenceKernel(IVec col_moduli);

  /// Intersect the current solution lattice with {x : row . x == 0 (mod m)}.
  void add_row(const IVec& row, i64 modulus);

  /// Column-generators of the solution lattice, entries reduced mod the
  /// column moduli.
  const IMat& basis() const { return basis_; }
  std::size_t cols() const { return moduli_.size(); }

private:
  IVec moduli_;
  IMat basis_;  // cols x cols, columns generate the lattice
};

IMat kernel_of_congruences(const IMat& m, const IVec& row_moduli,
                           const IVec& col_moduli);

/// One solution of  sum_j x_j * col_j(m) == target (mod row_moduli),
/// with x_j taken mod col_moduli[j]; nullopt when the system is unsolvable.
std::optional<IVec> solve_congruences(const IMat& m, const IVec& row_moduli,
                                      const IVec& col_moduli,
                                      const IVec& target);

i64 gcd_i64(i64 a, i64 b);
/// g = gcd(a,b) together with s,t such that s*a + t*b = g.
i64 xgcd_i64(i64 a, i64 b, i64& s, i64& t);
i64 mod_reduce(i64 x, i64 m);  // representative in [0, m)

}  // namespace capit
