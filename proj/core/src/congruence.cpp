#include "capit/congruence.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "capit/error.hpp"

namespace capit {

IMat IMat::identity(std::size_t n) {
  IMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IMat IMat::operator*(const IMat& o) const {
  assert(cols == o.rows);
  IMat r(rows, o.cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) {
      i64 x = (*this)(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < o.cols; ++j) r(i, j) += x * o(k, j);
    }
  return r;
}

IVec IMat::apply(const IVec& x) const {
  assert(x.size() == cols);
  IVec y(rows, 0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

i64 gcd_i64(i64 a, i64 b) { return std::gcd(a, b); }

i64 xgcd_i64(i64 a, i64 b, i64& s, i64& t) {
  i64 r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    i64 q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    s0 -= q * s1;
    std::swap(s0, s1);
    t0 -= q * t1;
    std::swap(t0, t1);
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  s = s0;
  t = t0;
  return r0;
}

i64 mod_reduce(i64 x, i64 m) {
  if (m <= 0) return x;
  i64 r = x % m;
  return r < 0 ? r + m : r;
}

CongruenceKernel::CongruenceKernel(IVec col_moduli)
    : moduli_(std::move(col_moduli)),
      basis_(IMat::identity(moduli_.size())) {
  for (i64 m : moduli_)
    if (m < 1)
      throw Error(ErrorKind::Internal, "column modulus must be positive");
}

void CongruenceKernel::add_row(const IVec& row, i64 modulus) {
  assert(row.size() == moduli_.size());
  const std::size_t c = moduli_.size();
  if (modulus == 1) return;

  // w_j = row . column_j  (mod modulus)
  IVec w(c, 0);
  // rows are typically sparse; with small moduli the products fit comfortably
  // in 64 bits, so accumulate first and reduce once per column
  i64 max_col = 0;
  for (i64 m : moduli_) max_col = std::max(max_col, m);
  if (modulus <= (i64(1) << 20) && max_col <= (i64(1) << 20) &&
      c <= (std::size_t(1) << 22)) {
    bool any = false;
    for (std::size_t i = 0; i < c; ++i) {
      i64 ri = mod_reduce(row[i], modulus);
      if (ri == 0) continue;
      any = true;
      const i64* b = &basis_.a[i * c];
      for (std::size_t j = 0; j < c; ++j) w[j] += ri * b[j];
    }
    if (!any) return;
    for (std::size_t j = 0; j < c; ++j) w[j] = mod_reduce(w[j], modulus);
  } else {
    for (std::size_t j = 0; j < c; ++j) {
      i64 acc = 0;
      for (std::size_t i = 0; i < c; ++i)
        acc = mod_reduce(acc + mod_reduce(row[i], modulus) * basis_(i, j),
                         modulus);
      w[j] = acc;
    }
  }

  std::size_t pivot = c;
  for (std::size_t j = 0; j < c; ++j) {
    if (w[j] == 0) continue;
    if (pivot == c) {
      pivot = j;
      continue;
    }
    // Unimodular 2-column update concentrating the gcd in the pivot column.
    i64 s, t;
    i64 g = xgcd_i64(w[pivot], w[j], s, t);
    i64 wp = w[pivot] / g, wj = w[j] / g;
    for (std::size_t i = 0; i < c; ++i) {
      i64 bp = basis_(i, pivot), bj = basis_(i, j);
      basis_(i, pivot) = mod_reduce(s * bp + t * bj, moduli_[i]);
      basis_(i, j) = mod_reduce(wj * bp - wp * bj, moduli_[i]);
    }
    w[pivot] = mod_reduce(g, modulus);
    w[j] = 0;
    if (w[pivot] == 0) pivot = c;
  }
  if (pivot == c) return;

  // g * y_pivot == 0 (mod modulus)  =>  y_pivot in (modulus/gcd) Z.
  i64 scale = modulus / gcd_i64(w[pivot], modulus);
  for (std::size_t i = 0; i < c; ++i)
    basis_(i, pivot) = mod_reduce(basis_(i, pivot) * scale, moduli_[i]);
}

IMat kernel_of_congruences(const IMat& m, const IVec& row_moduli,
                           const IVec& col_moduli) {
  assert(m.rows == row_moduli.size() && m.cols == col_moduli.size());
  CongruenceKernel k(col_moduli);
  IVec row(m.cols);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) row[j] = m(i, j);
    k.add_row(row, row_moduli[i]);
  }
  // Append the moduli lattice: together with the working basis these columns
  // generate the full solution lattice.
  const std::size_t c = m.cols;
  IMat out(c, 2 * c);
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = 0; j < c; ++j) out(i, j) = k.basis()(i, j);
    out(i, c + i) = col_moduli[i];
  }
  return out;
}

std::optional<IVec> solve_congruences(const IMat& m, const IVec& row_moduli,
                                      const IVec& col_moduli,
                                      const IVec& target) {
  assert(m.rows == target.size());
  const std::size_t c = m.cols;
  // Augment with the target as an extra column whose modulus is the lcm of
  // the row moduli; a lattice vector with last coordinate -1 is a solution.
  i64 lcm = 1;
  for (i64 r : row_moduli) lcm = std::lcm(lcm, r);
  IMat aug(m.rows, c + 1);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < c; ++j) aug(i, j) = m(i, j);
    aug(i, c) = mod_reduce(target[i], row_moduli[i]);
  }
  IVec cm = col_moduli;
  cm.push_back(lcm);
  IMat gen = kernel_of_congruences(aug, row_moduli, cm);

  // Accumulate a generator combination whose last coordinate has gcd g; the
  // system is solvable iff g divides 1 mod lcm, i.e. gcd(g, lcm) == 1.
  IVec combo(c + 1, 0);
  i64 g = 0;
  for (std::size_t j = 0; j < gen.cols; ++j) {
    i64 z = gen(c, j);
    if (z == 0) continue;
    if (g == 0) {
      g = z;
      for (std::size_t i = 0; i <= c; ++i) combo[i] = gen(i, j);
      continue;
    }
    i64 s, t;
    i64 g2 = xgcd_i64(g, z, s, t);
    if (g2 == g) continue;
    for (std::size_t i = 0; i <= c; ++i)
      combo[i] = mod_reduce(s * combo[i] + t * gen(i, j), cm[i]);
    g = g2;
  }
  if (g == 0 || gcd_i64(g, lcm) != 1) return std::nullopt;

  // Scale the combination so the last coordinate is -1 modulo lcm.
  i64 s, t;
  xgcd_i64(g, lcm, s, t);  // s*g == 1 (mod lcm)
  IVec x(c);
  for (std::size_t j = 0; j < c; ++j)
    x[j] = mod_reduce(-s * combo[j], col_moduli[j]);
  return x;
}

}  // namespace capit
