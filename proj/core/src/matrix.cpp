#include "capit/matrix.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <type_traits>
#include <utility>

namespace capit {

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  assert(cols_ == o.rows_);
  Mat r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& x = (*this)(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
    }
  return r;
}

Mat Mat::transpose() const {
  Mat r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

std::vector<Int> Mat::apply(const std::vector<Int>& x) const {
  assert(x.size() == cols_);
  std::vector<Int> y(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

void Mat::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < cols_; ++k)
    std::swap((*this)(i, k), (*this)(j, k));
}

void Mat::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < rows_; ++k)
    std::swap((*this)(k, i), (*this)(k, j));
}

void Mat::add_row(std::size_t i, std::size_t j, const Int& c) {
  for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) += c * (*this)(j, k);
}

void Mat::add_col(std::size_t i, std::size_t j, const Int& c) {
  for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) += c * (*this)(k, j);
}

void Mat::negate_row(std::size_t i) {
  for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) = -(*this)(i, k);
}

void Mat::negate_col(std::size_t i) {
  for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) = -(*this)(k, i);
}

bool Mat::is_zero() const {
  for (const Int& x : a_)
    if (x != 0) return false;
  return true;
}

namespace {

// g = p*a + q*b > 0 for (a, b) != (0, 0)
template <class T>
T xgcd(T a, T b, T& p, T& q) {
  T p0(1), q0(0), p1(0), q1(1);
  while (b != 0) {
    T t = a / b;
    T r = a - t * b;
    a = b;
    b = r;
    T np = p0 - t * p1, nq = q0 - t * q1;
    p0 = p1;
    q0 = q1;
    p1 = np;
    q1 = nq;
  }
  if (a < 0) {
    a = -a;
    p0 = -p0;
    q0 = -q0;
  }
  p = p0;
  q = q0;
  return a;
}

// 64-bit scalar that aborts the fast path on any wraparound.  Entry growth
// during the reduction is usually tame thanks to smallest-pivot selection,
// so the exact fallback is rarely taken.
struct Overflow {};

struct Ck {
  std::int64_t v = 0;
  Ck() = default;
  Ck(std::int64_t x) : v(x) {}

  friend Ck operator+(Ck a, Ck b) {
    Ck r;
    if (__builtin_add_overflow(a.v, b.v, &r.v)) throw Overflow{};
    return r;
  }
  friend Ck operator-(Ck a, Ck b) {
    Ck r;
    if (__builtin_sub_overflow(a.v, b.v, &r.v)) throw Overflow{};
    return r;
  }
  friend Ck operator*(Ck a, Ck b) {
    Ck r;
    if (__builtin_mul_overflow(a.v, b.v, &r.v)) throw Overflow{};
    return r;
  }
  friend Ck operator/(Ck a, Ck b) {
    if (b.v == -1 && a.v == std::numeric_limits<std::int64_t>::min())
      throw Overflow{};
    return Ck(a.v / b.v);
  }
  friend Ck operator%(Ck a, Ck b) {
    if (b.v == -1) return Ck(0);
    return Ck(a.v % b.v);
  }
  Ck operator-() const {
    if (v == std::numeric_limits<std::int64_t>::min()) throw Overflow{};
    return Ck(-v);
  }
  friend bool operator==(Ck a, Ck b) { return a.v == b.v; }
  friend bool operator!=(Ck a, Ck b) { return a.v != b.v; }
  friend bool operator<(Ck a, Ck b) { return a.v < b.v; }
  friend bool operator>(Ck a, Ck b) { return a.v > b.v; }
  friend bool operator<=(Ck a, Ck b) { return a.v <= b.v; }
  friend Ck abs(Ck a) { return a.v < 0 ? -a : a; }
};

// Minimal dense matrix over Ck mirroring the Mat operations the reduction
// needs.
struct CkMat {
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Ck> a;

  CkMat(std::size_t r, std::size_t c) : rows_(r), cols_(c), a(r * c) {}

  static CkMat identity(std::size_t n) {
    CkMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Ck(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Ck& operator()(std::size_t i, std::size_t j) { return a[i * cols_ + j]; }
  const Ck& operator()(std::size_t i, std::size_t j) const {
    return a[i * cols_ + j];
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k)
      std::swap((*this)(i, k), (*this)(j, k));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows_; ++k)
      std::swap((*this)(k, i), (*this)(k, j));
  }
  void add_row(std::size_t i, std::size_t j, const Ck& c) {
    for (std::size_t k = 0; k < cols_; ++k)
      (*this)(i, k) = (*this)(i, k) + c * (*this)(j, k);
  }
  void add_col(std::size_t i, std::size_t j, const Ck& c) {
    for (std::size_t k = 0; k < rows_; ++k)
      (*this)(k, i) = (*this)(k, i) + c * (*this)(k, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) = -(*this)(i, k);
  }
  void negate_col(std::size_t i) {
    for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) = -(*this)(k, i);
  }
};

// Row/column operations applied simultaneously to the work matrix and the
// transforms, keeping u * m * v = work as an invariant (exactly when mod is
// 0, modulo mod otherwise; reducing is sound because mod * Z^rows lies in
// the column lattice, so each reduction is a column operation against those
// implicit columns, and it never touches u or u_inv).
template <class M, class T>
struct SnfWork {
  M m;  // current matrix
  M u, u_inv, v, v_inv;
  T mod;

  // balanced residue in (-mod/2, mod/2]
  T red(const T& x) const {
    if (mod == 0) return x;
    // already reduced values skip the division, which dominates otherwise
    if (x + x <= mod && x + x > -mod) return x;
    T r = x % mod;
    if (r + r > mod)
      r = r - mod;
    else if (r + r <= -mod)
      r = r + mod;
    return r;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    m.swap_rows(i, j);
    u.swap_rows(i, j);
    u_inv.swap_cols(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    m.swap_cols(i, j);
    v.swap_cols(i, j);
    v_inv.swap_rows(i, j);
  }
  void add_row(std::size_t i, std::size_t j, const T& c) {
    for (std::size_t k = 0; k < m.cols(); ++k)
      if (m(j, k) != 0) m(i, k) = red(m(i, k) + c * m(j, k));
    for (std::size_t k = 0; k < u.cols(); ++k)
      if (u(j, k) != 0) u(i, k) = red(u(i, k) + c * u(j, k));
    for (std::size_t k = 0; k < u_inv.rows(); ++k)
      if (u_inv(k, i) != 0) u_inv(k, j) = red(u_inv(k, j) - c * u_inv(k, i));
  }
  void add_col(std::size_t i, std::size_t j, const T& c) {
    for (std::size_t k = 0; k < m.rows(); ++k)
      if (m(k, j) != 0) m(k, i) = red(m(k, i) + c * m(k, j));
    for (std::size_t k = 0; k < v.rows(); ++k)
      if (v(k, j) != 0) v(k, i) = red(v(k, i) + c * v(k, j));
    for (std::size_t k = 0; k < v_inv.cols(); ++k)
      if (v_inv(i, k) != 0) v_inv(j, k) = red(v_inv(j, k) - c * v_inv(i, k));
  }
  void negate_row(std::size_t i) {
    m.negate_row(i);
    u.negate_row(i);
    u_inv.negate_col(i);
  }

  // rows (t, i) <- [[p, q], [r, s]] * rows, with ps - qr = 1
  void combine_rows(std::size_t t, std::size_t i, const T& p, const T& q,
                    const T& r, const T& s) {
    for (std::size_t k = 0; k < m.cols(); ++k) {
      T a = m(t, k), b = m(i, k);
      m(t, k) = red(p * a + q * b);
      m(i, k) = red(r * a + s * b);
    }
    for (std::size_t k = 0; k < u.cols(); ++k) {
      T a = u(t, k), b = u(i, k);
      u(t, k) = red(p * a + q * b);
      u(i, k) = red(r * a + s * b);
    }
    // u_inv picks up the inverse transform on columns
    for (std::size_t k = 0; k < u_inv.rows(); ++k) {
      T a = u_inv(k, t), b = u_inv(k, i);
      u_inv(k, t) = red(s * a - r * b);
      u_inv(k, i) = red(-q * a + p * b);
    }
  }

  // cols (t, j): col_t <- p*col_t + q*col_j, col_j <- r*col_t + s*col_j,
  // with ps - qr = 1
  void combine_cols(std::size_t t, std::size_t j, const T& p, const T& q,
                    const T& r, const T& s) {
    for (std::size_t k = 0; k < m.rows(); ++k) {
      T a = m(k, t), b = m(k, j);
      m(k, t) = red(p * a + q * b);
      m(k, j) = red(r * a + s * b);
    }
    for (std::size_t k = 0; k < v.rows(); ++k) {
      T a = v(k, t), b = v(k, j);
      v(k, t) = red(p * a + q * b);
      v(k, j) = red(r * a + s * b);
    }
    for (std::size_t k = 0; k < v_inv.cols(); ++k) {
      T a = v_inv(t, k), b = v_inv(j, k);
      v_inv(t, k) = red(s * a - r * b);
      v_inv(j, k) = red(-q * a + p * b);
    }
  }
};

// Smallest-absolute-value pivot in the trailing submatrix keeps the entries
// tame during the reduction.
template <class M>
bool find_pivot(const M& m, std::size_t t, std::size_t& pi, std::size_t& pj) {
  using T = std::decay_t<decltype(m(0, 0))>;
  bool found = false;
  T best{};
  for (std::size_t i = t; i < m.rows(); ++i)
    for (std::size_t j = t; j < m.cols(); ++j) {
      if (m(i, j) == 0) continue;
      T a = abs(m(i, j));
      if (!found || a < best) {
        best = a;
        pi = i;
        pj = j;
        found = true;
        if (best == T(1)) return true;  // cannot improve on a unit
      }
    }
  return found;
}

template <class M, class T>
SnfWork<M, T> snf_reduce(const M& input, SnfOptions opt, const T& mod) {
  // untracked transforms stay 0x0, turning every update on them into a no-op
  SnfWork<M, T> w{input,
                  opt.row_transforms ? M::identity(input.rows()) : M(0, 0),
                  opt.row_transforms ? M::identity(input.rows()) : M(0, 0),
                  opt.col_transforms ? M::identity(input.cols()) : M(0, 0),
                  opt.col_transforms ? M::identity(input.cols()) : M(0, 0),
                  mod};
  if (mod != 0)
    for (std::size_t i = 0; i < w.m.rows(); ++i)
      for (std::size_t j = 0; j < w.m.cols(); ++j)
        w.m(i, j) = w.red(w.m(i, j));
  const std::size_t n = std::min(input.rows(), input.cols());

  for (std::size_t t = 0; t < n; ++t) {
    std::size_t pi = 0, pj = 0;
    if (!find_pivot(w.m, t, pi, pj)) break;
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);

    // Clear row and column t. A non-divisible entry is absorbed by a
    // unimodular 2x2 combine that drops the pivot to the gcd, so every
    // entry is killed in one step and the pivot only ever shrinks. A
    // combine on columns can refill column t below the pivot, in which
    // case another pass runs; each such pass strictly divides the pivot,
    // so the loop is short.
    for (;;) {
      for (std::size_t i = t + 1; i < w.m.rows(); ++i) {
        const T b = w.m(i, t);
        if (b == 0) continue;
        const T a = w.m(t, t);
        if (b % a == 0) {
          w.add_row(i, t, -(b / a));
        } else {
          T p, q;
          T g = xgcd(a, b, p, q);
          w.combine_rows(t, i, p, q, -(b / g), a / g);
        }
      }
      bool col_combined = false;
      for (std::size_t j = t + 1; j < w.m.cols(); ++j) {
        const T b = w.m(t, j);
        if (b == 0) continue;
        const T a = w.m(t, t);
        if (b % a == 0) {
          w.add_col(j, t, -(b / a));
        } else {
          T p, q;
          T g = xgcd(a, b, p, q);
          w.combine_cols(t, j, p, q, -(b / g), a / g);
          col_combined = true;
        }
      }
      if (!col_combined) break;
    }

    // Enforce the divisibility chain: fold any non-multiple into row t.
    bool redo = false;
    for (std::size_t i = t + 1; i < w.m.rows() && !redo; ++i)
      for (std::size_t j = t + 1; j < w.m.cols() && !redo; ++j)
        if (w.m(i, j) % w.m(t, t) != 0) {
          w.add_row(t, i, T(1));
          redo = true;
        }
    if (redo) {
      --t;
      continue;
    }
    if (w.m(t, t) < T(0)) w.negate_row(t);
  }
  return w;
}

Mat to_mat(const CkMat& m) {
  Mat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).v;
  return r;
}

}  // namespace

SmithResult smith_normal_form(const Mat& input, SnfOptions opt) {
  const std::size_t n = std::min(input.rows(), input.cols());

  // With a modulus, residues can land on 0 where the exact diagonal entry is
  // a multiple of the modulus, and the implicit modulus columns still have to
  // be folded into the diagonal: d_i <- gcd(|d_i|, modulus).
  auto finish = [&](SmithResult r) {
    if (opt.modulus != 0)
      for (std::size_t i = 0; i < n; ++i) {
        Int d = r.d(i, i);
        if (d < 0) d = -d;
        r.d(i, i) = d == 0 ? opt.modulus : boost::multiprecision::gcd(d, opt.modulus);
      }
    while (r.rank < n && r.d(r.rank, r.rank) != 0) ++r.rank;
    return r;
  };

  // Inputs that fit in 64 bits go through the hardware-integer path; an
  // overflow anywhere in the reduction falls back to exact arithmetic.
  static const Int lo = std::numeric_limits<std::int64_t>::min();
  static const Int hi = std::numeric_limits<std::int64_t>::max();
  bool small = opt.modulus >= 0 && opt.modulus <= hi;
  for (std::size_t i = 0; i < input.rows() && small; ++i)
    for (std::size_t j = 0; j < input.cols(); ++j)
      if (input(i, j) < lo || input(i, j) > hi) {
        small = false;
        break;
      }
  if (small) {
    try {
      CkMat m(input.rows(), input.cols());
      for (std::size_t i = 0; i < input.rows(); ++i)
        for (std::size_t j = 0; j < input.cols(); ++j)
          m(i, j) = Ck(static_cast<std::int64_t>(input(i, j)));
      SnfWork<CkMat, Ck> w = snf_reduce<CkMat, Ck>(
          m, opt, Ck(static_cast<std::int64_t>(opt.modulus)));
      return finish(SmithResult{to_mat(w.u), to_mat(w.u_inv), to_mat(w.m),
                                to_mat(w.v), to_mat(w.v_inv)});
    } catch (const Overflow&) {
      // fall through to the exact path
    }
  }

  SnfWork<Mat, Int> w = snf_reduce<Mat, Int>(input, opt, opt.modulus);
  return finish(SmithResult{std::move(w.u), std::move(w.u_inv), std::move(w.m),
                            std::move(w.v), std::move(w.v_inv)});
}

Mat kernel_basis(const Mat& m) {
  SmithResult s = smith_normal_form(m, {.row_transforms = false});
  const std::size_t k = m.cols() - s.rank;
  Mat basis(m.cols(), k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < m.cols(); ++i)
      basis(i, j) = s.v(i, s.rank + j);
  return basis;
}

}  // namespace capit
