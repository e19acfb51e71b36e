#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace capit {

using Int = boost::multiprecision::cpp_int;

/// Dense integer matrix with arbitrary-precision entries.  Everything that
/// goes through a normal form (Smith reduction, kernels, presentations) uses
/// this type; intermediate entries can blow up well past 64 bits even for
/// small inputs.
class Mat {
public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Mat identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  bool operator==(const Mat& o) const = default;

  Mat operator*(const Mat& o) const;
  Mat transpose() const;

  std::vector<Int> apply(const std::vector<Int>& x) const;

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  /// row i += c * row j
  void add_row(std::size_t i, std::size_t j, const Int& c);
  /// col i += c * col j
  void add_col(std::size_t i, std::size_t j, const Int& c);
  void negate_row(std::size_t i);
  void negate_col(std::size_t i);

  bool is_zero() const;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

/// u * input * v = d with u, v unimodular, d diagonal, d_i | d_{i+1} >= 0.
/// The inverses are tracked during the reduction so callers can lift
/// generators back through the change of basis.
struct SmithResult {
  Mat u, u_inv, d, v, v_inv;
  std::size_t rank = 0;  // number of nonzero diagonal entries

  Int diag(std::size_t i) const {
    return (i < d.rows() && i < d.cols()) ? d(i, i) : Int(0);
  }
};

/// Transform tracking is optional; untracked factors come back as 0x0
/// matrices.  The diagonal is always computed.  Skipping the column
/// transforms matters: for wide inputs v/v_inv are the largest matrices in
/// the reduction by far.
struct SnfOptions {
  bool row_transforms = true;  // u, u_inv
  bool col_transforms = true;  // v, v_inv

  /// When the caller knows the column lattice of the input contains
  /// modulus * Z^rows (presentations of finite groups always do), setting
  /// this runs the whole reduction in balanced residues mod modulus, which
  /// prevents the exponential entry growth classic Smith reductions suffer
  /// from.  The returned d is exact; u and u_inv are valid modulo modulus,
  /// which is all a presentation consumer can observe.  Requires
  /// col_transforms = false since v is not kept consistent.
  Int modulus = 0;
};

SmithResult smith_normal_form(const Mat& m, SnfOptions opt = {});

/// Columns spanning the integer kernel {x : m x = 0}.
Mat kernel_basis(const Mat& m);

}  // namespace capit
