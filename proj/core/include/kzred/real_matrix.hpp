#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kzred {

// Dense column-major matrix of doubles. Holds lattice bases and their
// triangular factors.
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(std::size_t rows, std::size_t cols);
  // Takes ownership of column-major entries; rejects NaN/Inf.
  RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> column_major);

  static RealMatrix identity(std::size_t n);
  static RealMatrix diagonal(std::span<const double> d);
  static RealMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

  std::span<double> column(std::size_t j) { return {data_.data() + j * rows_, rows_}; }
  std::span<const double> column(std::size_t j) const { return {data_.data() + j * rows_, rows_}; }
  std::span<const double> data() const noexcept { return data_; }

  RealMatrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
  void set_block(std::size_t row0, std::size_t col0, const RealMatrix& src);
  RealMatrix transpose() const;

  double frobenius_norm() const;
  double max_abs() const;
  bool is_upper_triangular() const;
  bool all_finite() const;

  friend RealMatrix operator*(const RealMatrix& a, const RealMatrix& b);
  friend RealMatrix operator-(const RealMatrix& a, const RealMatrix& b);
  friend bool operator==(const RealMatrix&, const RealMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Plane rotation acting on rows i and j: [c s; -s c].
struct GivensRotation {
  double c = 1.0;
  double s = 0.0;
  std::size_t i = 0;
  std::size_t j = 1;
};

struct QrFactors {
  RealMatrix q1;  // m x n, orthonormal columns
  RealMatrix r;   // n x n, upper triangular, diagonal sign not normalized
};

// Householder QR of a full column rank m x n matrix (m >= n). Throws
// kRankDeficient when some |r_ii| <= n * eps * max|a_ij|.
QrFactors qr_factorize(const RealMatrix& a);

// Rotation mapping (a, b) to (r, 0). Rows default to (0, 1); callers set
// i and j before applying.
std::pair<GivensRotation, double> givens(double a, double b);

RealMatrix apply_givens_rows(const RealMatrix& r, const GivensRotation& g, std::size_t col_start);
void apply_givens_rows_inplace(RealMatrix& r, const GivensRotation& g, std::size_t col_start);

// Rotates rows (i, j) so that entry (j, col) vanishes. The annihilated
// entry is stored as an exact zero.
void retriangularize_pair(RealMatrix& r, std::size_t i, std::size_t j, std::size_t col);

// Ratio of extreme singular values.
double cond2(const RealMatrix& a);

// Plain-text format: "m n" header then m rows of n numbers.
RealMatrix read_real_matrix(std::istream& in);
void write_real_matrix(std::ostream& out, const RealMatrix& m);
RealMatrix load_real_matrix(const std::string& path);

}  // namespace kzred
