#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace kzred {

// Arbitrary precision; unimodular bookkeeping never wraps.
using Integer = boost::multiprecision::cpp_int;
using IntVector = std::vector<Integer>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

  IntVector column(std::size_t j) const;
  IntMatrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
  bool is_identity() const;
  Integer max_abs() const;

  // Column operations used by the reductions.
  void swap_columns(std::size_t a, std::size_t b);
  void add_multiple_of_column(std::size_t target, std::size_t source, const Integer& factor);
  // Replaces columns (a, b) by (a, b) * [u00 u01; u10 u11].
  void transform_column_pair(std::size_t a, std::size_t b, const Integer& u00, const Integer& u01,
                             const Integer& u10, const Integer& u11);
  // Right-multiplies columns [col0, col0 + t.rows()) by t.
  void apply_trailing(std::size_t col0, const IntMatrix& t);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntVector operator*(const IntMatrix& a, std::span<const Integer> x);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

struct ExtGcdResult {
  Integer d;  // gcd(p, q) > 0
  Integer a;
  Integer b;  // a*p + b*q == d
};

// Extended Euclid with the Bezout pair normalized to the smallest |a|
// (ties toward a >= 0). ext_gcd(p, 0) yields (|p|, sign(p), 0).
ExtGcdResult ext_gcd(const Integer& p, const Integer& q);

// U = [p/d  -b; q/d  a] with det(U) = 1 and U^{-1} (p, q)^T = (d, 0)^T.
IntMatrix unimodular_from_pair(const Integer& p, const Integer& q);

// Fraction-free (Bareiss) elimination.
Integer det_exact(const IntMatrix& z);

bool is_unimodular(const IntMatrix& z);

// gcd of all entries; 0 for the zero vector.
Integer content(std::span<const Integer> x);

Integer max_abs(std::span<const Integer> x);

// Exact conversion of an integral double.
Integer integer_from_double(double v);
double to_double(const Integer& v);

IntMatrix read_int_matrix(std::istream& in);
void write_int_matrix(std::ostream& out, const IntMatrix& m);

}  // namespace kzred
