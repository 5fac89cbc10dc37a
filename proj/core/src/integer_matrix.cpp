#include "kzred/integer_matrix.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <utility>

#include "kzred/error.hpp"

namespace kzred {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::kInvalidArgument, "matrix dimensions must be positive");
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
  const std::size_t m = rows.size();
  const std::size_t n = m == 0 ? 0 : rows.begin()->size();
  IntMatrix out(m, n);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != n) throw Error(ErrorCode::kInvalidArgument, "ragged row list");
    std::size_t j = 0;
    for (long long v : row) out(i, j++) = v;
    ++i;
  }
  return out;
}

IntVector IntMatrix::column(std::size_t j) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(j * rows_),
                   data_.begin() + static_cast<std::ptrdiff_t>((j + 1) * rows_));
}

IntMatrix IntMatrix::block(std::size_t row0, std::size_t col0, std::size_t nrows,
                           std::size_t ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_) {
    throw Error(ErrorCode::kIndexOutOfRange, "block exceeds matrix bounds");
  }
  IntMatrix out(nrows, ncols);
  for (std::size_t j = 0; j < ncols; ++j) {
    for (std::size_t i = 0; i < nrows; ++i) out(i, j) = (*this)(row0 + i, col0 + j);
  }
  return out;
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t j = 0; j < cols_; ++j) {
    for (std::size_t i = 0; i < rows_; ++i) {
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    }
  }
  return true;
}

Integer IntMatrix::max_abs() const { return kzred::max_abs(data_); }

void IntMatrix::swap_columns(std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_multiple_of_column(std::size_t target, std::size_t source,
                                       const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, target) += factor * (*this)(i, source);
}

void IntMatrix::transform_column_pair(std::size_t a, std::size_t b, const Integer& u00,
                                      const Integer& u01, const Integer& u10,
                                      const Integer& u11) {
  for (std::size_t i = 0; i < rows_; ++i) {
    Integer x = (*this)(i, a);
    Integer y = (*this)(i, b);
    (*this)(i, a) = x * u00 + y * u10;
    (*this)(i, b) = x * u01 + y * u11;
  }
}

void IntMatrix::apply_trailing(std::size_t col0, const IntMatrix& t) {
  if (t.rows() != t.cols() || col0 + t.rows() > cols_) {
    throw Error(ErrorCode::kIndexOutOfRange, "trailing transform does not fit");
  }
  const std::size_t k = t.rows();
  std::vector<Integer> row(k);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      Integer acc = 0;
      for (std::size_t l = 0; l < k; ++l) {
        if (t(l, j) != 0) acc += (*this)(i, col0 + l) * t(l, j);
      }
      row[j] = std::move(acc);
    }
    for (std::size_t j = 0; j < k; ++j) (*this)(i, col0 + j) = std::move(row[j]);
  }
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::kInvalidArgument, "dimension mismatch in product");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (b(k, j) == 0) continue;
      for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

IntVector operator*(const IntMatrix& a, std::span<const Integer> x) {
  if (a.cols() != x.size()) throw Error(ErrorCode::kInvalidArgument, "dimension mismatch in product");
  IntVector out(a.rows());
  for (std::size_t k = 0; k < a.cols(); ++k) {
    if (x[k] == 0) continue;
    for (std::size_t i = 0; i < a.rows(); ++i) out[i] += a(i, k) * x[k];
  }
  return out;
}

ExtGcdResult ext_gcd(const Integer& p, const Integer& q) {
  if (p == 0 && q == 0) throw Error(ErrorCode::kBothZero, "ext_gcd(0, 0)");
  if (q == 0) return {abs(p), p > 0 ? Integer(1) : Integer(-1), Integer(0)};

  // Iterative Euclid on the signed values; invariant: old_s*p + old_t*q == old_r.
  Integer old_r = p, r = q;
  Integer old_s = 1, s = 0;
  Integer old_t = 0, t = 1;
  while (r != 0) {
    const Integer quotient = old_r / r;
    // Materialize before exchanging: the expression templates would
    // otherwise read r, s, t after they have been moved from.
    Integer next_r = old_r - quotient * r;
    Integer next_s = old_s - quotient * s;
    Integer next_t = old_t - quotient * t;
    old_r = std::exchange(r, std::move(next_r));
    old_s = std::exchange(s, std::move(next_s));
    old_t = std::exchange(t, std::move(next_t));
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
  }
  const Integer d = old_r;

  // All solutions: a + j*(q/d). Pick the representative of least |a|.
  const Integer period = abs(q) / d;
  Integer a = old_s % period;
  if (a < 0) a += period;
  if (2 * a > period) a -= period;
  const Integer b = (d - a * p) / q;
  return {d, a, b};
}

IntMatrix unimodular_from_pair(const Integer& p, const Integer& q) {
  const ExtGcdResult g = ext_gcd(p, q);
  IntMatrix u(2, 2);
  u(0, 0) = p / g.d;
  u(1, 0) = q / g.d;
  u(0, 1) = -g.b;
  u(1, 1) = g.a;
  return u;
}

Integer det_exact(const IntMatrix& z) {
  if (z.rows() != z.cols()) throw Error(ErrorCode::kNotSquare, "determinant of non-square matrix");
  const std::size_t n = z.rows();
  IntMatrix m = z;
  Integer previous_pivot = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / previous_pivot;
      }
    }
    previous_pivot = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix& z) {
  if (z.empty() || z.rows() != z.cols()) return false;
  const Integer d = det_exact(z);
  return d == 1 || d == -1;
}

Integer content(std::span<const Integer> x) {
  Integer g = 0;
  for (const Integer& v : x) {
    if (v != 0) g = gcd(g, abs(v));
    if (g == 1) break;
  }
  return g;
}

Integer max_abs(std::span<const Integer> x) {
  Integer m = 0;
  for (const Integer& v : x) {
    Integer a = abs(v);
    if (a > m) m = std::move(a);
  }
  return m;
}

Integer integer_from_double(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::kNonFinite, "cannot convert non-finite value");
  if (v != std::trunc(v)) throw Error(ErrorCode::kInvalidArgument, "value is not integral");
  return Integer(v);
}

double to_double(const Integer& v) { return v.convert_to<double>(); }

IntMatrix read_int_matrix(std::istream& in) {
  std::size_t m = 0;
  std::size_t n = 0;
  if (!(in >> m >> n) || m == 0 || n == 0) {
    throw Error(ErrorCode::kParseError, "expected positive 'rows cols' header");
  }
  IntMatrix out(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::string token;
      if (!(in >> token)) throw Error(ErrorCode::kParseError, "unexpected end of matrix data");
      const std::size_t digits_from = (token[0] == '-' || token[0] == '+') ? 1 : 0;
      if (digits_from == token.size() ||
          token.find_first_not_of("0123456789", digits_from) != std::string::npos) {
        throw Error(ErrorCode::kParseError, "not an integer: '" + token + "'");
      }
      out(i, j) = Integer(token[0] == '+' ? token.substr(1) : token);
    }
  }
  return out;
}

void write_int_matrix(std::ostream& out, const IntMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << m(i, j).str();
    }
    out << '\n';
  }
}

}  // namespace kzred
