#include "kzred/real_matrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "kzred/error.hpp"

namespace kzred {

namespace {

using ConstMap = Eigen::Map<const Eigen::MatrixXd>;

ConstMap as_eigen(const RealMatrix& m) {
  return ConstMap(m.data().data(), static_cast<Eigen::Index>(m.rows()),
                  static_cast<Eigen::Index>(m.cols()));
}

RealMatrix from_eigen(const Eigen::MatrixXd& e) {
  std::vector<double> v(e.data(), e.data() + e.size());
  return RealMatrix(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()),
                    std::move(v));
}

void require_dims(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::kInvalidArgument, "matrix dimensions must be positive");
  }
}

}  // namespace

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
  require_dims(rows, cols);
}

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> column_major)
    : rows_(rows), cols_(cols), data_(std::move(column_major)) {
  require_dims(rows, cols);
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::kInvalidArgument, "entry count does not match dimensions");
  }
  if (!all_finite()) throw Error(ErrorCode::kNonFinite, "matrix contains NaN or Inf");
}

RealMatrix RealMatrix::identity(std::size_t n) {
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

RealMatrix RealMatrix::diagonal(std::span<const double> d) {
  RealMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  if (!m.all_finite()) throw Error(ErrorCode::kNonFinite, "matrix contains NaN or Inf");
  return m;
}

RealMatrix RealMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t m = rows.size();
  const std::size_t n = m == 0 ? 0 : rows.begin()->size();
  RealMatrix out(m, n);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != n) throw Error(ErrorCode::kInvalidArgument, "ragged row list");
    std::size_t j = 0;
    for (double v : row) out(i, j++) = v;
    ++i;
  }
  if (!out.all_finite()) throw Error(ErrorCode::kNonFinite, "matrix contains NaN or Inf");
  return out;
}

RealMatrix RealMatrix::block(std::size_t row0, std::size_t col0, std::size_t nrows,
                             std::size_t ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_) {
    throw Error(ErrorCode::kIndexOutOfRange, "block exceeds matrix bounds");
  }
  RealMatrix out(nrows, ncols);
  for (std::size_t j = 0; j < ncols; ++j) {
    for (std::size_t i = 0; i < nrows; ++i) out(i, j) = (*this)(row0 + i, col0 + j);
  }
  return out;
}

void RealMatrix::set_block(std::size_t row0, std::size_t col0, const RealMatrix& src) {
  if (row0 + src.rows() > rows_ || col0 + src.cols() > cols_) {
    throw Error(ErrorCode::kIndexOutOfRange, "block exceeds matrix bounds");
  }
  for (std::size_t j = 0; j < src.cols(); ++j) {
    for (std::size_t i = 0; i < src.rows(); ++i) (*this)(row0 + i, col0 + j) = src(i, j);
  }
}

RealMatrix RealMatrix::transpose() const {
  RealMatrix out(cols_, rows_);
  for (std::size_t j = 0; j < cols_; ++j) {
    for (std::size_t i = 0; i < rows_; ++i) out(j, i) = (*this)(i, j);
  }
  return out;
}

double RealMatrix::frobenius_norm() const {
  double scale = max_abs();
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (double v : data_) sum += (v / scale) * (v / scale);
  return scale * std::sqrt(sum);
}

double RealMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool RealMatrix::is_upper_triangular() const {
  for (std::size_t j = 0; j < cols_; ++j) {
    for (std::size_t i = j + 1; i < rows_; ++i) {
      if ((*this)(i, j) != 0.0) return false;
    }
  }
  return true;
}

bool RealMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::kInvalidArgument, "dimension mismatch in product");
  RealMatrix out(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double bkj = b(k, j);
      if (bkj == 0.0) continue;
      for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) += a(i, k) * bkj;
    }
  }
  return out;
}

RealMatrix operator-(const RealMatrix& a, const RealMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "dimension mismatch in difference");
  }
  RealMatrix out(a.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) = a(i, j) - b(i, j);
  }
  return out;
}

QrFactors qr_factorize(const RealMatrix& a) {
  if (a.empty()) throw Error(ErrorCode::kInvalidArgument, "empty matrix");
  if (!a.all_finite()) throw Error(ErrorCode::kNonFinite, "matrix contains NaN or Inf");
  const auto m = static_cast<Eigen::Index>(a.rows());
  const auto n = static_cast<Eigen::Index>(a.cols());
  if (m < n) throw Error(ErrorCode::kRankDeficient, "more columns than rows");

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(as_eigen(a));
  Eigen::MatrixXd r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  Eigen::MatrixXd q1 = qr.householderQ() * Eigen::MatrixXd::Identity(m, n);

  const double rank_tol = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * a.max_abs();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(std::abs(r(i, i)) > rank_tol)) {
      throw Error(ErrorCode::kRankDeficient,
                  "|r_" + std::to_string(i + 1) + std::to_string(i + 1) + "| below rank tolerance");
    }
  }
  return {from_eigen(q1), from_eigen(r)};
}

std::pair<GivensRotation, double> givens(double a, double b) {
  if (a == 0.0 && b == 0.0) throw Error(ErrorCode::kDegenerateInput, "givens(0, 0)");
  if (b == 0.0) return {GivensRotation{1.0, 0.0, 0, 1}, a};
  if (a == 0.0) return {GivensRotation{0.0, 1.0, 0, 1}, b};
  const double r = std::hypot(a, b);
  return {GivensRotation{a / r, b / r, 0, 1}, r};
}

void apply_givens_rows_inplace(RealMatrix& r, const GivensRotation& g, std::size_t col_start) {
  if (g.i >= r.rows() || g.j >= r.rows() || g.i == g.j || col_start > r.cols()) {
    throw Error(ErrorCode::kIndexOutOfRange, "givens rows or start column out of range");
  }
  for (std::size_t col = col_start; col < r.cols(); ++col) {
    const double x = r(g.i, col);
    const double y = r(g.j, col);
    r(g.i, col) = g.c * x + g.s * y;
    r(g.j, col) = -g.s * x + g.c * y;
  }
}

RealMatrix apply_givens_rows(const RealMatrix& r, const GivensRotation& g, std::size_t col_start) {
  RealMatrix out = r;
  apply_givens_rows_inplace(out, g, col_start);
  return out;
}

void retriangularize_pair(RealMatrix& r, std::size_t i, std::size_t j, std::size_t col) {
  if (col >= r.cols()) throw Error(ErrorCode::kIndexOutOfRange, "column out of range");
  if (r(j, col) == 0.0) return;
  auto [g, norm] = givens(r(i, col), r(j, col));
  g.i = i;
  g.j = j;
  apply_givens_rows_inplace(r, g, col + 1);
  r(i, col) = norm;
  r(j, col) = 0.0;
}

double cond2(const RealMatrix& a) {
  if (a.empty()) throw Error(ErrorCode::kInvalidArgument, "empty matrix");
  if (!a.all_finite()) throw Error(ErrorCode::kNonFinite, "matrix contains NaN or Inf");
  if (a.rows() < a.cols()) throw Error(ErrorCode::kRankDeficient, "more columns than rows");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(as_eigen(a));
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (!(smin > std::numeric_limits<double>::min())) {
    throw Error(ErrorCode::kRankDeficient, "smallest singular value underflows");
  }
  return smax / smin;
}

RealMatrix read_real_matrix(std::istream& in) {
  std::size_t m = 0;
  std::size_t n = 0;
  if (!(in >> m >> n) || m == 0 || n == 0) {
    throw Error(ErrorCode::kParseError, "expected positive 'rows cols' header");
  }
  std::vector<double> entries(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::string token;
      if (!(in >> token)) throw Error(ErrorCode::kParseError, "unexpected end of matrix data");
      try {
        std::size_t used = 0;
        entries[j * m + i] = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::logic_error&) {
        throw Error(ErrorCode::kParseError, "not a number: '" + token + "'");
      }
    }
  }
  return RealMatrix(m, n, std::move(entries));
}

void write_real_matrix(std::ostream& out, const RealMatrix& m) {
  const auto old_precision = out.precision(17);
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << m(i, j);
    }
    out << '\n';
  }
  out.precision(old_precision);
}

RealMatrix load_real_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  return read_real_matrix(in);
}

}  // namespace kzred
