#include "kzred/lll.hpp"

#include <cmath>
#include <optional>
#include <string>

namespace kzred {

namespace {

void require_triangular_nonsingular(const RealMatrix& r, std::size_t first) {
  if (r.rows() != r.cols()) throw Error(ErrorCode::kNotSquare, "R must be square");
  if (!r.is_upper_triangular()) throw Error(ErrorCode::kInvalidArgument, "R must be upper triangular");
  if (!r.all_finite()) throw Error(ErrorCode::kNonFinite, "R contains NaN or Inf");
  for (std::size_t i = first; i < r.rows(); ++i) {
    if (r(i, i) == 0.0) {
      throw Error(ErrorCode::kRankDeficient, "zero diagonal entry at " + std::to_string(i + 1));
    }
  }
}

// Makes |r_ik| <= |r_ii| / 2 by subtracting integer multiples of column i
// from column k. A second pass absorbs cancellation error when r_ik/r_ii is
// large.
void reduce_entry(RealMatrix& r, IntMatrix& z, std::size_t i, std::size_t k) {
  for (int pass = 0; pass < 4; ++pass) {
    const double rii = r(i, i);
    const double rik = r(i, k);
    if (rii == 0.0) throw Error(ErrorCode::kZeroDiagonal, "size reduction against zero diagonal");
    if (!(std::abs(rik) > 0.5 * std::abs(rii) * (1.0 + kSizeReduceSlack))) return;
    const double mu = std::round(rik / rii);
    if (!std::isfinite(mu)) throw Error(ErrorCode::kNonFinite, "size-reduction multiplier overflow");
    for (std::size_t row = 0; row <= i; ++row) r(row, k) -= mu * r(row, i);
    z.add_multiple_of_column(k, i, -integer_from_double(mu));
  }
}

void swap_and_retriangularize(RealMatrix& r, IntMatrix& z, std::size_t k) {
  for (std::size_t row = 0; row <= k; ++row) std::swap(r(row, k - 1), r(row, k));
  z.swap_columns(k - 1, k);
  retriangularize_pair(r, k - 1, k, k - 1);
}

}  // namespace

void require_valid_delta(double delta) {
  if (!(delta > 0.25 && delta <= 1.0)) {
    throw Error(ErrorCode::kInvalidDelta, "delta must lie in (1/4, 1]");
  }
}

void size_reduce_inplace(RealMatrix& r, IntMatrix& z) {
  require_triangular_nonsingular(r, 0);
  if (z.rows() != r.cols() || z.cols() != r.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "Z is not conformal with R");
  }
  const std::size_t n = r.cols();
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = k; i-- > 0;) reduce_entry(r, z, i, k);
  }
}

std::pair<RealMatrix, IntMatrix> size_reduce(const RealMatrix& r, const IntMatrix& z) {
  RealMatrix rr = r;
  IntMatrix zz = z;
  size_reduce_inplace(rr, zz);
  return {std::move(rr), std::move(zz)};
}

namespace detail {

std::size_t lll_reduce_trailing(RealMatrix& r, IntMatrix& z, std::size_t first, double delta,
                                const SearchBudget* budget) {
  require_valid_delta(delta);
  require_triangular_nonsingular(r, first);
  const std::size_t n = r.cols();
  if (first >= n) throw Error(ErrorCode::kIndexOutOfRange, "block start beyond matrix");
  const std::size_t m = n - first;

  // Swap cap 10 m^2 (1 + log2 cond2(block)). The condition number is only
  // needed once the cheap part of the cap is exhausted.
  const double base_cap = 10.0 * static_cast<double>(m * m);
  std::optional<RealMatrix> input_block;
  std::optional<double> swap_cap;
  if (m > 1) input_block = r.block(first, first, m, m);

  std::size_t swaps = 0;
  std::size_t iterations = 0;
  std::size_t k = first + 1;
  while (k < n) {
    if (budget != nullptr && (++iterations & 63U) == 0) budget->check_deadline();

    reduce_entry(r, z, k - 1, k);
    const double lhs = delta * r(k - 1, k - 1) * r(k - 1, k - 1);
    const double rhs = r(k - 1, k) * r(k - 1, k) + r(k, k) * r(k, k);
    if (lhs > rhs * (1.0 + kLovaszSlack)) {
      swap_and_retriangularize(r, z, k);
      if (r(k, k) == 0.0 || !std::isfinite(r(k, k))) {
        throw Error(ErrorCode::kRankDeficient, "diagonal vanished during LLL swap");
      }
      ++swaps;
      if (static_cast<double>(swaps) > base_cap) {
        if (!swap_cap) {
          double log_cond = 1024.0;
          try {
            log_cond = std::log2(cond2(*input_block));
          } catch (const Error&) {
          }
          swap_cap = base_cap * (1.0 + log_cond);
        }
        if (static_cast<double>(swaps) > *swap_cap) {
          throw Error(ErrorCode::kNonConvergence,
                      "LLL exceeded swap cap of " + std::to_string(static_cast<long long>(*swap_cap)));
        }
      }
      if (k > first + 1) --k;
    } else {
      for (std::size_t i = k - 1; i-- > first;) reduce_entry(r, z, i, k);
      ++k;
    }
  }
  return swaps;
}

}  // namespace detail

QrzFactorization lll_reduce(const RealMatrix& r, double delta) {
  QrzFactorization out{r, IntMatrix::identity(r.cols()), delta, 0};
  out.swaps = detail::lll_reduce_trailing(out.r_bar, out.z, 0, delta);
  return out;
}

bool is_size_reduced(const RealMatrix& r) {
  const std::size_t n = r.cols();
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 0; i < k; ++i) {
      if (std::abs(r(i, k)) > 0.5 * std::abs(r(i, i)) * (1.0 + kPredicateTolerance)) return false;
    }
  }
  return true;
}

bool is_lll_reduced(const RealMatrix& r, double delta) {
  require_valid_delta(delta);
  if (!is_size_reduced(r)) return false;
  for (std::size_t k = 1; k < r.cols(); ++k) {
    const double lhs = delta * r(k - 1, k - 1) * r(k - 1, k - 1);
    const double rhs = r(k - 1, k) * r(k - 1, k) + r(k, k) * r(k, k);
    if (lhs > rhs * (1.0 + kPredicateTolerance)) return false;
  }
  return true;
}

}  // namespace kzred
