#pragma once

#include <cstddef>
#include <utility>

#include "kzred/error.hpp"
#include "kzred/integer_matrix.hpp"
#include "kzred/real_matrix.hpp"

namespace kzred {

// Qbar^T R Z = Rbar without forming Qbar.
struct QrzFactorization {
  RealMatrix r_bar;
  IntMatrix z;
  double delta = 1.0;
  std::size_t swaps = 0;
};

// Relative slack applied to the Lovasz test before swapping; keeps delta = 1
// from cycling on rounding noise.
inline constexpr double kLovaszSlack = 1e-12;
// Relative slack applied to |r_ik| <= |r_ii| / 2 before a size-reduction step.
inline constexpr double kSizeReduceSlack = 1e-12;
// Tolerance used by the reduction predicates.
inline constexpr double kPredicateTolerance = 1e-10;

void require_valid_delta(double delta);

// Full size reduction: for every k, eliminates r_ik for i = k-1 down to 1.
std::pair<RealMatrix, IntMatrix> size_reduce(const RealMatrix& r, const IntMatrix& z);
void size_reduce_inplace(RealMatrix& r, IntMatrix& z);

QrzFactorization lll_reduce(const RealMatrix& r, double delta = 1.0);

bool is_size_reduced(const RealMatrix& r);
bool is_lll_reduced(const RealMatrix& r, double delta = 1.0);

namespace detail {

// LLL on the trailing block R[first:, first:], in place. Column operations
// touch every row of R (so R[:first, first:] picks up the block transform)
// and every row of Z. Returns the number of swaps performed.
std::size_t lll_reduce_trailing(RealMatrix& r, IntMatrix& z, std::size_t first, double delta,
                                const SearchBudget* budget = nullptr);

}  // namespace detail

}  // namespace kzred
