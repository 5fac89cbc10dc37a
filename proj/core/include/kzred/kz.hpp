#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "kzred/error.hpp"
#include "kzred/integer_matrix.hpp"
#include "kzred/real_matrix.hpp"

namespace kzred {

enum class KzAlgorithm {
  kBaseline,  // expands x = Zhat z on the unreduced trailing block
  kModified,  // commits the block LLL reduction, then expands z
};

std::string_view to_string(KzAlgorithm alg);
KzAlgorithm parse_kz_algorithm(std::string_view name);

struct KzStep {
  std::size_t k = 0;        // 1-based step index
  IntVector solution;       // x for the baseline, z for the modified algorithm
  Integer max_entry = 0;    // max |solution_i|
  bool expansion_skipped = false;
  double svp_norm = 0.0;
  std::uint64_t nodes = 0;
  std::size_t lll_swaps = 0;
  // cond2 of R[k:n, k:n] at the end of the step; trace mode only. Infinity
  // when the block is numerically singular.
  std::optional<double> block_cond;
};

struct KzOptions {
  double delta = 1.0;
  bool trace = false;
  // Throw if a modified-algorithm z exceeds the LLL entry bound.
  bool check_entry_bound = false;
  SearchBudget budget;
  // Called after every step with the current R and Z.
  std::function<void(const KzStep&, const RealMatrix&, const IntMatrix&)> on_step;
};

struct KzResult {
  RealMatrix r_bar;  // upper triangular, size-reduced
  IntMatrix z;       // unimodular
  std::vector<KzStep> steps;

  std::size_t expansions() const;
};

// Extends the primitive vector x to a basis of the lattice spanned by
// R[first:, first:] (first is 0-based; x has n - first entries). Entries
// are eliminated from the last to the second with 2x2 unimodular column
// transforms, each followed by a Givens rotation restoring triangularity.
// Pairs with a zero lower entry are skipped.
void expand_basis_inplace(RealMatrix& r, IntMatrix& z, std::span<const Integer> x, std::size_t first);
std::pair<RealMatrix, IntMatrix> expand_basis(const RealMatrix& r, const IntMatrix& z,
                                              std::span<const Integer> x, std::size_t first);

KzResult kz_reduce_baseline(const RealMatrix& r, const KzOptions& options = {});
KzResult kz_reduce_modified(const RealMatrix& r, const KzOptions& options = {});
KzResult kz_reduce(KzAlgorithm alg, const RealMatrix& r, const KzOptions& options = {});

inline constexpr std::size_t kKzVerifyMaxDimension = 10;
inline constexpr double kKzTolerance = 1e-8;

// Size-reduced, and |r_ii| <= (1 + 1e-8) * shortest vector norm of R[i:, i:].
bool is_kz_reduced(const RealMatrix& r, const SearchBudget& budget = {});

}  // namespace kzred
