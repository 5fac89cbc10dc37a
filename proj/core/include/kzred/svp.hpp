#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "kzred/error.hpp"
#include "kzred/integer_matrix.hpp"
#include "kzred/real_matrix.hpp"

namespace kzred {

struct SvpSolution {
  IntVector x;              // nonzero, first nonzero entry positive
  double norm = 0.0;        // ||R x||_2
  std::uint64_t nodes = 0;  // enumeration tree nodes visited
};

// Exact shortest nonzero vector of the lattice spanned by the columns of
// the upper-triangular R, by Schnorr-Euchner depth-first enumeration. The
// search starts from the shortest column and only accepts strictly shorter
// candidates, so ties keep the earlier representative.
SvpSolution enumerate_shortest(const RealMatrix& r, const SearchBudget& budget = {});

struct BruteForceResult {
  SvpSolution solution;
  // Set when the minimizer has a coordinate on the box boundary; the box
  // may then be too small to certify the minimum.
  bool touches_box = false;
};

inline constexpr std::size_t kBruteForceMaxDimension = 8;

// Exhaustive minimum over nonzero x with |x_i| <= box[i]. The first
// coordinate is minimized in closed form for every assignment of the others.
BruteForceResult brute_force_svp(const RealMatrix& r, std::span<const std::int64_t> box);
BruteForceResult brute_force_svp(const RealMatrix& r, std::int64_t box);

struct LllAidedSvpResult {
  IntVector x;       // solution for the input block, x = z_hat * z
  IntVector z;       // solution for the reduced block r_hat
  IntMatrix z_hat;   // unimodular, Qhat^T block z_hat = r_hat
  RealMatrix r_hat;  // LLL-reduced block
  double norm = 0.0;
  std::uint64_t nodes = 0;
};

LllAidedSvpResult lll_aided_svp(const RealMatrix& block, double delta = 1.0,
                                const SearchBudget& budget = {});

// Entry bound for the SVP solution z on an LLL-reduced block of size
// n_sub: (4 / (4 delta - 1))^((n_sub - 1) / 2) * 2^(n_sub - i), i 1-based.
double theorem1_bound(std::size_t n_sub, std::size_t i, double delta);

// Number of entries of z exceeding their bound (with relative slack 1e-12).
std::size_t entry_bound_violations(std::span<const Integer> z, double delta);

// Vector of per-coordinate integer boxes floor(bound_i) for brute force.
std::vector<std::int64_t> theorem1_box(std::size_t n_sub, double delta);

// ||R x||_2 evaluated directly.
double lattice_norm(const RealMatrix& r, std::span<const Integer> x);

}  // namespace kzred
