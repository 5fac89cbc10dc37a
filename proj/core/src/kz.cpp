#include "kzred/kz.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "kzred/lll.hpp"
#include "kzred/svp.hpp"

namespace kzred {

namespace {

bool is_unit_first(std::span<const Integer> x) {
  if (x.empty() || abs(x[0]) != 1) return false;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i] != 0) return false;
  }
  return true;
}

void require_reducible(const RealMatrix& r) {
  if (r.empty() || r.rows() != r.cols()) throw Error(ErrorCode::kNotSquare, "R must be square");
  if (!r.is_upper_triangular()) throw Error(ErrorCode::kInvalidArgument, "R must be upper triangular");
  if (!r.all_finite()) throw Error(ErrorCode::kNonFinite, "R contains NaN or Inf");
  for (std::size_t i = 0; i < r.rows(); ++i) {
    if (r(i, i) == 0.0) throw Error(ErrorCode::kRankDeficient, "zero diagonal entry");
  }
}

std::optional<double> trailing_cond(const RealMatrix& r, std::size_t first) {
  const std::size_t m = r.cols() - first;
  try {
    return cond2(r.block(first, first, m, m));
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}

void finish_step(KzStep& step, const RealMatrix& r, const IntMatrix& z, std::size_t first,
                 const KzOptions& options, std::vector<KzStep>& steps) {
  step.max_entry = max_abs(step.solution);
  if (options.trace) step.block_cond = trailing_cond(r, first);
  if (options.on_step) options.on_step(step, r, z);
  steps.push_back(std::move(step));
}

}  // namespace

std::string_view to_string(KzAlgorithm alg) {
  switch (alg) {
    case KzAlgorithm::kBaseline: return "kz-baseline";
    case KzAlgorithm::kModified: return "kz-modified";
  }
  return "unknown";
}

KzAlgorithm parse_kz_algorithm(std::string_view name) {
  if (name == "kz-baseline") return KzAlgorithm::kBaseline;
  if (name == "kz-modified") return KzAlgorithm::kModified;
  throw Error(ErrorCode::kConfigInvalid, "unknown algorithm '" + std::string(name) + "'");
}

std::size_t KzResult::expansions() const {
  std::size_t count = 0;
  for (const KzStep& s : steps) count += s.expansion_skipped ? 0 : 1;
  return count;
}

void expand_basis_inplace(RealMatrix& r, IntMatrix& z, std::span<const Integer> x,
                          std::size_t first) {
  const std::size_t n = r.cols();
  if (first >= n || x.size() != n - first) {
    throw Error(ErrorCode::kInvalidArgument, "x must have n - first entries");
  }
  if (z.rows() != n || z.cols() != n) throw Error(ErrorCode::kInvalidArgument, "Z not conformal with R");
  const Integer g = content(x);
  if (g == 0) throw Error(ErrorCode::kZeroVector, "cannot expand the zero vector");
  if (g != 1) throw Error(ErrorCode::kNonPrimitiveVector, "gcd of entries is " + g.str());

  IntVector w(x.begin(), x.end());
  for (std::size_t i = w.size() - 1; i >= 1; --i) {
    if (w[i] == 0) continue;  // U would be the identity
    const ExtGcdResult eg = ext_gcd(w[i - 1], w[i]);
    const Integer u00 = w[i - 1] / eg.d;
    const Integer u10 = w[i] / eg.d;
    const Integer u01 = -eg.b;
    const Integer& u11 = eg.a;
    const std::size_t c0 = first + i - 1;
    const std::size_t c1 = first + i;

    z.transform_column_pair(c0, c1, u00, u01, u10, u11);

    const double f00 = to_double(u00);
    const double f01 = to_double(u01);
    const double f10 = to_double(u10);
    const double f11 = to_double(u11);
    for (std::size_t row = 0; row <= c1; ++row) {
      const double a = r(row, c0);
      const double b = r(row, c1);
      r(row, c0) = a * f00 + b * f10;
      r(row, c1) = a * f01 + b * f11;
    }
    retriangularize_pair(r, c0, c1, c0);

    w[i - 1] = eg.d;
    w[i] = 0;
  }
}

std::pair<RealMatrix, IntMatrix> expand_basis(const RealMatrix& r, const IntMatrix& z,
                                              std::span<const Integer> x, std::size_t first) {
  RealMatrix rr = r;
  IntMatrix zz = z;
  expand_basis_inplace(rr, zz, x, first);
  return {std::move(rr), std::move(zz)};
}

KzResult kz_reduce_baseline(const RealMatrix& r, const KzOptions& options) {
  require_valid_delta(options.delta);
  require_reducible(r);
  const std::size_t n = r.cols();
  KzResult out{r, IntMatrix::identity(n), {}};

  for (std::size_t first = 0; first + 1 < n; ++first) {
    options.budget.check_deadline();
    const std::size_t m = n - first;
    LllAidedSvpResult svp =
        lll_aided_svp(out.r_bar.block(first, first, m, m), options.delta, options.budget);

    KzStep step;
    step.k = first + 1;
    step.svp_norm = svp.norm;
    step.nodes = svp.nodes;
    step.expansion_skipped = is_unit_first(svp.x);
    if (!step.expansion_skipped) expand_basis_inplace(out.r_bar, out.z, svp.x, first);
    step.solution = std::move(svp.x);
    finish_step(step, out.r_bar, out.z, first, options, out.steps);
  }

  size_reduce_inplace(out.r_bar, out.z);
  return out;
}

KzResult kz_reduce_modified(const RealMatrix& r, const KzOptions& options) {
  require_valid_delta(options.delta);
  require_reducible(r);
  const std::size_t n = r.cols();
  KzResult out{r, IntMatrix::identity(n), {}};

  for (std::size_t first = 0; first + 1 < n; ++first) {
    options.budget.check_deadline();
    const std::size_t m = n - first;

    KzStep step;
    step.k = first + 1;
    step.lll_swaps =
        detail::lll_reduce_trailing(out.r_bar, out.z, first, options.delta, &options.budget);
    SvpSolution svp = enumerate_shortest(out.r_bar.block(first, first, m, m), options.budget);
    if (options.check_entry_bound && entry_bound_violations(svp.x, options.delta) != 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "SVP solution at step " + std::to_string(step.k) + " violates the entry bound");
    }

    step.svp_norm = svp.norm;
    step.nodes = svp.nodes;
    step.expansion_skipped = is_unit_first(svp.x);
    if (!step.expansion_skipped) expand_basis_inplace(out.r_bar, out.z, svp.x, first);
    step.solution = std::move(svp.x);
    finish_step(step, out.r_bar, out.z, first, options, out.steps);
  }

  size_reduce_inplace(out.r_bar, out.z);
  return out;
}

KzResult kz_reduce(KzAlgorithm alg, const RealMatrix& r, const KzOptions& options) {
  return alg == KzAlgorithm::kBaseline ? kz_reduce_baseline(r, options)
                                       : kz_reduce_modified(r, options);
}

bool is_kz_reduced(const RealMatrix& r, const SearchBudget& budget) {
  if (r.cols() > kKzVerifyMaxDimension) {
    throw Error(ErrorCode::kDimensionTooLarge,
                "KZ verification limited to n <= " + std::to_string(kKzVerifyMaxDimension));
  }
  if (!is_size_reduced(r)) return false;
  const std::size_t n = r.cols();
  for (std::size_t i = 0; i < n; ++i) {
    const SvpSolution s = enumerate_shortest(r.block(i, i, n - i, n - i), budget);
    if (std::abs(r(i, i)) > (1.0 + kKzTolerance) * s.norm) return false;
  }
  return true;
}

}  // namespace kzred
