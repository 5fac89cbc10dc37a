#include "kzred/svp.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "kzred/lll.hpp"

namespace kzred {

namespace {

constexpr double kMaxExactCoordinate = 4503599627370496.0;  // 2^52

void require_search_input(const RealMatrix& r) {
  if (r.empty() || r.rows() != r.cols()) throw Error(ErrorCode::kNotSquare, "R must be square");
  if (!r.is_upper_triangular()) throw Error(ErrorCode::kInvalidArgument, "R must be upper triangular");
  if (!r.all_finite()) throw Error(ErrorCode::kNonFinite, "R contains NaN or Inf");
  for (std::size_t i = 0; i < r.rows(); ++i) {
    if (r(i, i) == 0.0) throw Error(ErrorCode::kZeroDiagonal, "zero diagonal entry");
  }
}

// Nearest integer; exact half-integers go to the one of smaller magnitude.
double round_toward_smaller(double c) {
  const double f = std::floor(c);
  const double frac = c - f;
  if (frac < 0.5) return f;
  if (frac > 0.5) return f + 1.0;
  return f >= 0.0 ? f : f + 1.0;
}

void normalize_sign(IntVector& x) {
  for (const Integer& v : x) {
    if (v == 0) continue;
    if (v < 0) {
      for (Integer& w : x) w = -w;
    }
    return;
  }
}

}  // namespace

double lattice_norm(const RealMatrix& r, std::span<const Integer> x) {
  if (x.size() != r.cols()) throw Error(ErrorCode::kInvalidArgument, "vector length mismatch");
  std::vector<double> xd(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) xd[j] = to_double(x[j]);
  double sum = 0.0;
  for (std::size_t i = 0; i < r.rows(); ++i) {
    double yi = 0.0;
    for (std::size_t j = 0; j < r.cols(); ++j) yi += r(i, j) * xd[j];
    sum += yi * yi;
  }
  return std::sqrt(sum);
}

SvpSolution enumerate_shortest(const RealMatrix& r, const SearchBudget& budget) {
  require_search_input(r);
  const std::size_t n = r.cols();

  // Incumbent: the shortest basis column.
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_col = 0;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i <= j; ++i) s += r(i, j) * r(i, j);
    if (s < best) {
      best = s;
      best_col = j;
    }
  }
  if (!(best > 0.0)) throw Error(ErrorCode::kRadiusUnderflow, "initial radius is not positive");
  std::vector<double> best_x(n, 0.0);
  best_x[best_col] = 1.0;

  std::vector<double> x(n, 0.0);
  std::vector<double> center(n, 0.0);
  std::vector<double> step(n, 1.0);
  std::vector<double> dist(n + 1, 0.0);
  // tail_zero[i]: every coordinate above level i is zero. Such levels run
  // 0, 1, 2, ... only, which skips the mirror image -x of each candidate.
  std::vector<char> tail_zero(n, 1);

  auto advance = [&](std::size_t i) {
    if (tail_zero[i]) {
      x[i] += 1.0;
    } else {
      x[i] += step[i];
      step[i] = step[i] > 0.0 ? -step[i] - 1.0 : -step[i] + 1.0;
    }
  };

  std::uint64_t nodes = 0;
  std::size_t i = n - 1;
  while (true) {
    ++nodes;
    if ((nodes & 4095U) == 0) {
      if (nodes > budget.node_cap) {
        throw Error(ErrorCode::kSearchAborted,
                    "enumeration exceeded node cap of " + std::to_string(budget.node_cap));
      }
      budget.check_deadline();
    }

    const double diff = r(i, i) * (x[i] - center[i]);
    const double d = dist[i + 1] + diff * diff;
    if (d < best) {
      if (i == 0) {
        if (!(tail_zero[0] && x[0] == 0.0)) {
          best = d;
          best_x = x;
        }
        advance(0);
      } else {
        dist[i] = d;
        --i;
        tail_zero[i] = tail_zero[i + 1] && x[i + 1] == 0.0;
        if (tail_zero[i]) {
          center[i] = 0.0;
          x[i] = 0.0;
        } else {
          double s = 0.0;
          for (std::size_t j = i + 1; j < n; ++j) s += r(i, j) * x[j];
          center[i] = -s / r(i, i);
          if (!(std::abs(center[i]) < kMaxExactCoordinate)) {
            throw Error(ErrorCode::kSearchAborted, "enumeration coordinate exceeds 2^52");
          }
          x[i] = round_toward_smaller(center[i]);
          step[i] = center[i] >= x[i] ? 1.0 : -1.0;
        }
      }
    } else {
      if (++i == n) break;
      advance(i);
    }
  }

  SvpSolution out;
  out.x.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.x[j] = integer_from_double(best_x[j]);
  normalize_sign(out.x);
  out.norm = lattice_norm(r, out.x);
  out.nodes = nodes;
  return out;
}

BruteForceResult brute_force_svp(const RealMatrix& r, std::span<const std::int64_t> box) {
  require_search_input(r);
  const std::size_t n = r.cols();
  if (n > kBruteForceMaxDimension) {
    throw Error(ErrorCode::kDimensionTooLarge,
                "brute force limited to n <= " + std::to_string(kBruteForceMaxDimension));
  }
  if (box.size() != n) throw Error(ErrorCode::kInvalidArgument, "box length mismatch");
  for (std::int64_t b : box) {
    if (b < 1) throw Error(ErrorCode::kInvalidArgument, "box bounds must be >= 1");
  }

  // partial[j] = sum_{l >= j} x_l * R[:, l], for j = 1..n-1; partial[n] = 0.
  std::vector<std::int64_t> x(n, 0);
  for (std::size_t j = 1; j < n; ++j) x[j] = -box[j];
  std::vector<std::vector<double>> partial(n + 1, std::vector<double>(n, 0.0));
  auto refresh = [&](std::size_t from) {
    for (std::size_t j = from; j >= 1; --j) {
      for (std::size_t row = 0; row < n; ++row) {
        partial[j][row] = partial[j + 1][row] + static_cast<double>(x[j]) * r(row, j);
      }
    }
  };
  if (n > 1) refresh(n - 1);

  double best = std::numeric_limits<double>::infinity();
  std::vector<std::int64_t> best_x(n, 0);
  const double r00 = r(0, 0);
  while (true) {
    const std::vector<double>& y = partial[std::min<std::size_t>(1, n)];
    bool rest_zero = true;
    for (std::size_t j = 1; j < n; ++j) rest_zero = rest_zero && x[j] == 0;
    double tail = 0.0;
    for (std::size_t row = 1; row < n; ++row) tail += y[row] * y[row];

    std::int64_t x0 = 1;
    if (!rest_zero) {
      const double target = std::round(-y[0] / r00);
      const double clamped = std::max(-static_cast<double>(box[0]),
                                      std::min(static_cast<double>(box[0]), target));
      x0 = static_cast<std::int64_t>(clamped);
    }
    const double head = r00 * static_cast<double>(x0) + y[0];
    const double value = head * head + tail;
    if (value < best) {
      best = value;
      best_x = x;
      best_x[0] = x0;
    }

    // Odometer over coordinates 1..n-1, lowest index fastest.
    std::size_t j = 1;
    while (j < n && x[j] == box[j]) {
      x[j] = -box[j];
      ++j;
    }
    if (j >= n) break;
    ++x[j];
    refresh(j);
  }

  BruteForceResult out;
  out.solution.x.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.solution.x[j] = best_x[j];
    if (best_x[j] == box[j] || best_x[j] == -box[j]) out.touches_box = true;
  }
  normalize_sign(out.solution.x);
  out.solution.norm = lattice_norm(r, out.solution.x);
  return out;
}

BruteForceResult brute_force_svp(const RealMatrix& r, std::int64_t box) {
  std::vector<std::int64_t> b(r.cols(), box);
  return brute_force_svp(r, b);
}

LllAidedSvpResult lll_aided_svp(const RealMatrix& block, double delta, const SearchBudget& budget) {
  LllAidedSvpResult out;
  out.r_hat = block;
  out.z_hat = IntMatrix::identity(block.cols());
  detail::lll_reduce_trailing(out.r_hat, out.z_hat, 0, delta, &budget);
  SvpSolution sol = enumerate_shortest(out.r_hat, budget);
  out.x = out.z_hat * std::span<const Integer>(sol.x);
  out.z = std::move(sol.x);
  out.norm = sol.norm;
  out.nodes = sol.nodes;
  return out;
}

double theorem1_bound(std::size_t n_sub, std::size_t i, double delta) {
  require_valid_delta(delta);
  if (n_sub < 1 || i < 1 || i > n_sub) {
    throw Error(ErrorCode::kIndexOutOfRange, "need 1 <= i <= n_sub");
  }
  const double base = 4.0 / (4.0 * delta - 1.0);
  return std::pow(base, static_cast<double>(n_sub - 1) / 2.0) *
         std::ldexp(1.0, static_cast<int>(n_sub - i));
}

std::vector<std::int64_t> theorem1_box(std::size_t n_sub, double delta) {
  std::vector<std::int64_t> box(n_sub);
  for (std::size_t i = 1; i <= n_sub; ++i) {
    box[i - 1] = static_cast<std::int64_t>(std::floor(theorem1_bound(n_sub, i, delta) * (1.0 + 1e-12)));
  }
  return box;
}

std::size_t entry_bound_violations(std::span<const Integer> z, double delta) {
  std::size_t violations = 0;
  for (std::size_t i = 1; i <= z.size(); ++i) {
    if (to_double(abs(z[i - 1])) > theorem1_bound(z.size(), i, delta) * (1.0 + 1e-12)) ++violations;
  }
  return violations;
}

}  // namespace kzred
