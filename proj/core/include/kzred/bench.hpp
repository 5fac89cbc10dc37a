#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "kzred/integer_matrix.hpp"
#include "kzred/kz.hpp"
#include "kzred/real_matrix.hpp"

namespace kzred {

// Standard normal variates from mt19937_64 via the Box-Muller transform.
// Uniforms take the top 53 bits of each engine output, so a given seed
// yields the same stream on every conforming platform (unlike
// std::normal_distribution, whose algorithm is unspecified).
class NormalGenerator {
 public:
  explicit NormalGenerator(std::uint64_t seed) : engine_(seed) {}

  double operator()();

 private:
  double uniform01();  // [0, 1)

  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Case 1: n x n matrix of independent N(0, 1) entries.
RealMatrix gen_case1(std::size_t n, std::uint64_t seed);

// Case 2: U D V^T with U, V the Q factors of two Case-1 draws and
// d_ii = 10^(3 (n/2 - i) / (n - 1)), i = 1..n; cond2 = 10^3 for every n.
RealMatrix gen_case2(std::size_t n, std::uint64_t seed);

// The 5 x 5 ill-conditioned upper-triangular example basis.
RealMatrix paper_example();

enum class CaseKind { kCase1, kCase2, kExample, kFile };

std::string_view to_string(CaseKind kind);
CaseKind parse_case_kind(std::string_view name);

// Per-trial seed: splitmix64 chained over (base, case, n, trial), so any
// trial can be regenerated on its own.
std::uint64_t instance_seed(std::uint64_t base, CaseKind kind, std::size_t n, std::size_t trial);

struct BenchConfig {
  CaseKind kind = CaseKind::kCase1;
  std::vector<std::size_t> n_values;  // ignored for example/file cases
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  double timeout_seconds = 60.0;
  double delta = 1.0;
  std::vector<KzAlgorithm> algorithms{KzAlgorithm::kBaseline, KzAlgorithm::kModified};
  std::size_t jobs = 1;
  std::string input_path;  // CaseKind::kFile

  // Throws kConfigInvalid.
  void validate() const;
};

enum class RunStatus { kOk, kTimeout, kAborted };

std::string_view to_string(RunStatus status);
RunStatus parse_run_status(std::string_view name);

struct BenchRecord {
  std::string case_id;
  std::size_t n = 0;
  std::size_t trial = 0;
  KzAlgorithm algorithm = KzAlgorithm::kModified;
  double seconds = 0.0;
  RunStatus status = RunStatus::kOk;
  Integer max_entry = 0;
  bool unimodular = false;
  bool lll_ok = false;
  std::optional<bool> kz_ok;  // only checked for n <= 10
  std::string message;        // failure reason; not serialized

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

// Instance for (kind, n, trial) under the base seed. Regenerates with a
// derived seed if the draw is numerically rank deficient.
RealMatrix make_instance(const BenchConfig& cfg, std::size_t n, std::size_t trial);

// QR + reduction under the timeout, then verification.
BenchRecord run_trial(const RealMatrix& a, KzAlgorithm alg, double delta, double timeout_seconds);

std::vector<BenchRecord> run_benchmark(const BenchConfig& cfg);

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);
void write_csv(const std::vector<BenchRecord>& records, const std::string& path);
std::vector<BenchRecord> read_csv(std::istream& in);
std::vector<BenchRecord> read_csv(const std::string& path);

// "2:2:20", "4,6,8" or "10".
std::vector<std::size_t> parse_n_values(std::string_view text);

}  // namespace kzred
