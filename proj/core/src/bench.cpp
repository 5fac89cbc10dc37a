#include "kzred/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "kzred/lll.hpp"

namespace kzred {

namespace {

RealMatrix normal_matrix(std::size_t n, NormalGenerator& gen) {
  std::vector<double> v(n * n);
  for (double& e : v) e = gen();
  return RealMatrix(n, n, std::move(v));
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::size_t parse_size(std::string_view s) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kParseError, "not a count: '" + std::string(s) + "'");
  }
  return v;
}

bool parse_bool(std::string_view s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw Error(ErrorCode::kParseError, "not a boolean: '" + std::string(s) + "'");
}

constexpr std::string_view kCsvHeader = "case,n,trial,algorithm,seconds,status,max_entry,unimodular,lll_ok,kz_ok";

}  // namespace

double NormalGenerator::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double NormalGenerator::operator()() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  const double u1 = 1.0 - uniform01();  // (0, 1]
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(theta);
  return radius * std::cos(theta);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RealMatrix gen_case1(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "n must be >= 2");
  NormalGenerator gen(seed);
  return normal_matrix(n, gen);
}

RealMatrix gen_case2(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "n must be >= 2");
  NormalGenerator gen(seed);
  const RealMatrix u = qr_factorize(normal_matrix(n, gen)).q1;
  const RealMatrix v = qr_factorize(normal_matrix(n, gen)).q1;
  std::vector<double> d(n);
  const double nn = static_cast<double>(n);
  for (std::size_t i = 1; i <= n; ++i) {
    d[i - 1] = std::pow(10.0, 3.0 * (nn / 2.0 - static_cast<double>(i)) / (nn - 1.0));
  }
  return u * RealMatrix::diagonal(d) * v.transpose();
}

RealMatrix paper_example() {
  return RealMatrix::from_rows({
      {10.6347, -66.2715, 9.3046, 17.5349, 24.9625},
      {0, 8.6759, -4.7536, -3.9379, -2.3318},
      {0, 0, 0.3876, 0.1296, -0.2879},
      {0, 0, 0, 0.0133, -0.0082},
      {0, 0, 0, 0, 0.0015},
  });
}

std::string_view to_string(CaseKind kind) {
  switch (kind) {
    case CaseKind::kCase1: return "case1";
    case CaseKind::kCase2: return "case2";
    case CaseKind::kExample: return "example";
    case CaseKind::kFile: return "file";
  }
  return "unknown";
}

CaseKind parse_case_kind(std::string_view name) {
  if (name == "case1") return CaseKind::kCase1;
  if (name == "case2") return CaseKind::kCase2;
  if (name == "example") return CaseKind::kExample;
  if (name == "file") return CaseKind::kFile;
  throw Error(ErrorCode::kConfigInvalid, "unknown case '" + std::string(name) + "'");
}

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::kOk: return "ok";
    case RunStatus::kTimeout: return "timeout";
    case RunStatus::kAborted: return "aborted";
  }
  return "unknown";
}

RunStatus parse_run_status(std::string_view name) {
  if (name == "ok") return RunStatus::kOk;
  if (name == "timeout") return RunStatus::kTimeout;
  if (name == "aborted") return RunStatus::kAborted;
  throw Error(ErrorCode::kParseError, "unknown status '" + std::string(name) + "'");
}

std::uint64_t instance_seed(std::uint64_t base, CaseKind kind, std::size_t n, std::size_t trial) {
  std::uint64_t h = splitmix64(base);
  h = splitmix64(h ^ static_cast<std::uint64_t>(kind));
  h = splitmix64(h ^ static_cast<std::uint64_t>(n));
  return splitmix64(h ^ static_cast<std::uint64_t>(trial));
}

void BenchConfig::validate() const {
  if (trials < 1) throw Error(ErrorCode::kConfigInvalid, "trials must be >= 1");
  if (!(timeout_seconds > 0.0)) throw Error(ErrorCode::kConfigInvalid, "timeout must be positive");
  if (!(delta > 0.25 && delta <= 1.0)) throw Error(ErrorCode::kConfigInvalid, "delta must lie in (1/4, 1]");
  if (algorithms.empty()) throw Error(ErrorCode::kConfigInvalid, "no algorithms selected");
  if (jobs < 1) throw Error(ErrorCode::kConfigInvalid, "jobs must be >= 1");
  if (kind == CaseKind::kCase1 || kind == CaseKind::kCase2) {
    if (n_values.empty()) throw Error(ErrorCode::kConfigInvalid, "no dimensions given");
    for (std::size_t n : n_values) {
      if (n < 2) throw Error(ErrorCode::kConfigInvalid, "dimensions must be >= 2");
    }
  }
  if (kind == CaseKind::kFile && input_path.empty()) {
    throw Error(ErrorCode::kConfigInvalid, "file case needs an input path");
  }
}

RealMatrix make_instance(const BenchConfig& cfg, std::size_t n, std::size_t trial) {
  switch (cfg.kind) {
    case CaseKind::kExample: return paper_example();
    case CaseKind::kFile: return load_real_matrix(cfg.input_path);
    case CaseKind::kCase1:
    case CaseKind::kCase2: break;
  }
  const std::uint64_t seed = instance_seed(cfg.seed, cfg.kind, n, trial);
  for (std::uint64_t attempt = 0; attempt < 16; ++attempt) {
    const std::uint64_t s = attempt == 0 ? seed : splitmix64(seed ^ attempt);
    RealMatrix a = cfg.kind == CaseKind::kCase1 ? gen_case1(n, s) : gen_case2(n, s);
    try {
      qr_factorize(a);
      return a;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kRankDeficient) throw;
    }
  }
  throw Error(ErrorCode::kRankDeficient, "could not draw a full-rank instance");
}

BenchRecord run_trial(const RealMatrix& a, KzAlgorithm alg, double delta, double timeout_seconds) {
  using Clock = std::chrono::steady_clock;
  BenchRecord rec;
  rec.n = a.cols();
  rec.algorithm = alg;

  KzOptions options;
  options.delta = delta;
  options.budget = SearchBudget::with_timeout(std::chrono::duration<double>(timeout_seconds));

  std::optional<KzResult> result;
  const auto start = Clock::now();
  try {
    const RealMatrix r = qr_factorize(a).r;
    result = kz_reduce(alg, r, options);
    rec.status = RunStatus::kOk;
  } catch (const Error& e) {
    rec.status = e.code() == ErrorCode::kTimeout ? RunStatus::kTimeout : RunStatus::kAborted;
    rec.message = e.what();
  }
  rec.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (!result) return rec;

  for (const KzStep& s : result->steps) rec.max_entry = std::max(rec.max_entry, s.max_entry);
  rec.unimodular = is_unimodular(result->z);
  rec.lll_ok = is_lll_reduced(result->r_bar, delta);
  if (rec.n <= kKzVerifyMaxDimension) {
    try {
      rec.kz_ok = is_kz_reduced(result->r_bar,
                                SearchBudget::with_timeout(std::chrono::duration<double>(timeout_seconds)));
    } catch (const Error& e) {
      rec.message = std::string("KZ verification skipped: ") + e.what();
    }
  }
  if (!rec.unimodular) {
    rec.status = RunStatus::kAborted;
    rec.message = "Z failed the exact unimodularity check";
  }
  return rec;
}

std::vector<BenchRecord> run_benchmark(const BenchConfig& cfg) {
  cfg.validate();

  std::vector<KzAlgorithm> algs;
  for (KzAlgorithm a : {KzAlgorithm::kBaseline, KzAlgorithm::kModified}) {
    if (std::find(cfg.algorithms.begin(), cfg.algorithms.end(), a) != cfg.algorithms.end()) {
      algs.push_back(a);
    }
  }

  struct Task {
    std::size_t n;
    std::size_t trial;
    KzAlgorithm alg;
  };
  std::vector<Task> tasks;
  std::vector<std::size_t> dims = cfg.n_values;
  if (cfg.kind == CaseKind::kExample || cfg.kind == CaseKind::kFile) {
    dims = {make_instance(cfg, 0, 0).cols()};
  } else {
    std::sort(dims.begin(), dims.end());
    dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
  }
  for (std::size_t n : dims) {
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      for (KzAlgorithm a : algs) tasks.push_back({n, t, a});
    }
  }

  std::vector<BenchRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t idx = next++; idx < tasks.size() && !failed; idx = next++) {
      try {
        const Task& task = tasks[idx];
        const RealMatrix a = make_instance(cfg, task.n, task.trial);
        BenchRecord rec = run_trial(a, task.alg, cfg.delta, cfg.timeout_seconds);
        rec.case_id = std::string(to_string(cfg.kind));
        rec.trial = task.trial;
        records[idx] = std::move(rec);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };

  const std::size_t jobs = std::min(cfg.jobs, std::max<std::size_t>(tasks.size(), 1));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kCsvHeader << '\n';
  for (const BenchRecord& r : records) {
    out << r.case_id << ',' << r.n << ',' << r.trial << ',' << to_string(r.algorithm) << ','
        << std::fixed << std::setprecision(6) << r.seconds << std::defaultfloat << ','
        << to_string(r.status) << ',' << r.max_entry.str() << ',' << (r.unimodular ? "true" : "false")
        << ',' << (r.lll_ok ? "true" : "false") << ',';
    if (r.kz_ok) out << (*r.kz_ok ? "true" : "false");
    out << '\n';
  }
}

void write_csv(const std::vector<BenchRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open '" + path + "' for writing");
  write_csv(out, records);
  if (!out) throw Error(ErrorCode::kIoError, "write to '" + path + "' failed");
}

std::vector<BenchRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw Error(ErrorCode::kParseError, "missing or unexpected CSV header");
  }
  std::vector<BenchRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split(line, ',');
    if (f.size() != 10) throw Error(ErrorCode::kParseError, "expected 10 fields: " + line);
    BenchRecord r;
    r.case_id = f[0];
    r.n = parse_size(f[1]);
    r.trial = parse_size(f[2]);
    r.algorithm = parse_kz_algorithm(f[3]);
    try {
      r.seconds = std::stod(f[4]);
      r.max_entry = Integer(f[6]);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParseError, "bad numeric field: " + line);
    }
    r.status = parse_run_status(f[5]);
    r.unimodular = parse_bool(f[7]);
    r.lll_ok = parse_bool(f[8]);
    if (!f[9].empty()) r.kz_ok = parse_bool(f[9]);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<BenchRecord> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  return read_csv(in);
}

std::vector<std::size_t> parse_n_values(std::string_view text) {
  std::vector<std::size_t> out;
  try {
    if (text.find(':') != std::string_view::npos) {
      const auto parts = split(text, ':');
      if (parts.size() != 3) throw Error(ErrorCode::kConfigInvalid, "range must be first:step:last");
      const std::size_t first = parse_size(parts[0]);
      const std::size_t step = parse_size(parts[1]);
      const std::size_t last = parse_size(parts[2]);
      if (step == 0) throw Error(ErrorCode::kConfigInvalid, "range step must be positive");
      for (std::size_t n = first; n <= last; n += step) out.push_back(n);
    } else {
      for (const std::string& part : split(text, ',')) out.push_back(parse_size(part));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfigInvalid) throw;
    throw Error(ErrorCode::kConfigInvalid, "bad dimension list '" + std::string(text) + "'");
  }
  if (out.empty()) throw Error(ErrorCode::kConfigInvalid, "empty dimension list");
  return out;
}

}  // namespace kzred
