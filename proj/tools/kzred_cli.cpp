#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "kzred/bench.hpp"
#include "kzred/error.hpp"
#include "kzred/kz.hpp"
#include "kzred/lll.hpp"
#include "kzred/svp.hpp"

namespace {

using namespace kzred;

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

std::string join(const IntVector& v) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i];
  out << ']';
  return out.str();
}

std::string format_cond(const std::optional<double>& c) {
  if (!c) return "-";
  std::ostringstream out;
  out << std::setprecision(3) << *c;
  return out.str();
}

void print_step(std::ostream& out, KzAlgorithm alg, const KzStep& s) {
  out << to_string(alg) << " step k=" << s.k << " solution=" << join(s.solution) << " max_entry=" << s.max_entry
      << " skipped=" << (s.expansion_skipped ? "yes" : "no") << " norm=" << std::setprecision(6) << s.svp_norm
      << " cond=" << format_cond(s.block_cond) << '\n';
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

struct ReduceArgs {
  std::string alg = "kz-modified";
  std::string input;
  double delta = 1.0;
  bool trace = false;
  std::string out_r;
  std::string out_z;
};

int run_reduce(const ReduceArgs& args) {
  const RealMatrix r = qr_factorize(load_real_matrix(args.input)).r;
  RealMatrix r_bar;
  IntMatrix z;
  if (args.alg == "lll") {
    QrzFactorization f = lll_reduce(r, args.delta);
    if (args.trace) std::cerr << "lll swaps=" << f.swaps << '\n';
    r_bar = std::move(f.r_bar);
    z = std::move(f.z);
  } else {
    const KzAlgorithm alg = parse_kz_algorithm(args.alg);
    KzOptions opts;
    opts.delta = args.delta;
    opts.trace = args.trace;
    KzResult res = kz_reduce(alg, r, opts);
    if (args.trace) {
      for (const KzStep& s : res.steps) print_step(std::cerr, alg, s);
    }
    r_bar = std::move(res.r_bar);
    z = std::move(res.z);
  }

  if (args.out_r.empty()) {
    write_real_matrix(std::cout, r_bar);
  } else {
    std::ofstream f(args.out_r);
    if (!f) throw Error(ErrorCode::kIoError, "cannot open '" + args.out_r + "'");
    write_real_matrix(f, r_bar);
  }
  if (args.out_z.empty()) {
    std::cout << '\n';
    write_int_matrix(std::cout, z);
  } else {
    std::ofstream f(args.out_z);
    if (!f) throw Error(ErrorCode::kIoError, "cannot open '" + args.out_z + "'");
    write_int_matrix(f, z);
  }
  return 0;
}

struct SvpArgs {
  std::string input;
  double delta = 1.0;
  std::int64_t brute_box = 0;
  bool json = false;
};

int run_svp(const SvpArgs& args) {
  const RealMatrix r = qr_factorize(load_real_matrix(args.input)).r;
  const LllAidedSvpResult s = lll_aided_svp(r, args.delta);
  std::optional<BruteForceResult> oracle;
  if (args.brute_box > 0) oracle = brute_force_svp(s.r_hat, args.brute_box);

  if (args.json) {
    auto strings = [](const IntVector& v) {
      std::vector<std::string> out;
      for (const Integer& e : v) out.push_back(e.str());
      return out;
    };
    nlohmann::ordered_json j;
    j["x"] = strings(s.x);
    j["z"] = strings(s.z);
    j["norm"] = s.norm;
    j["nodes"] = s.nodes;
    if (oracle) {
      j["brute_force_norm"] = oracle->solution.norm;
      j["brute_force_touches_box"] = oracle->touches_box;
    }
    std::cout << j.dump() << '\n';
    return 0;
  }
  std::cout << "x = " << join(s.x) << '\n'
            << "z = " << join(s.z) << '\n'
            << "norm = " << std::setprecision(17) << s.norm << '\n'
            << "nodes = " << s.nodes << '\n';
  if (oracle) {
    std::cout << "brute force norm = " << oracle->solution.norm
              << (oracle->touches_box ? " (minimizer on box boundary)" : "") << '\n';
  }
  return 0;
}

struct BenchArgs {
  std::string kind = "case1";
  std::string n_values;
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  double timeout = 60.0;
  double delta = 1.0;
  std::string algs = "kz-baseline,kz-modified";
  std::string out;
  std::size_t jobs = 1;
  std::string input;
};

BenchConfig make_config(const BenchArgs& args) {
  BenchConfig cfg;
  cfg.kind = parse_case_kind(args.kind);
  if (!args.n_values.empty()) cfg.n_values = parse_n_values(args.n_values);
  cfg.trials = args.trials;
  cfg.seed = args.seed;
  cfg.timeout_seconds = args.timeout;
  cfg.delta = args.delta;
  cfg.algorithms.clear();
  for (const std::string& name : split_list(args.algs)) cfg.algorithms.push_back(parse_kz_algorithm(name));
  cfg.jobs = args.jobs;
  cfg.input_path = args.input;
  cfg.validate();
  return cfg;
}

int run_bench(const BenchArgs& args) {
  BenchConfig cfg;
  try {
    cfg = make_config(args);
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  const std::vector<BenchRecord> records = run_benchmark(cfg);
  write_csv(records, args.out);

  for (KzAlgorithm alg : cfg.algorithms) {
    std::size_t ok = 0, timeouts = 0, aborted = 0;
    double total = 0.0;
    for (const BenchRecord& r : records) {
      if (r.algorithm != alg) continue;
      total += r.seconds;
      if (r.status == RunStatus::kOk) ++ok;
      if (r.status == RunStatus::kTimeout) ++timeouts;
      if (r.status == RunStatus::kAborted) ++aborted;
    }
    std::cout << to_string(alg) << ": ok=" << ok << " timeout=" << timeouts << " aborted=" << aborted
              << " total_seconds=" << std::fixed << std::setprecision(6) << total << std::defaultfloat << '\n';
  }
  std::cout << "wrote " << records.size() << " records to " << args.out << '\n';
  return 0;
}

int run_example() {
  const RealMatrix a = paper_example();
  std::cout << "basis:\n";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) std::cout << std::setw(10) << a(i, j);
    std::cout << '\n';
  }
  std::cout << "cond2 = " << std::setprecision(3) << cond2(a) << "\n\n";

  const RealMatrix r = qr_factorize(a).r;
  std::vector<std::string> rows;
  for (KzAlgorithm alg : {KzAlgorithm::kBaseline, KzAlgorithm::kModified}) {
    KzOptions opts;
    opts.trace = true;
    const KzResult res = kz_reduce(alg, r, opts);
    for (const KzStep& s : res.steps) print_step(std::cout, alg, s);
    std::cout << '\n';

    Integer largest = 0;
    double worst_cond = 0.0;
    for (const KzStep& s : res.steps) {
      largest = std::max(largest, s.max_entry);
      worst_cond = std::max(worst_cond, s.block_cond.value_or(0.0));
    }
    std::ostringstream row;
    row << std::left << std::setw(12) << to_string(alg) << " expansions=" << res.expansions()
        << " max_entry=" << largest << " max_block_cond=" << std::setprecision(3) << worst_cond
        << " lll_reduced=" << (is_lll_reduced(res.r_bar, 1.0) ? "yes" : "no")
        << " unimodular=" << (is_unimodular(res.z) ? "yes" : "no") << " det(Z)=" << det_exact(res.z);
    rows.push_back(row.str());
  }
  std::cout << "comparison:\n";
  for (const std::string& row : rows) std::cout << row << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice basis reduction: LLL, KZ (baseline and modified), SVP enumeration, benchmarks"};
  app.require_subcommand(1);

  ReduceArgs reduce_args;
  CLI::App* reduce = app.add_subcommand("reduce", "Reduce the basis in a matrix file");
  reduce->add_option("--alg", reduce_args.alg, "kz-baseline, kz-modified or lll")
      ->check(CLI::IsMember({"kz-baseline", "kz-modified", "lll"}));
  reduce->add_option("--input", reduce_args.input, "Matrix file")->required();
  reduce->add_option("--delta", reduce_args.delta, "LLL parameter in (1/4, 1]");
  reduce->add_flag("--trace", reduce_args.trace, "Per-step log on stderr");
  reduce->add_option("--out-r", reduce_args.out_r, "Write R to this file instead of stdout");
  reduce->add_option("--out-z", reduce_args.out_z, "Write Z to this file instead of stdout");

  SvpArgs svp_args;
  CLI::App* svp = app.add_subcommand("svp", "Shortest vector of the lattice in a matrix file");
  svp->add_option("--input", svp_args.input, "Matrix file")->required();
  svp->add_option("--delta", svp_args.delta, "LLL parameter for the preprocessing");
  svp->add_option("--brute-box", svp_args.brute_box, "Also run the brute-force oracle with this box")
      ->check(CLI::PositiveNumber);
  svp->add_flag("--json", svp_args.json, "Single-line JSON output");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "Timing and quality benchmark, written as CSV");
  bench->add_option("--case", bench_args.kind, "case1, case2, example or file");
  bench->add_option("--n", bench_args.n_values, "Dimensions: first:step:last or a comma list");
  bench->add_option("--trials", bench_args.trials, "Trials per dimension");
  bench->add_option("--seed", bench_args.seed, "Base seed");
  bench->add_option("--timeout", bench_args.timeout, "Per-run timeout in seconds");
  bench->add_option("--delta", bench_args.delta, "LLL parameter");
  bench->add_option("--algs", bench_args.algs, "Comma-separated algorithms");
  bench->add_option("--out", bench_args.out, "CSV output path")->required();
  bench->add_option("--jobs", bench_args.jobs, "Worker threads");
  bench->add_option("--input", bench_args.input, "Matrix file for --case file");

  app.add_subcommand("example", "Run both KZ algorithms on the built-in ill-conditioned example");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*reduce) return run_reduce(reduce_args);
    if (*svp) return run_svp(svp_args);
    if (*bench) return run_bench(bench_args);
    return run_example();
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return e.code() == ErrorCode::kConfigInvalid ? kExitConfig : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
