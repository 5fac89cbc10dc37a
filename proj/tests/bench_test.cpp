#include "kzred/bench.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "kzred/error.hpp"

namespace kzred {
namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

std::size_t line_count(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

TEST(Generators, DeterministicPerSeed) {
  EXPECT_EQ(gen_case1(6, 11), gen_case1(6, 11));
  EXPECT_FALSE(gen_case1(6, 11) == gen_case1(6, 12));
  EXPECT_EQ(gen_case2(6, 11), gen_case2(6, 11));
}

TEST(Generators, CaseOneEntriesLookStandardNormal) {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t count = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const RealMatrix a = gen_case1(20, seed);
    for (std::size_t j = 0; j < 20; ++j) {
      for (std::size_t i = 0; i < 20; ++i) {
        sum += a(i, j);
        sum_sq += a(i, j) * a(i, j);
        ++count;
      }
    }
  }
  const double mean = sum / static_cast<double>(count);
  const double var = sum_sq / static_cast<double>(count) - mean * mean;
  // 4000 samples: standard errors are about 0.016 and 0.022.
  EXPECT_LT(std::abs(mean), 0.08);
  EXPECT_LT(std::abs(var - 1.0), 0.1);
}

TEST(Generators, CaseTwoConditionNumber) {
  for (std::size_t n : {2u, 4u, 10u, 20u}) {
    EXPECT_NEAR(cond2(gen_case2(n, 5)) / 1e3, 1.0, 1e-6) << "n=" << n;
  }
}

TEST(Generators, CaseTwoSingularValues) {
  // n = 2: d = (10^0, 10^-3), and ||U D V^T||_F^2 = sum d_i^2.
  const RealMatrix a = gen_case2(2, 9);
  const double fro = a.frobenius_norm();
  EXPECT_NEAR(fro * fro, 1.0 + 1e-6, 1e-14);
  // n = 10: sum of d_i^2 with d_i = 10^(3 (5 - i) / 9).
  double expected = 0.0;
  for (int i = 1; i <= 10; ++i) expected += std::pow(10.0, 6.0 * (5.0 - i) / 9.0);
  const double f10 = gen_case2(10, 9).frobenius_norm();
  EXPECT_NEAR(f10 * f10 / expected, 1.0, 1e-12);
}

TEST(Generators, WorkedExampleEntries) {
  const RealMatrix a = paper_example();
  EXPECT_EQ(a.rows(), 5u);
  EXPECT_EQ(a(0, 0), 10.6347);
  EXPECT_EQ(a(0, 1), -66.2715);
  EXPECT_EQ(a(3, 3), 0.0133);
  EXPECT_EQ(a(4, 4), 0.0015);
  EXPECT_TRUE(a.is_upper_triangular());
}

TEST(InstanceSeed, DistinctAcrossCoordinates) {
  const std::uint64_t s = instance_seed(1, CaseKind::kCase1, 4, 0);
  EXPECT_EQ(s, instance_seed(1, CaseKind::kCase1, 4, 0));
  EXPECT_NE(s, instance_seed(2, CaseKind::kCase1, 4, 0));
  EXPECT_NE(s, instance_seed(1, CaseKind::kCase2, 4, 0));
  EXPECT_NE(s, instance_seed(1, CaseKind::kCase1, 6, 0));
  EXPECT_NE(s, instance_seed(1, CaseKind::kCase1, 4, 1));
}

TEST(RunBenchmark, WorkedExample) {
  BenchConfig cfg;
  cfg.kind = CaseKind::kExample;
  const std::vector<BenchRecord> recs = run_benchmark(cfg);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].algorithm, KzAlgorithm::kBaseline);
  EXPECT_EQ(recs[1].algorithm, KzAlgorithm::kModified);
  EXPECT_EQ(recs[1].status, RunStatus::kOk);
  EXPECT_TRUE(recs[1].lll_ok);
  EXPECT_TRUE(recs[1].unimodular);
  EXPECT_EQ(recs[1].kz_ok, std::optional<bool>(true));
  EXPECT_EQ(recs[1].n, 5u);
}

TEST(RunBenchmark, CaseOneGridIsCompleteAndOrdered) {
  BenchConfig cfg;
  cfg.n_values = {2, 4};
  cfg.trials = 3;
  cfg.jobs = 2;
  const std::vector<BenchRecord> recs = run_benchmark(cfg);
  ASSERT_EQ(recs.size(), 12u);
  std::size_t idx = 0;
  for (std::size_t n : {2u, 4u}) {
    for (std::size_t t = 0; t < 3; ++t) {
      for (KzAlgorithm alg : {KzAlgorithm::kBaseline, KzAlgorithm::kModified}) {
        const BenchRecord& r = recs[idx++];
        EXPECT_EQ(r.n, n);
        EXPECT_EQ(r.trial, t);
        EXPECT_EQ(r.algorithm, alg);
        EXPECT_EQ(r.status, RunStatus::kOk);
        EXPECT_TRUE(r.unimodular);
        EXPECT_EQ(r.kz_ok, std::optional<bool>(true));
      }
    }
  }
  // Same seeds, different worker count: same instances, same outcomes.
  cfg.jobs = 1;
  const std::vector<BenchRecord> again = run_benchmark(cfg);
  for (std::size_t i = 0; i < recs.size(); ++i) EXPECT_EQ(again[i].max_entry, recs[i].max_entry);
}

TEST(Csv, EmptyRunWritesHeaderOnly) {
  std::ostringstream out;
  write_csv(out, {});
  EXPECT_EQ(out.str(), "case,n,trial,algorithm,seconds,status,max_entry,unimodular,lll_ok,kz_ok\n");
}

TEST(Csv, RoundTrip) {
  BenchRecord a;
  a.case_id = "case2";
  a.n = 12;
  a.trial = 3;
  a.algorithm = KzAlgorithm::kBaseline;
  a.seconds = 1.5;
  a.status = RunStatus::kTimeout;
  a.max_entry = Integer("98765432109876543210");
  BenchRecord b;
  b.case_id = "case1";
  b.n = 4;
  b.seconds = 0.000125;
  b.unimodular = true;
  b.lll_ok = true;
  b.kz_ok = true;

  std::stringstream s;
  write_csv(s, {a, b});
  EXPECT_EQ(line_count(s.str()), 3u);
  EXPECT_NE(s.str().find("case2,12,3,kz-baseline,1.500000,timeout,98765432109876543210,false,false,\n"),
            std::string::npos);
  const std::vector<BenchRecord> back = read_csv(s);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0], a);
  EXPECT_EQ(back[1], b);
}

TEST(Csv, RejectsBadHeader) {
  std::istringstream in("a,b,c\n");
  EXPECT_EQ(code_of([&] { read_csv(in); }), ErrorCode::kParseError);
}

TEST(ParseNValues, Forms) {
  EXPECT_EQ(parse_n_values("2:2:8"), (std::vector<std::size_t>{2, 4, 6, 8}));
  EXPECT_EQ(parse_n_values("4,6,9"), (std::vector<std::size_t>{4, 6, 9}));
  EXPECT_EQ(parse_n_values("10"), (std::vector<std::size_t>{10}));
  for (const char* bad : {"", "2:0:8", "a", "8:2:2", "3,,4"}) {
    EXPECT_EQ(code_of([&] { parse_n_values(bad); }), ErrorCode::kConfigInvalid) << bad;
  }
}

TEST(BenchConfig, Validation) {
  BenchConfig ok;
  ok.n_values = {4};
  EXPECT_NO_THROW(ok.validate());

  BenchConfig no_n;
  EXPECT_EQ(code_of([&] { no_n.validate(); }), ErrorCode::kConfigInvalid);

  BenchConfig bad_trials = ok;
  bad_trials.trials = 0;
  EXPECT_EQ(code_of([&] { bad_trials.validate(); }), ErrorCode::kConfigInvalid);

  BenchConfig bad_timeout = ok;
  bad_timeout.timeout_seconds = 0.0;
  EXPECT_EQ(code_of([&] { bad_timeout.validate(); }), ErrorCode::kConfigInvalid);

  BenchConfig bad_delta = ok;
  bad_delta.delta = 0.1;
  EXPECT_EQ(code_of([&] { bad_delta.validate(); }), ErrorCode::kConfigInvalid);

  BenchConfig no_file = ok;
  no_file.kind = CaseKind::kFile;
  EXPECT_EQ(code_of([&] { no_file.validate(); }), ErrorCode::kConfigInvalid);
}

}  // namespace
}  // namespace kzred
