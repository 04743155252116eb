#include <atomic>
#include <cmath>
#include <set>
#include <stdexcept>

#include <gtest/gtest.h>

#include "netsens/csv.hpp"
#include "netsens/parallel.hpp"
#include "netsens/rng.hpp"

using namespace netsens;

namespace {

class WorkerCount {
 public:
  explicit WorkerCount(std::size_t n) { set_worker_count(n); }
  ~WorkerCount() { set_worker_count(0); }
};

}  // namespace

TEST(DeriveSeed, DependsOnEveryComponentAndOrder) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 20; ++a)
    for (std::uint64_t b = 0; b < 20; ++b) seen.insert(derive_seed(1, {a, b}));
  EXPECT_EQ(seen.size(), 400u);
  EXPECT_NE(derive_seed(1, {2, 3}), derive_seed(1, {3, 2}));
  EXPECT_NE(derive_seed(1, {0}), derive_seed(1, {0, 0}));
  EXPECT_NE(derive_seed(1, {5}), derive_seed(2, {5}));
  EXPECT_EQ(derive_seed(9, {1, 2, 3}), derive_seed(9, {1, 2, 3}));
}

TEST(HashString, Distinguishes) {
  EXPECT_NE(hash_string("dc"), hash_string("cd"));
  EXPECT_NE(hash_string(""), hash_string("a"));
  static_assert(hash_string("pr") == hash_string("pr"));
}

TEST(MakeRng, UsesBothSeedHalves) {
  EXPECT_NE(make_rng(1)(), make_rng(1 + (std::uint64_t{1} << 32))());
  EXPECT_EQ(make_rng(42)(), make_rng(42)());
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  for (std::size_t workers : {1u, 3u, 8u}) {
    WorkerCount w(workers);
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { ++hits[i]; });
    for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
}

TEST(ParallelFor, PropagatesExceptions) {
  WorkerCount w(4);
  EXPECT_THROW(parallel_for(100, [](std::size_t i) {
                 if (i == 37) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}

TEST(ParallelFor, NestedCallsRunInline) {
  WorkerCount w(4);
  std::atomic<int> total{0};
  parallel_for(8, [&](std::size_t) { parallel_for(10, [&](std::size_t) { ++total; }); });
  EXPECT_EQ(total.load(), 80);
}

TEST(WorkerCount, OverrideWins) {
  WorkerCount w(3);
  EXPECT_EQ(worker_count(), 3u);
}

TEST(Csv, FormatDouble) {
  EXPECT_EQ(csv::format_double(0.1), "0.1");
  EXPECT_EQ(csv::format_double(1.0 / 3.0), "0.3333333333333333");
  EXPECT_EQ(csv::format_double(INFINITY), "inf");
  EXPECT_EQ(csv::format_double(-INFINITY), "-inf");
  EXPECT_EQ(csv::format_double(NAN), "nan");
}

TEST(Csv, ParseDoubleRoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 12345.678, 0.0})
    EXPECT_EQ(csv::parse_double(csv::format_double(x)), x);
  EXPECT_EQ(csv::parse_double("inf"), INFINITY);
  EXPECT_TRUE(std::isnan(csv::parse_double("NA")));
  EXPECT_TRUE(std::isnan(csv::parse_double("")));
  EXPECT_THROW(csv::parse_double("1.5x", 4), parse_error);
}

TEST(Csv, Split) {
  auto f = csv::split("a,,b\r");
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0], "a");
  EXPECT_EQ(f[1], "");
  EXPECT_EQ(f[2], "b");
  EXPECT_EQ(csv::split("").size(), 1u);
}

TEST(Csv, Sanitize) { EXPECT_EQ(csv::sanitize("a,b\nc"), "a_b_c"); }

TEST(ParseError, CarriesLine) {
  parse_error e("bad", 7);
  EXPECT_EQ(e.line(), 7u);
  EXPECT_STREQ(e.what(), "line 7: bad");
  EXPECT_STREQ(parse_error("bad", 0).what(), "bad");
}
