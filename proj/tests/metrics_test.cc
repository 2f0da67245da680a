// Copyright 2026 The SAC Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "sac/error.h"
#include "sac/metrics.h"
#include "sac/random.h"
#include "test_util.h"

namespace {

sac::ConfusionCounts TwoClassFixture() {
  sac::ConfusionCounts counts(2);
  counts.tp = {1, 1};
  counts.fp = {1, 0};
  counts.fn = {0, 1};
  return counts;
}

}  // namespace

TEST_CASE("accumulate examples") {
  sac::ConfusionCounts a(2);
  a.Accumulate({1, 0}, {1, 1});
  CHECK(a.tp == std::vector<std::uint64_t>{1, 0});
  CHECK(a.fp == std::vector<std::uint64_t>{0, 0});
  CHECK(a.fn == std::vector<std::uint64_t>{0, 1});

  sac::ConfusionCounts b(3);
  b.Accumulate({1, 0, 1}, {1, 0, 1});
  CHECK(b.tp == std::vector<std::uint64_t>{1, 0, 1});
  CHECK(b.fp == std::vector<std::uint64_t>{0, 0, 0});
  CHECK(b.fn == std::vector<std::uint64_t>{0, 0, 0});

  sac::ConfusionCounts c(2);
  c.Accumulate({0, 1}, {1, 0});
  CHECK(c.fp == std::vector<std::uint64_t>{0, 1});
  CHECK(c.fn == std::vector<std::uint64_t>{1, 0});
}

TEST_CASE("accumulate rejects length mismatches") {
  sac::ConfusionCounts counts(2);
  CHECK_THROWS_AS(counts.Accumulate({1}, {1, 0}), sac::Error);
  CHECK_THROWS_AS(counts.Accumulate({1, 0, 1}, {1, 0, 1}), sac::Error);
}

TEST_CASE("two-class fixture separates macro from micro") {
  const auto counts = TwoClassFixture();
  const auto macro = sac::MacroScores(counts);
  CHECK(macro.precision == 0.75);
  CHECK(macro.recall == 0.75);
  CHECK(macro.f1 == 0.75);
  const auto micro = sac::MicroScores(counts);
  CHECK(micro.precision == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(micro.recall == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(micro.f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  // Per-class F1 values are 2/3 and 2/3, so their mean is also 2/3.
  CHECK(sac::MacroF1PerClassMean(counts) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("perfect predictions score one") {
  sac::ConfusionCounts counts(3);
  counts.Accumulate({1, 1, 0}, {1, 1, 0});
  counts.Accumulate({0, 0, 1}, {0, 0, 1});
  for (const auto& s : {sac::MacroScores(counts), sac::MicroScores(counts)}) {
    CHECK(s.precision == 1.0);
    CHECK(s.recall == 1.0);
    CHECK(s.f1 == 1.0);
  }
}

TEST_CASE("no predictions score zero") {
  sac::ConfusionCounts counts(2);
  counts.Accumulate({0, 0}, {1, 1});
  const auto micro = sac::MicroScores(counts);
  CHECK(micro.precision == 0.0);
  CHECK(micro.recall == 0.0);
  CHECK(micro.f1 == 0.0);
  CHECK(sac::SafeRatio(0, 0) == 0.0);
  CHECK(sac::HarmonicMean(0.0, 0.0) == 0.0);
}

TEST_CASE("never-predicted classes pull macro scores down") {
  sac::ConfusionCounts counts(2);
  counts.Accumulate({1, 0}, {1, 0});
  const auto macro = sac::MacroScores(counts);
  CHECK(macro.precision == 0.5);
  CHECK(macro.recall == 0.5);
}

TEST_CASE("oracle equivalence on random pairs") {
  constexpr std::size_t kClasses = 50;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    sac::Rng rng(seed);
    sac::ConfusionCounts counts(kClasses);
    std::vector<std::pair<sac::LabelVector, sac::LabelVector>> pairs;
    for (int n = 0; n < 1000; ++n) {
      sac::LabelVector p(kClasses), t(kClasses);
      for (std::size_t i = 0; i < kClasses; ++i) {
        p[i] = rng.Uniform() < 0.1;
        t[i] = rng.Uniform() < 0.1;
      }
      counts.Accumulate(p, t);
      pairs.emplace_back(p, t);
    }
    const auto oracle = test::NaiveMetrics(pairs, kClasses);
    CHECK(counts.tp == oracle.tp);
    CHECK(counts.fp == oracle.fp);
    CHECK(counts.fn == oracle.fn);
    const auto macro = sac::MacroScores(counts);
    const auto micro = sac::MicroScores(counts);
    CHECK(std::abs(macro.precision - oracle.macro_p) <= 1e-12);
    CHECK(std::abs(macro.recall - oracle.macro_r) <= 1e-12);
    CHECK(std::abs(macro.f1 - oracle.macro_f1) <= 1e-12);
    CHECK(std::abs(micro.precision - oracle.micro_p) <= 1e-12);
    CHECK(std::abs(micro.recall - oracle.micro_r) <= 1e-12);
    CHECK(std::abs(micro.f1 - oracle.micro_f1) <= 1e-12);
  }
}

TEST_CASE("merge is independent of sharding and order") {
  constexpr std::size_t kClasses = 7;
  sac::Rng rng(9);
  std::vector<std::pair<sac::LabelVector, sac::LabelVector>> pairs;
  for (int n = 0; n < 300; ++n) {
    sac::LabelVector p(kClasses), t(kClasses);
    for (std::size_t i = 0; i < kClasses; ++i) {
      p[i] = rng.Index(2);
      t[i] = rng.Index(2);
    }
    pairs.emplace_back(p, t);
  }
  sac::ConfusionCounts whole(kClasses);
  for (const auto& [p, t] : pairs) whole.Accumulate(p, t);

  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t shards = 1 + rng.Index(8);
    std::vector<sac::ConfusionCounts> parts(shards, sac::ConfusionCounts(kClasses));
    for (const auto& [p, t] : pairs) parts[rng.Index(shards)].Accumulate(p, t);
    rng.Shuffle(std::span<sac::ConfusionCounts>(parts));
    sac::ConfusionCounts merged(kClasses);
    for (const auto& part : parts) merged.Merge(part);
    CHECK(merged == whole);
  }
}

TEST_CASE("report bundles every view") {
  const auto report = sac::BuildReport(TwoClassFixture());
  REQUIRE(report.per_class.size() == 2);
  CHECK(report.per_class[0].precision == 0.5);
  CHECK(report.per_class[0].recall == 1.0);
  CHECK(report.per_class[1].precision == 1.0);
  CHECK(report.per_class[1].recall == 0.5);
  CHECK(report.macro.f1 == 0.75);
  CHECK(report.micro.f1 == doctest::Approx(2.0 / 3.0));
}
