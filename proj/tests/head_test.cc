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

#include <cmath>
#include <numeric>
#include <vector>

#include "sac/error.h"
#include "sac/head.h"
#include "sac/random.h"

namespace {

using sac::Matrix;

Matrix<double> RandomMatrix(std::size_t r, std::size_t c, sac::Rng& rng,
                            double scale = 1.0) {
  Matrix<double> m(r, c);
  for (double& v : m.flat()) v = rng.Uniform(-scale, scale);
  return m;
}

sac::HeadParams<double> RandomHead(std::size_t c, std::size_t h,
                                   sac::Rng& rng) {
  return {RandomMatrix(c, h, rng), RandomMatrix(c, h, rng),
          RandomMatrix(1, c, rng)};
}

sac::LabelVector RandomTargets(std::size_t c, sac::Rng& rng) {
  sac::LabelVector y(c);
  for (auto& b : y) b = rng.Index(2);
  return y;
}

double Loss(const Matrix<double>& doc, const sac::HeadParams<double>& p,
            const sac::LabelVector& y, sac::AttentionMode mode) {
  sac::HeadCache<double> cache;
  sac::HeadForward(doc, p, mode, &cache);
  return sac::BceLoss<double>(cache.logits, y);
}

struct FdResult {
  double params = 0;
  double doc = 0;
};

FdResult HeadFdError(std::size_t h, std::size_t k, std::size_t c,
                     std::uint64_t seed, sac::AttentionMode mode) {
  sac::Rng rng(seed);
  auto doc = RandomMatrix(k, h, rng);
  auto p = RandomHead(c, h, rng);
  const auto y = RandomTargets(c, rng);

  sac::HeadCache<double> cache;
  sac::HeadForward(doc, p, mode, &cache);
  auto grads = sac::HeadParams<double>::Zeros(c, h);
  const auto grad_doc = sac::HeadBackward(cache, p, y, 1.0, &grads);

  const double eps = 1e-5;
  auto fd = [&](double& v) {
    const double saved = v;
    v = saved + eps;
    const double up = Loss(doc, p, y, mode);
    v = saved - eps;
    const double down = Loss(doc, p, y, mode);
    v = saved;
    return (up - down) / (2 * eps);
  };
  auto rel = [](double a, double n) {
    return std::abs(a - n) / std::max(1.0, std::abs(n));
  };
  FdResult out;
  std::vector<Matrix<double>*> ps, gs;
  p.ForEachTensor([&](const char*, Matrix<double>& m) { ps.push_back(&m); });
  grads.ForEachTensor([&](const char*, Matrix<double>& m) { gs.push_back(&m); });
  for (std::size_t t = 0; t < ps.size(); ++t) {
    for (std::size_t i = 0; i < ps[t]->size(); ++i) {
      out.params = std::max(out.params, rel(gs[t]->flat()[i], fd(ps[t]->flat()[i])));
    }
  }
  for (std::size_t i = 0; i < doc.size(); ++i) {
    out.doc = std::max(out.doc, rel(grad_doc.flat()[i], fd(doc.flat()[i])));
  }
  return out;
}

}  // namespace

TEST_CASE("single sentence gets all the attention") {
  sac::Rng rng(1);
  const auto doc = RandomMatrix(1, 4, rng);
  const auto s = RandomMatrix(3, 4, rng);
  const auto alpha = sac::AttentionForward(doc, s);
  for (std::size_t i = 0; i < 3; ++i) CHECK(alpha(i, 0) == 1.0);
}

TEST_CASE("zero attention matrix gives uniform weights") {
  sac::Rng rng(2);
  const auto doc = RandomMatrix(5, 3, rng);
  const auto alpha = sac::AttentionForward(doc, Matrix<double>(2, 3));
  for (double a : alpha.flat()) CHECK(a == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("scalar softmax oracle") {
  Matrix<double> doc(2, 1);
  doc(0, 0) = 0.0;
  doc(1, 0) = 10.0;
  const Matrix<double> s(1, 1, 1.0);
  Matrix<double> squashed;
  const auto alpha = sac::AttentionForward(doc, s, &squashed);
  CHECK(squashed(0, 0) == 0.0);
  CHECK(squashed(0, 1) == doctest::Approx(std::tanh(10.0)).epsilon(1e-15));
  CHECK(alpha(0, 0) == doctest::Approx(0.26894142218048994).epsilon(1e-8));
  CHECK(alpha(0, 1) == doctest::Approx(0.73105857781951006).epsilon(1e-8));
}

TEST_CASE("attention shape mismatch") {
  CHECK_THROWS_AS(sac::AttentionForward(Matrix<double>(2, 3), Matrix<double>(1, 4)),
                  sac::Error);
}

TEST_CASE("pool_labels") {
  sac::Rng rng(3);
  const auto doc1 = RandomMatrix(1, 3, rng);
  const auto l1 = sac::PoolLabels(Matrix<double>(2, 1, 1.0), doc1);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t c = 0; c < 3; ++c) CHECK(l1(i, c) == doc1(0, c));
  }

  const auto doc = RandomMatrix(4, 3, rng);
  const auto mean = sac::PoolLabels(Matrix<double>(1, 4, 0.25), doc);
  for (std::size_t c = 0; c < 3; ++c) {
    const double expect = (doc(0, c) + doc(1, c) + doc(2, c) + doc(3, c)) / 4;
    CHECK(mean(0, c) == doctest::Approx(expect).epsilon(1e-15));
  }

  Matrix<double> alpha(1, 2);
  alpha(0, 0) = 0.25;
  alpha(0, 1) = 0.75;
  Matrix<double> eye(2, 2);
  eye(0, 0) = eye(1, 1) = 1.0;
  const auto l = sac::PoolLabels(alpha, eye);
  CHECK(l(0, 0) == 0.25);
  CHECK(l(0, 1) == 0.75);
}

TEST_CASE("score examples") {
  sac::Rng rng(4);
  const auto pooled = RandomMatrix(3, 2, rng);
  for (double v : sac::ScoreLabels(pooled, Matrix<double>(3, 2), Matrix<double>(1, 3))) {
    CHECK(v == 0.5);
  }
  const auto high = sac::ScoreLabels(pooled, Matrix<double>(3, 2), Matrix<double>(1, 3, 10.0));
  CHECK(high[0] == doctest::Approx(0.9999546021312976).epsilon(1e-15));

  Matrix<double> one(1, 1, 1.0);
  Matrix<double> w(1, 1, -std::log(3.0));
  std::vector<double> logits;
  const auto quarter = sac::ScoreLabels(one, w, Matrix<double>(1, 1), &logits);
  CHECK(quarter[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(logits[0] == -std::log(3.0));
}

TEST_CASE("sigmoid extremes stay finite") {
  CHECK(sac::Sigmoid(800.0) == 1.0);
  CHECK(sac::Sigmoid(-800.0) == doctest::Approx(0.0));
  CHECK(std::isfinite(sac::Sigmoid(-800.0f)));
}

TEST_CASE("predict uses a strict threshold") {
  CHECK(sac::Predict<double>(std::vector{0.5}) == sac::LabelVector{0});
  CHECK(sac::Predict<double>(std::vector{0.51, 0.49}) == sac::LabelVector{1, 0});
  CHECK(sac::Predict<double>(std::vector{0.9, 0.9, 0.9}) == sac::LabelVector{1, 1, 1});
  CHECK(sac::Predict<double>(std::vector{0.6, 0.8}, 0.7) == sac::LabelVector{0, 1});
}

TEST_CASE("bce examples") {
  CHECK(sac::BceLoss<double>(std::vector{0.0, 0.0, 0.0}, {1, 0, 1}) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-15));
  // scores [0.25, 0.75] are logits [-ln 3, ln 3]
  CHECK(sac::BceLoss<double>(std::vector{-std::log(3.0), std::log(3.0)}, {1, 0}) ==
        doctest::Approx(1.3862943611198906).epsilon(1e-14));
  const double perfect = sac::BceLoss<double>(std::vector{40.0, -40.0}, {1, 0});
  CHECK(perfect >= 0.0);
  CHECK(perfect < 1e-15);
  CHECK(std::isfinite(sac::BceLoss<float>(std::vector{-500.0f}, {1})));
}

TEST_CASE("attention rows are stochastic and bounded") {
  sac::Rng rng(5);
  const double cap = std::exp(2.0) + 1e-6;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 1 + rng.Index(30);
    const std::size_t h = 1 + rng.Index(8);
    const auto doc = RandomMatrix(k, h, rng, 3.0);
    const auto s = RandomMatrix(4, h, rng, 3.0);
    const auto alpha = sac::AttentionForward(doc, s);
    for (std::size_t i = 0; i < 4; ++i) {
      auto row = alpha.row(i);
      CHECK(std::abs(std::accumulate(row.begin(), row.end(), 0.0) - 1.0) < 1e-12);
      CHECK(*std::max_element(row.begin(), row.end()) /
                *std::min_element(row.begin(), row.end()) <= cap);
    }
  }
}

TEST_CASE("k = 1 collapses to scoring the single sentence") {
  sac::Rng rng(6);
  const auto doc = RandomMatrix(1, 5, rng);
  const auto p = RandomHead(3, 5, rng);
  Matrix<double> repeated(3, 5);
  for (std::size_t i = 0; i < 3; ++i) {
    std::copy(doc.row(0).begin(), doc.row(0).end(), repeated.row(i).begin());
  }
  const auto expect = sac::ScoreLabels(repeated, p.weights, p.bias);
  const auto got = sac::HeadForward(doc, p);
  for (std::size_t i = 0; i < 3; ++i) CHECK(got[i] == expect[i]);
}

TEST_CASE("uniform mode ignores the attention matrix") {
  sac::Rng rng(7);
  const auto doc = RandomMatrix(6, 3, rng);
  auto p = RandomHead(2, 3, rng);
  const auto a = sac::HeadForward(doc, p, sac::AttentionMode::kUniform);
  p.attention = RandomMatrix(2, 3, rng);
  CHECK(sac::HeadForward(doc, p, sac::AttentionMode::kUniform) == a);

  sac::HeadCache<double> cache;
  sac::HeadForward(doc, p, sac::AttentionMode::kUniform, &cache);
  auto grads = sac::HeadParams<double>::Zeros(2, 3);
  sac::HeadBackward(cache, p, {1, 0}, 1.0, &grads);
  for (double g : grads.attention.flat()) CHECK(g == 0.0);
}

TEST_CASE("head gradients match finite differences") {
  const auto fixed = HeadFdError(3, 4, 2, 11, sac::AttentionMode::kLearned);
  CHECK(fixed.params < 1e-4);
  CHECK(fixed.doc < 1e-4);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CAPTURE(seed);
    for (auto mode : {sac::AttentionMode::kLearned, sac::AttentionMode::kUniform}) {
      const auto r = HeadFdError(1 + seed % 5, 1 + seed % 4, 1 + seed % 3, seed, mode);
      CHECK(r.params < 1e-4);
      CHECK(r.doc < 1e-4);
    }
  }
}

TEST_CASE("bias gradient closed form at W = 0") {
  sac::Rng rng(12);
  const auto doc = RandomMatrix(3, 4, rng);
  auto p = RandomHead(5, 4, rng);
  p.weights.SetZero();
  const sac::LabelVector y = {1, 0, 0, 1, 1};
  sac::HeadCache<double> cache;
  sac::HeadForward(doc, p, sac::AttentionMode::kLearned, &cache);
  auto grads = sac::HeadParams<double>::Zeros(5, 4);
  const auto grad_doc = sac::HeadBackward(cache, p, y, 1.0, &grads);
  for (std::size_t i = 0; i < 5; ++i) {
    const double expect = (sac::Sigmoid(p.bias(0, i)) - y[i]) / 5.0;
    CHECK(grads.bias(0, i) == doctest::Approx(expect).epsilon(1e-14));
  }
  // Nothing upstream of W can matter when W is zero.
  for (double g : grads.attention.flat()) CHECK(g == 0.0);
  for (double g : grad_doc.flat()) CHECK(g == 0.0);
}

TEST_CASE("gradients vanish at a perfect fit") {
  sac::Rng rng(13);
  const auto doc = RandomMatrix(3, 2, rng);
  sac::HeadParams<double> p{RandomMatrix(2, 2, rng), Matrix<double>(2, 2),
                            Matrix<double>(1, 2)};
  p.bias(0, 0) = 60.0;
  p.bias(0, 1) = -60.0;
  sac::HeadCache<double> cache;
  sac::HeadForward(doc, p, sac::AttentionMode::kLearned, &cache);
  auto grads = sac::HeadParams<double>::Zeros(2, 2);
  sac::HeadBackward(cache, p, {1, 0}, 1.0, &grads);
  grads.ForEachTensor([](const char*, const Matrix<double>& m) {
    for (double g : m.flat()) CHECK(std::abs(g) < 1e-20);
  });
}

TEST_CASE("scaling W and b by a positive factor keeps predictions") {
  sac::Rng rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const auto doc = RandomMatrix(1 + rng.Index(6), 4, rng);
    auto p = RandomHead(6, 4, rng);
    sac::HeadCache<double> cache;
    sac::HeadForward(doc, p, sac::AttentionMode::kLearned, &cache);
    const auto before = sac::Predict<double>(cache.scores);
    const double lambda = rng.Uniform(0.01, 50.0);
    for (double& v : p.weights.flat()) v *= lambda;
    for (double& v : p.bias.flat()) v *= lambda;
    const auto after = sac::Predict<double>(sac::HeadForward(doc, p));
    for (std::size_t i = 0; i < 6; ++i) {
      if (cache.logits[i] != 0.0) CHECK(after[i] == before[i]);
    }
  }
}

TEST_CASE("backward scale is linear") {
  sac::Rng rng(15);
  const auto doc = RandomMatrix(4, 3, rng);
  const auto p = RandomHead(2, 3, rng);
  sac::HeadCache<double> cache;
  sac::HeadForward(doc, p, sac::AttentionMode::kLearned, &cache);
  auto g1 = sac::HeadParams<double>::Zeros(2, 3);
  auto g2 = sac::HeadParams<double>::Zeros(2, 3);
  const auto d1 = sac::HeadBackward(cache, p, {0, 1}, 1.0, &g1);
  const auto d2 = sac::HeadBackward(cache, p, {0, 1}, 0.25, &g2);
  for (std::size_t i = 0; i < d1.size(); ++i) {
    CHECK(d2.flat()[i] == doctest::Approx(0.25 * d1.flat()[i]).epsilon(1e-14));
  }
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(g2.bias(0, i) == doctest::Approx(0.25 * g1.bias(0, i)).epsilon(1e-14));
  }
}
