// tests/unit/nn_test.cc

// Copyright 2026  The orna Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "doctest.h"
#include "orna/nn/adam.h"
#include "orna/nn/kernels.h"
#include "support/gradcheck.h"
#include "support/nn_props.h"
#include "support/oracles.h"

using namespace orna;
using namespace orna::nn;

namespace {

using Md = Tensor2<double>;

Md rows_of(std::initializer_list<double> v) {
  Md m(static_cast<Eigen::Index>(v.size()), 1);
  Eigen::Index i = 0;
  for (double x : v) m(i++, 0) = x;
  return m;
}

Md row(std::initializer_list<double> v) { return rows_of(v).transpose(); }

}  // namespace

TEST_CASE("periodic padding examples") {
  const Md x = rows_of({0, 1, 2, 3});
  CHECK(periodic_pad(x, 1) == rows_of({3, 0, 1, 2, 3, 0}));
  CHECK(periodic_pad(x, 0) == x);
  CHECK(periodic_pad(x, 2) == rows_of({2, 3, 0, 1, 2, 3, 0, 1}));
  CHECK_THROWS_AS(periodic_pad(x, 4), Error);
}

TEST_CASE("periodic padding property and gradient mass") {
  CHECK(testing::periodic_pad_breach(16) == "");
  Rng rng(1);
  const Md dy = testing::random_matrix(&rng, 10, 3);
  const Md dx = periodic_pad_backward<double>(dy, 3);
  CHECK(dx.rows() == 4);
  CHECK(std::abs(dx.sum() - dy.sum()) < 1e-12);
  CHECK(dx(0, 0) == doctest::Approx(dy(3, 0) + dy(7, 0)));
}

TEST_CASE("dilated convolution examples") {
  SUBCASE("impulse with three-tap ones kernel at r=2") {
    ConvParams<double> p(1, 1, 3, 2);
    p.weight.setOnes();
    Md x = Md::Zero(1, 11);
    x(0, 5) = 1;
    const Md y = dilated_conv1d(x, p);
    for (int t = 0; t < 11; ++t) CHECK((y(0, t) != 0) == (t == 3 || t == 5 || t == 7));
  }
  SUBCASE("centred identity kernel") {
    ConvParams<double> p(2, 2, 5, 3);
    p.w(0, 0, 2) = 1;
    p.w(1, 1, 2) = 1;
    Rng rng(2);
    const Md x = testing::random_matrix(&rng, 2, 9);
    CHECK(dilated_conv1d(x, p) == x);
  }
  SUBCASE("brute force oracle") {
    Rng rng(3);
    for (int r = 1; r <= 4; ++r) {
      ConvParams<double> p(3, 2, 3, r);
      std::vector<std::vector<std::vector<double>>> w(3, std::vector<std::vector<double>>(2, std::vector<double>(3)));
      std::vector<double> b(3);
      for (int f = 0; f < 3; ++f) {
        b[f] = p.bias(f, 0) = rng.uniform(-1, 1);
        for (int c = 0; c < 2; ++c)
          for (int j = 0; j < 3; ++j) w[f][c][j] = p.w(f, c, j) = rng.uniform(-1, 1);
      }
      const Md x = testing::random_matrix(&rng, 2, 8);
      CHECK((dilated_conv1d(x, p) - testing::brute_conv(x, w, b, r)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SUBCASE("impulse offsets for r in 1..4") { CHECK(testing::dilation_impulse_breach(4) == ""); }
  CHECK_THROWS_AS(ConvParams<double>(1, 1, 4, 1), Error);
  CHECK_THROWS_AS(ConvParams<double>(1, 1, 3, 0), Error);
}

TEST_CASE("pool and upsample") {
  CHECK(temporal_maxpool(row({1, 3, 2, 0})) == row({3, 2}));
  CHECK(temporal_upsample(row({3, 2})) == row({3, 3, 2, 2}));
  const Md c = Md::Constant(2, 8, 1.5);
  CHECK(temporal_upsample(temporal_maxpool(c)) == c);
  CHECK(temporal_upsample(temporal_maxpool(temporal_upsample(temporal_maxpool(c)))) == c);
  CHECK_THROWS_AS(temporal_maxpool(row({1, 2, 3})), Error);
}

TEST_CASE("softmax") {
  const Md p = softmax_frames<double>(Md::Zero(7, 3));
  CHECK((p.array() - 1.0 / 7).abs().maxCoeff() < 1e-15);
  Md z = Md::Zero(7, 1);
  z(0, 0) = 1000;
  const Md q = softmax_frames(z);
  CHECK(q.allFinite());
  CHECK(q(0, 0) == doctest::Approx(1.0));
  CHECK(q(1, 0) < 1e-300);
  Rng rng(4);
  const Md r = testing::random_matrix(&rng, 3, 4, -5, 5);
  const Md s = softmax_frames(r);
  for (int t = 0; t < 4; ++t) {
    const double denom = r.col(t).array().exp().sum();
    for (int i = 0; i < 3; ++i) CHECK(std::abs(s(i, t) - std::exp(r(i, t)) / denom) < 1e-12);
    CHECK(std::abs(s.col(t).sum() - 1) < 1e-6);
  }
}

TEST_CASE("adam") {
  SUBCASE("zero gradient") {
    Md v = Md::Constant(2, 2, 0.5), g = Md::Zero(2, 2);
    std::vector<ParamRef<double>> refs = {{"p", &v, &g}};
    AdamState<double> st;
    adam_step<double>(refs, &st);
    CHECK(v == Md::Constant(2, 2, 0.5));
    CHECK(st.step == 1);
  }
  SUBCASE("first step is about minus alpha times the sign") {
    Md v = Md::Zero(1, 3), g = row({0.3, -2.0, 5.0});
    std::vector<ParamRef<double>> refs = {{"p", &v, &g}};
    AdamState<double> st;
    adam_step<double>(refs, &st);
    for (int i = 0; i < 3; ++i) {
      const double expected = -1e-3 * g(0, i) / (std::abs(g(0, i)) + 1e-8);
      CHECK(v(0, i) == doctest::Approx(expected).epsilon(1e-9));
    }
  }
  SUBCASE("quadratic bowl") {
    Md v = Md::Constant(1, 1, 1.0), g(1, 1);
    std::vector<ParamRef<double>> refs = {{"theta", &v, &g}};
    AdamState<double> st;
    st.config.learning_rate = 0.1;
    for (int i = 0; i < 100; ++i) {
      g(0, 0) = 2 * v(0, 0);
      adam_step<double>(refs, &st);
    }
    CHECK(std::abs(v(0, 0)) < 0.05);
  }
  SUBCASE("non-finite gradient leaves parameters alone") {
    Md v = Md::Constant(1, 2, 1.0), g = row({1.0, NAN});
    std::vector<ParamRef<double>> refs = {{"bad", &v, &g}};
    AdamState<double> st;
    CHECK_THROWS_AS(adam_step<double>(refs, &st), Error);
    CHECK(v == Md::Constant(1, 2, 1.0));
  }
}

TEST_CASE("spatial dropout") {
  Rng rng(5);
  const Md x = testing::random_matrix(&rng, 6, 4);
  CHECK(spatial_dropout(x, 0.3, Mode::kEval, &rng) == x);
  CHECK(spatial_dropout(x, 0.0, Mode::kTrain, &rng) == x);
  const Md big = Md::Ones(100000, 1);
  const Md y = spatial_dropout(big, 0.3, Mode::kTrain, &rng);
  const double zeroed = (y.array() == 0).cast<double>().mean();
  CHECK(zeroed > 0.29);
  CHECK(zeroed < 0.31);
  CHECK(((y.array() == 0) || ((y.array() - 1 / 0.7).abs() < 1e-12)).all());
  Rng a(9), b(9);
  CHECK(spatial_dropout(x, 0.5, Mode::kTrain, &a) == spatial_dropout(x, 0.5, Mode::kTrain, &b));
  CHECK_THROWS_AS(spatial_dropout(x, 1.0, Mode::kTrain, &rng), Error);
}

TEST_CASE("kernel gradients match finite differences") {
  for (std::uint64_t seed : {1u, 2u, 3u})
    for (const auto &r : testing::kernel_gradient_suite(seed)) {
      INFO(r.name << " seed " << seed);
      CHECK(r.rel_error < 1e-4);
    }
}

TEST_CASE("rng streams") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(1);
  bool seen_hi = false, seen_lo = false;
  for (int i = 0; i < 1000; ++i) {
    const auto v = c.below(10);
    CHECK(v < 10);
    seen_hi |= v == 9;
    seen_lo |= v == 0;
  }
  CHECK(seen_hi);
  CHECK(seen_lo);
  double sum = 0, sq = 0;
  for (int i = 0; i < 20000; ++i) {
    const double z = c.normal();
    sum += z;
    sq += z * z;
  }
  CHECK(std::abs(sum / 20000) < 0.03);
  CHECK(std::abs(sq / 20000 - 1) < 0.05);
}
