// Copyright 2026 The multinv Authors
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

#include <gtest/gtest.h>

#include <random>

#include "multinv/dyadic.hpp"

namespace multinv {
namespace {

DyadicOmega random_dyadic(std::mt19937_64& rng) {
  auto c = [&] { return static_cast<std::int64_t>(rng() % 9) - 4; };
  return {c(), c(), c(), c(), static_cast<std::int64_t>(rng() % 7)};
}

TEST(Dyadic, RingIdentities) {
  const DyadicOmega w = DyadicOmega::omega_power(1);
  EXPECT_EQ(w * w * w * w, -DyadicOmega::one());
  EXPECT_EQ(DyadicOmega::sqrt2() * DyadicOmega::sqrt2(), DyadicOmega(2, 0, 0, 0));
  EXPECT_EQ(DyadicOmega::inv_sqrt2() * DyadicOmega::sqrt2(), DyadicOmega::one());
  EXPECT_EQ(DyadicOmega::inv_sqrt2() * DyadicOmega::inv_sqrt2(), DyadicOmega(1, 0, 0, 0, 2));
  EXPECT_EQ(DyadicOmega::i() * DyadicOmega::i(), -DyadicOmega::one());
  EXPECT_EQ(DyadicOmega::omega_power(-1), w.conj());
  EXPECT_EQ(DyadicOmega::omega_power(9), w);
}

TEST(Dyadic, ReductionIsCanonical) {
  // 2/2 = 1 and (sqrt2)/(sqrt2) = 1.
  EXPECT_EQ(DyadicOmega(2, 0, 0, 0, 2), DyadicOmega::one());
  EXPECT_EQ(DyadicOmega(0, 1, 0, -1, 1), DyadicOmega::one());
  EXPECT_EQ(DyadicOmega(0, 0, 0, 0, 5).k(), 0);
  // (1 + i)/sqrt2 = w.
  EXPECT_EQ(DyadicOmega(1, 0, 1, 0, 1), DyadicOmega::omega_power(1));
}

TEST(Dyadic, MatchesComplexArithmetic) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 2000; ++trial) {
    DyadicOmega a = random_dyadic(rng), b = random_dyadic(rng);
    EXPECT_LT(std::abs((a * b).to_complex() - a.to_complex() * b.to_complex()), 1e-9);
    EXPECT_LT(std::abs((a + b).to_complex() - (a.to_complex() + b.to_complex())), 1e-9);
    EXPECT_LT(std::abs(a.conj().to_complex() - std::conj(a.to_complex())), 1e-9);
    // Equality is exact: a + b - b == a.
    EXPECT_EQ(a + b - b, a);
    EXPECT_EQ((a + b) * a, a * a + b * a);
    auto ac = a.to_complex();
    if (a.is_real()) EXPECT_NEAR(ac.imag(), 0, 1e-12);
    if (a.is_positive_real()) EXPECT_GT(ac.real(), 0);
    if (a.is_real() && !a.is_zero() && !a.is_positive_real()) EXPECT_LT(ac.real(), 0);
  }
}

TEST(Dyadic, MagnitudeLog2) {
  EXPECT_EQ(*DyadicOmega::one().magnitude_log2(), Rational(0));
  EXPECT_EQ(*DyadicOmega::inv_sqrt2().magnitude_log2(), Rational(-1, 2));
  EXPECT_EQ(*(DyadicOmega::omega_power(3) * DyadicOmega(1, 0, 0, 0, 7)).magnitude_log2(), Rational(-7, 2));
  EXPECT_EQ(*DyadicOmega(4, 0, 0, 0).magnitude_log2(), Rational(2));
  EXPECT_FALSE(DyadicOmega::zero().magnitude_log2().has_value());
  EXPECT_FALSE(DyadicOmega(1, 1, 0, 0).magnitude_log2().has_value());  // |1 + w|^2 = 2 + sqrt2
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 500; ++trial) {
    DyadicOmega v = DyadicOmega::omega_power(static_cast<std::int64_t>(rng() % 8)) *
                    DyadicOmega(1, 0, 0, 0, static_cast<std::int64_t>(rng() % 40));
    for (int j = 0; j < 3; ++j) v *= (rng() & 1) ? DyadicOmega::inv_sqrt2() : DyadicOmega::sqrt2();
    auto l = v.magnitude_log2();
    ASSERT_TRUE(l.has_value());
    EXPECT_NEAR(boost::rational_cast<double>(*l), std::log2(std::abs(v.to_complex())), 1e-9);
  }
}

TEST(Dyadic, Mat2) {
  Mat2 a;
  a.m = {DyadicOmega::inv_sqrt2(), DyadicOmega::inv_sqrt2(), DyadicOmega::inv_sqrt2(), -DyadicOmega::inv_sqrt2()};
  EXPECT_EQ(a * a, Mat2::identity());
  EXPECT_EQ(a.adjoint(), a);
}

}  // namespace
}  // namespace multinv
