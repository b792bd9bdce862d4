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

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include <boost/rational.hpp>

namespace multinv {

using Rational = boost::rational<std::int64_t>;

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("DyadicOmega: coefficient overflow");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("DyadicOmega: coefficient overflow");
  return r;
}

}  // namespace detail

/// Exact value (a + b w + c w^2 + d w^3) * 2^{-k/2} with w = e^{i pi/4}.
///
/// Kept in reduced form: zero is (0,0,0,0; 0), and otherwise k is lowered
/// while k > 0 and the coefficient vector is divisible by sqrt(2) = w - w^3.
/// Reduced representations are unique, so == compares values exactly.
class DyadicOmega {
 public:
  using Coeffs = std::array<std::int64_t, 4>;

  DyadicOmega() = default;
  DyadicOmega(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t k = 0)
      : c_{a, b, c, d}, k_(k) {
    reduce();
  }

  static DyadicOmega zero() { return {}; }
  static DyadicOmega one() { return {1, 0, 0, 0}; }
  static DyadicOmega i() { return {0, 0, 1, 0}; }
  static DyadicOmega inv_sqrt2() { return {1, 0, 0, 0, 1}; }
  static DyadicOmega sqrt2() { return {0, 1, 0, -1}; }
  /// w^e for any integer e.
  static DyadicOmega omega_power(std::int64_t e) {
    e = ((e % 8) + 8) % 8;
    Coeffs c{0, 0, 0, 0};
    c[e % 4] = e >= 4 ? -1 : 1;
    return {c[0], c[1], c[2], c[3]};
  }

  const Coeffs& coeffs() const { return c_; }
  std::int64_t k() const { return k_; }
  bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

  DyadicOmega operator*(const DyadicOmega& o) const {
    // w^4 = -1.
    Coeffs r{0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        std::int64_t term = detail::checked_mul(c_[i], o.c_[j]);
        int p = i + j;
        if (p >= 4) {
          p -= 4;
          term = -term;
        }
        r[p] = detail::checked_add(r[p], term);
      }
    }
    return {r[0], r[1], r[2], r[3], detail::checked_add(k_, o.k_)};
  }

  DyadicOmega operator+(const DyadicOmega& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    Coeffs a = c_, b = o.c_;
    std::int64_t ka = k_, kb = o.k_;
    while (ka < kb) {
      a = times_sqrt2(a);
      ++ka;
    }
    while (kb < ka) {
      b = times_sqrt2(b);
      ++kb;
    }
    return {detail::checked_add(a[0], b[0]), detail::checked_add(a[1], b[1]), detail::checked_add(a[2], b[2]),
            detail::checked_add(a[3], b[3]), ka};
  }

  DyadicOmega operator-() const { return {-c_[0], -c_[1], -c_[2], -c_[3], k_}; }
  DyadicOmega operator-(const DyadicOmega& o) const { return *this + (-o); }
  DyadicOmega& operator*=(const DyadicOmega& o) { return *this = *this * o; }
  DyadicOmega& operator+=(const DyadicOmega& o) { return *this = *this + o; }

  bool operator==(const DyadicOmega& o) const { return c_ == o.c_ && k_ == o.k_; }
  bool operator!=(const DyadicOmega& o) const { return !(*this == o); }

  /// Complex conjugate: w -> w^7 = -w^3.
  DyadicOmega conj() const { return {c_[0], -c_[3], -c_[2], -c_[1], k_}; }

  std::complex<double> to_complex() const {
    const double r = std::sqrt(0.5);
    std::complex<double> w(r, r);
    std::complex<double> v = double(c_[0]) + double(c_[1]) * w + double(c_[2]) * std::complex<double>(0, 1) +
                             double(c_[3]) * std::complex<double>(-r, r);
    return v * std::pow(2.0, -0.5 * double(k_));
  }

  /// Imaginary part vanishes exactly.
  bool is_real() const { return c_[2] == 0 && c_[1] == -c_[3]; }

  /// Exact test for a strictly positive real value.
  bool is_positive_real() const {
    if (!is_real() || is_zero()) return false;
    // value ~ a + (b - d)/sqrt2
    const std::int64_t a = c_[0], t = c_[1] - c_[3];
    if (a >= 0 && t >= 0) return true;
    if (a <= 0 && t <= 0) return false;
    // Opposite signs: compare 2a^2 with t^2.
    std::int64_t aa = detail::checked_mul(2, detail::checked_mul(a, a)), tt = detail::checked_mul(t, t);
    return a > 0 ? aa > tt : tt > aa;
  }

  /// log2 |value| when |value| is an integer or half-integer power of sqrt2
  /// (as for every engine output), otherwise nullopt. Zero also gives nullopt.
  std::optional<Rational> magnitude_log2() const {
    if (is_zero()) return std::nullopt;
    // |x|^2 * 2^k = p + q sqrt2.
    DyadicOmega n = DyadicOmega(c_[0], c_[1], c_[2], c_[3], 0);
    DyadicOmega sq = n * n.conj();
    // Undo reduction: sq = (p + q sqrt2) 2^{-k'/2}; bring back to k' = 0 form when possible.
    Coeffs s = sq.c_;
    std::int64_t kk = sq.k_;
    // Real element p + q(w - w^3): s = (p, q, 0, -q).
    if (s[2] != 0 || s[1] != -s[3]) return std::nullopt;
    std::int64_t p = s[0], q = s[1];
    // value^2 = (p + q sqrt2) * 2^{-kk/2} * 2^{-k}
    auto log2_exact = [](std::int64_t v) -> std::optional<std::int64_t> {
      if (v <= 0 || (v & (v - 1)) != 0) return std::nullopt;
      std::int64_t l = 0;
      while ((std::int64_t{1} << l) < v) ++l;
      return l;
    };
    Rational half_logs;  // log2 of |value|^2
    if (q == 0) {
      auto l = log2_exact(p);
      if (!l) return std::nullopt;
      half_logs = Rational(*l);
    } else if (p == 0) {
      auto l = log2_exact(q);
      if (!l) return std::nullopt;
      half_logs = Rational(*l) + Rational(1, 2);
    } else {
      return std::nullopt;
    }
    half_logs -= Rational(kk, 2);
    half_logs -= Rational(k_);
    return half_logs / Rational(2);
  }

  std::string to_string() const {
    return "(" + std::to_string(c_[0]) + "," + std::to_string(c_[1]) + "," + std::to_string(c_[2]) + "," +
           std::to_string(c_[3]) + ";" + std::to_string(k_) + ")";
  }

 private:
  static Coeffs times_sqrt2(const Coeffs& x) {
    // x * (w - w^3)
    Coeffs r{0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
      int p1 = i + 1, p3 = i + 3;
      std::int64_t t1 = x[i], t3 = -x[i];
      if (p1 >= 4) {
        p1 -= 4;
        t1 = -t1;
      }
      if (p3 >= 4) {
        p3 -= 4;
        t3 = -t3;
      }
      r[p1] = detail::checked_add(r[p1], t1);
      r[p3] = detail::checked_add(r[p3], t3);
    }
    return r;
  }

  void reduce() {
    if (is_zero()) {
      k_ = 0;
      return;
    }
    while (k_ > 0) {
      Coeffs t = times_sqrt2(c_);
      if ((t[0] | t[1] | t[2] | t[3]) & 1) break;
      for (auto& v : t) v /= 2;
      c_ = t;
      --k_;
    }
  }

  Coeffs c_{0, 0, 0, 0};
  std::int64_t k_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const DyadicOmega& v) { return os << v.to_string(); }

/// 2x2 matrix over DyadicOmega, row-major.
struct Mat2 {
  std::array<DyadicOmega, 4> m{DyadicOmega::one(), DyadicOmega::zero(), DyadicOmega::zero(), DyadicOmega::one()};

  static Mat2 identity() { return {}; }
  const DyadicOmega& operator()(int r, int c) const { return m[2 * r + c]; }

  Mat2 operator*(const Mat2& o) const {
    Mat2 out;
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) out.m[2 * r + c] = m[2 * r] * o.m[c] + m[2 * r + 1] * o.m[2 + c];
    }
    return out;
  }
  Mat2 adjoint() const {
    Mat2 out;
    out.m = {m[0].conj(), m[2].conj(), m[1].conj(), m[3].conj()};
    return out;
  }
  bool operator==(const Mat2& o) const { return m == o.m; }
};

/// Column vector over DyadicOmega.
using Vec2 = std::array<DyadicOmega, 2>;

inline Vec2 operator*(const Mat2& a, const Vec2& v) {
  return {a(0, 0) * v[0] + a(0, 1) * v[1], a(1, 0) * v[0] + a(1, 1) * v[1]};
}

/// <u|v> (conjugate-linear in u).
inline DyadicOmega inner(const Vec2& u, const Vec2& v) { return u[0].conj() * v[0] + u[1].conj() * v[1]; }

inline Mat2 outer(const Vec2& u, const Vec2& v) {
  Mat2 out;
  out.m = {u[0] * v[0].conj(), u[0] * v[1].conj(), u[1] * v[0].conj(), u[1] * v[1].conj()};
  return out;
}

}  // namespace multinv
