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

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "multinv/gf2.hpp"

namespace multinv {

/// Signed Pauli string i^phase * P_0 (x) P_1 (x) ... with P_j = sigma(x_j, z_j),
/// where sigma(1,0) = X, sigma(0,1) = Z and sigma(1,1) = Y.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n) : x_(n), z_(n) {}
  PauliString(BitVector x, BitVector z, unsigned phase = 0)
      : x_(std::move(x)), z_(std::move(z)), phase_(phase & 3u) {
    if (x_.size() != z_.size()) throw std::invalid_argument("PauliString: x/z length mismatch");
  }

  /// Accepts an optional sign ("+", "-", "i", "-i", or U+2212) followed by
  /// characters from {I, X, Y, Z} (also '_' for identity).
  static PauliString parse(std::string_view text) {
    unsigned phase = 0;
    auto starts_with = [&](std::string_view p) { return text.substr(0, p.size()) == p; };
    if (starts_with("\xE2\x88\x92")) {  // unicode minus
      phase = 2;
      text.remove_prefix(3);
    } else if (starts_with("-")) {
      phase = 2;
      text.remove_prefix(1);
    } else if (starts_with("+")) {
      text.remove_prefix(1);
    }
    if (starts_with("i")) {
      phase += 1;
      text.remove_prefix(1);
    }
    PauliString p(text.size());
    p.phase_ = phase & 3u;
    for (std::size_t j = 0; j < text.size(); ++j) {
      switch (text[j]) {
        case 'I': case '_': break;
        case 'X': p.x_.set(j); break;
        case 'Z': p.z_.set(j); break;
        case 'Y': p.x_.set(j); p.z_.set(j); break;
        default:
          throw std::invalid_argument(std::string("unexpected Pauli character '") + text[j] + "'");
      }
    }
    return p;
  }

  std::size_t size() const { return x_.size(); }
  const BitVector& x() const { return x_; }
  const BitVector& z() const { return z_; }
  BitVector& x() { return x_; }
  BitVector& z() { return z_; }
  unsigned phase() const { return phase_; }
  void set_phase(unsigned p) { phase_ = p & 3u; }
  void add_phase(unsigned p) { phase_ = (phase_ + p) & 3u; }

  bool is_identity_up_to_phase() const { return x_.none() && z_.none(); }
  /// Hermitian strings carry phase 0 or 2.
  bool is_hermitian() const { return (phase_ & 1u) == 0; }
  bool negative() const { return phase_ == 2; }

  /// Symplectic inner product is zero.
  bool commutes(const PauliString& other) const {
    check_size(other);
    std::size_t count = 0;
    for (std::size_t w = 0; w < x_.word_count(); ++w) {
      count += static_cast<std::size_t>(std::popcount(x_.data()[w] & other.z_.data()[w]));
      count += static_cast<std::size_t>(std::popcount(z_.data()[w] & other.x_.data()[w]));
    }
    return (count & 1u) == 0;
  }

  /// this <- this * other, with the phase tracked exactly mod 4.
  PauliString& operator*=(const PauliString& other) {
    check_size(other);
    // sigma(x,z) = i^{xz} X^x Z^z, and Z^a X^b = (-1)^{a.b} X^b Z^a.
    std::uint64_t acc = phase_ + other.phase_;
    for (std::size_t w = 0; w < x_.word_count(); ++w) {
      const auto x1 = x_.data()[w], z1 = z_.data()[w];
      const auto x2 = other.x_.data()[w], z2 = other.z_.data()[w];
      acc += static_cast<std::uint64_t>(std::popcount(x1 & z1));
      acc += static_cast<std::uint64_t>(std::popcount(x2 & z2));
      acc += 2 * static_cast<std::uint64_t>(std::popcount(z1 & x2));
      acc += 3 * static_cast<std::uint64_t>(std::popcount((x1 ^ x2) & (z1 ^ z2)));
    }
    x_ ^= other.x_;
    z_ ^= other.z_;
    phase_ = static_cast<unsigned>(acc & 3u);
    return *this;
  }
  friend PauliString operator*(PauliString a, const PauliString& b) { return a *= b; }

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.phase_ == b.phase_ && a.x_ == b.x_ && a.z_ == b.z_;
  }

  /// Letters only, no sign.
  std::string letters() const {
    std::string s(size(), 'I');
    for (std::size_t j = 0; j < size(); ++j) {
      bool xb = x_.get(j), zb = z_.get(j);
      s[j] = xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
    }
    return s;
  }

  std::string to_string() const {
    static constexpr const char* kSigns[] = {"+", "+i", "-", "-i"};
    return kSigns[phase_] + letters();
  }

 private:
  void check_size(const PauliString& other) const {
    if (other.size() != size()) throw std::invalid_argument("PauliString: qubit count mismatch");
  }

  BitVector x_;
  BitVector z_;
  unsigned phase_ = 0;
};

inline PauliString multiply(const PauliString& p, const PauliString& q) { return p * q; }

/// Single-qubit Pauli on qubit `q` of an n-qubit register.
inline PauliString single_pauli(std::size_t n, std::size_t q, char letter) {
  PauliString p(n);
  if (letter == 'X' || letter == 'Y') p.x().set(q);
  if (letter == 'Z' || letter == 'Y') p.z().set(q);
  return p;
}

}  // namespace multinv
