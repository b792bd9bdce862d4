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

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace multinv {

/// Fixed-length vector over GF(2), packed 64 entries per word.
class BitVector {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVector() = default;
  explicit BitVector(std::size_t length)
      : words_((length + kWordBits - 1) / kWordBits, 0), length_(length) {}

  /// Parses a string of '0'/'1' characters, index 0 first.
  static BitVector from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') {
        v.set(i);
      } else if (bits[i] != '0') {
        throw std::invalid_argument("BitVector: expected '0' or '1'");
      }
    }
    return v;
  }

  std::size_t size() const { return length_; }
  std::size_t word_count() const { return words_.size(); }
  const Word* data() const { return words_.data(); }
  Word* data() { return words_.data(); }

  bool get(std::size_t i) const {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
  }
  bool operator[](std::size_t i) const { return get(i); }
  void set(std::size_t i, bool value = true) {
    Word mask = Word{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }
  void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  BitVector& operator^=(const BitVector& other) {
    check_same_length(other);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }
  BitVector& operator&=(const BitVector& other) {
    check_same_length(other);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
    return *this;
  }
  BitVector& operator|=(const BitVector& other) {
    check_same_length(other);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
    return *this;
  }
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
  friend BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }
  friend bool operator==(const BitVector& a, const BitVector& b) {
    return a.length_ == b.length_ && a.words_ == b.words_;
  }

  /// Complement within the first size() positions.
  BitVector operator~() const {
    BitVector out(length_);
    for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = ~words_[w];
    out.clear_tail();
    return out;
  }

  std::size_t popcount() const {
    std::size_t total = 0;
    for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }
  bool any() const {
    return std::any_of(words_.begin(), words_.end(), [](Word w) { return w != 0; });
  }
  bool none() const { return !any(); }

  /// Standard GF(2) inner product.
  bool dot(const BitVector& other) const {
    check_same_length(other);
    Word acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
    return std::popcount(acc) & 1;
  }

  /// Index of the first set entry at or after `from`, or size() if none.
  std::size_t find_next(std::size_t from) const {
    if (from >= length_) return length_;
    std::size_t w = from / kWordBits;
    Word cur = words_[w] & (~Word{0} << (from % kWordBits));
    while (true) {
      if (cur != 0) {
        std::size_t idx = w * kWordBits + static_cast<std::size_t>(std::countr_zero(cur));
        return idx < length_ ? idx : length_;
      }
      if (++w >= words_.size()) return length_;
      cur = words_[w];
    }
  }
  std::size_t find_first() const { return find_next(0); }

  /// Indices of all set entries, ascending.
  std::vector<std::size_t> ones() const {
    std::vector<std::size_t> out;
    for (std::size_t i = find_first(); i < length_; i = find_next(i + 1)) out.push_back(i);
    return out;
  }

  std::string to_string() const {
    std::string s(length_, '0');
    for (std::size_t i = 0; i < length_; ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

 private:
  void check_same_length(const BitVector& other) const {
    if (other.length_ != length_) throw std::invalid_argument("BitVector: length mismatch");
  }
  void clear_tail() {
    if (length_ % kWordBits != 0 && !words_.empty()) {
      words_.back() &= (Word{1} << (length_ % kWordBits)) - 1;
    }
  }

  std::vector<Word> words_;
  std::size_t length_ = 0;
};

/// Dense row-major matrix over GF(2); each row is a BitVector of length cols().
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t cols) : cols_(cols) {}
  BitMatrix(std::size_t rows, std::size_t cols) : rows_(rows, BitVector(cols)), cols_(cols) {}

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.rows_[i].set(i);
    return m;
  }

  /// Rows given as '0'/'1' strings of equal length.
  static BitMatrix from_strings(const std::vector<std::string>& rows, std::size_t cols) {
    BitMatrix m(cols);
    for (const auto& r : rows) {
      if (r.size() != cols) throw std::invalid_argument("BitMatrix: ragged rows");
      m.push_row(BitVector::from_string(r));
    }
    return m;
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_.empty(); }

  const BitVector& row(std::size_t i) const { return rows_[i]; }
  BitVector& row(std::size_t i) { return rows_[i]; }
  const std::vector<BitVector>& row_list() const { return rows_; }

  bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool value = true) { rows_[r].set(c, value); }

  void push_row(BitVector v) {
    if (v.size() != cols_) throw std::invalid_argument("BitMatrix: row length mismatch");
    rows_.push_back(std::move(v));
  }

  BitMatrix transpose() const {
    BitMatrix t(cols_, rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const auto& row = rows_[r];
      for (std::size_t c = row.find_first(); c < cols_; c = row.find_next(c + 1)) t.set(c, r);
    }
    return t;
  }

  /// m * v over GF(2).
  BitVector multiply(const BitVector& v) const {
    BitVector out(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) out.set(r, rows_[r].dot(v));
    return out;
  }

  /// Keeps only the listed columns, in the given order.
  BitMatrix select_columns(const std::vector<std::size_t>& columns) const {
    BitMatrix out(rows_.size(), columns.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (std::size_t j = 0; j < columns.size(); ++j) {
        if (rows_[r].get(columns[j])) out.set(r, j);
      }
    }
    return out;
  }

  friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
    return a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }

 private:
  std::vector<BitVector> rows_;
  std::size_t cols_ = 0;
};

/// Reduced row echelon form together with its pivot columns.
struct Echelon {
  BitMatrix reduced;                 // nonzero rows only, pivots ascending
  std::vector<std::size_t> pivots;   // pivots[i] is the leading column of row i
};

/// Gauss-Jordan elimination. Pivot rule: leftmost column first, first
/// available row for that column.
inline Echelon row_reduce(const BitMatrix& m) {
  std::vector<BitVector> rows = m.row_list();
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t c = 0; c < m.cols() && next < rows.size(); ++c) {
    std::size_t found = rows.size();
    for (std::size_t r = next; r < rows.size(); ++r) {
      if (rows[r].get(c)) {
        found = r;
        break;
      }
    }
    if (found == rows.size()) continue;
    std::swap(rows[next], rows[found]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != next && rows[r].get(c)) rows[r] ^= rows[next];
    }
    pivots.push_back(c);
    ++next;
  }
  Echelon e{BitMatrix(m.cols()), std::move(pivots)};
  for (std::size_t r = 0; r < next; ++r) e.reduced.push_row(std::move(rows[r]));
  return e;
}

inline std::size_t rank(const BitMatrix& m) {
  // Forward elimination only; cheaper than full Gauss-Jordan.
  std::vector<BitVector> rows = m.row_list();
  std::size_t next = 0;
  for (std::size_t c = 0; c < m.cols() && next < rows.size(); ++c) {
    std::size_t found = rows.size();
    for (std::size_t r = next; r < rows.size(); ++r) {
      if (rows[r].get(c)) {
        found = r;
        break;
      }
    }
    if (found == rows.size()) continue;
    std::swap(rows[next], rows[found]);
    for (std::size_t r = next + 1; r < rows.size(); ++r) {
      if (rows[r].get(c)) rows[r] ^= rows[next];
    }
    ++next;
  }
  return next;
}

/// Basis of {x : m x = 0}; one row per free column of the echelon form.
inline BitMatrix kernel_basis(const BitMatrix& m) {
  const std::size_t n = m.cols();
  Echelon e = row_reduce(m);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  BitMatrix basis(n);
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    BitVector v(n);
    v.set(f);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
      if (e.reduced.get(i, f)) v.set(e.pivots[i]);
    }
    basis.push_row(std::move(v));
  }
  return basis;
}

/// Basis of the vectors orthogonal (standard GF(2) form) to every row of m.
/// This coincides with the kernel of m viewed as a linear map.
inline BitMatrix orthogonal_complement(const BitMatrix& m) { return kernel_basis(m); }

inline std::size_t nullity(const BitMatrix& m) { return m.cols() - rank(m); }

inline bool in_span(const BitVector& v, const BitMatrix& m) {
  if (v.size() != m.cols()) throw std::invalid_argument("in_span: length mismatch");
  if (v.none()) return true;
  Echelon e = row_reduce(m);
  BitVector rest = v;
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (rest.get(e.pivots[i])) rest ^= e.reduced.row(i);
  }
  return rest.none();
}

/// True when the row spaces of a and b coincide.
inline bool same_row_space(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.cols()) return false;
  Echelon ea = row_reduce(a);
  Echelon eb = row_reduce(b);
  return ea.reduced == eb.reduced;
}

/// Solves m x = rhs for one particular x, or nullopt when inconsistent.
inline std::optional<BitVector> solve(const BitMatrix& m, const BitVector& rhs) {
  if (rhs.size() != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
  // Augment with the right-hand side as an extra column.
  BitMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto& row = m.row(r);
    for (std::size_t c = row.find_first(); c < m.cols(); c = row.find_next(c + 1)) aug.set(r, c);
    if (rhs.get(r)) aug.set(r, m.cols());
  }
  Echelon e = row_reduce(aug);
  BitVector x(m.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == m.cols()) return std::nullopt;
    if (e.reduced.get(i, m.cols())) x.set(e.pivots[i]);
  }
  return x;
}

/// Independent subset of the rows of m, scanning in order and keeping each
/// row not spanned by the ones kept before it.
inline std::vector<std::size_t> independent_rows(const BitMatrix& m) {
  std::vector<std::size_t> kept;
  std::vector<BitVector> basis;  // echelon basis of kept rows
  std::vector<std::size_t> lead;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    BitVector v = m.row(r);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (v.get(lead[i])) v ^= basis[i];
    }
    std::size_t p = v.find_first();
    if (p == v.size()) continue;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (basis[i].get(p)) basis[i] ^= v;
    }
    basis.push_back(std::move(v));
    lead.push_back(p);
    kept.push_back(r);
  }
  return kept;
}

}  // namespace multinv
