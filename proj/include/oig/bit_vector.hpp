#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oig/error.hpp"

namespace oig {

/// Fixed-length 0/1 vector with positions numbered 1..size().
///
/// Serves as a hypothesis restricted to an indexed domain and as a subset
/// indicator (training set, codeword). The text form puts position 1 leftmost,
/// and ordering is lexicographic on that text form.
class BitVector {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVector() = default;

  explicit BitVector(std::size_t length) : length_(length), words_(word_count(length), 0) {
    if (length == 0) throw InputError("BitVector length must be positive");
  }

  /// Parses a string over {0,1}; position 1 is the first character.
  static BitVector from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') {
        v.set(i + 1);
      } else if (bits[i] != '0') {
        throw InputError("invalid bit character '" + std::string(1, bits[i]) + "'");
      }
    }
    return v;
  }

  /// Indicator of the given 1-based positions.
  static BitVector from_positions(std::size_t length, std::span<const std::size_t> positions) {
    BitVector v(length);
    for (std::size_t p : positions) v.set(p);
    return v;
  }

  static BitVector unit(std::size_t length, std::size_t position) {
    BitVector v(length);
    v.set(position);
    return v;
  }

  std::size_t size() const noexcept { return length_; }
  bool empty() const noexcept { return length_ == 0; }

  bool test(std::size_t pos) const {
    check_position(pos);
    return (words_[(pos - 1) / kWordBits] >> ((pos - 1) % kWordBits)) & 1U;
  }

  BitVector& set(std::size_t pos, bool value = true) {
    check_position(pos);
    const Word mask = Word{1} << ((pos - 1) % kWordBits);
    if (value) {
      words_[(pos - 1) / kWordBits] |= mask;
    } else {
      words_[(pos - 1) / kWordBits] &= ~mask;
    }
    return *this;
  }

  BitVector& reset(std::size_t pos) { return set(pos, false); }

  std::size_t ones_count() const noexcept {
    std::size_t total = 0;
    for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }

  bool none() const noexcept {
    for (Word w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  /// Ascending 1-based positions holding a 1.
  std::vector<std::size_t> ones() const {
    std::vector<std::size_t> out;
    out.reserve(ones_count());
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      Word w = words_[wi];
      while (w != 0) {
        out.push_back(wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w)) + 1);
        w &= w - 1;
      }
    }
    return out;
  }

  /// Restriction to the positions where `subset` is 1, in ascending order.
  BitVector restrict_to(const BitVector& subset) const {
    require_same_length(subset);
    BitVector out(subset.ones_count());
    std::size_t j = 1;
    for (std::size_t p : subset.ones()) {
      if (test(p)) out.set(j);
      ++j;
    }
    return out;
  }

  BitVector operator^(const BitVector& other) const {
    require_same_length(other);
    BitVector out = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] ^= other.words_[i];
    return out;
  }

  BitVector operator&(const BitVector& other) const {
    require_same_length(other);
    BitVector out = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] &= other.words_[i];
    return out;
  }

  BitVector operator|(const BitVector& other) const {
    require_same_length(other);
    BitVector out = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] |= other.words_[i];
    return out;
  }

  std::string to_string() const {
    std::string s(length_, '0');
    for (std::size_t p = 1; p <= length_; ++p) {
      if (test(p)) s[p - 1] = '1';
    }
    return s;
  }

  std::span<const Word> words() const noexcept { return words_; }

  friend bool operator==(const BitVector&, const BitVector&) = default;

  /// Lexicographic on the text form ('0' < '1'); shorter vectors first.
  friend std::strong_ordering operator<=>(const BitVector& a, const BitVector& b) {
    if (a.length_ != b.length_) return a.length_ <=> b.length_;
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      const Word diff = a.words_[i] ^ b.words_[i];
      if (diff != 0) {
        const Word lowest = diff & (~diff + 1);
        return (a.words_[i] & lowest) != 0 ? std::strong_ordering::greater
                                           : std::strong_ordering::less;
      }
    }
    return std::strong_ordering::equal;
  }

  void require_same_length(const BitVector& other) const {
    if (other.length_ != length_) {
      throw InputError("length mismatch: " + std::to_string(length_) + " vs " +
                       std::to_string(other.length_));
    }
  }

 private:
  static std::size_t word_count(std::size_t length) { return (length + kWordBits - 1) / kWordBits; }

  void check_position(std::size_t pos) const {
    if (pos == 0 || pos > length_) {
      throw InputError("position " + std::to_string(pos) + " outside 1.." + std::to_string(length_));
    }
  }

  std::size_t length_ = 0;
  std::vector<Word> words_;
};

/// Number of positions on which f and g differ.
inline std::size_t hamming_distance(const BitVector& f, const BitVector& g) {
  f.require_same_length(g);
  std::size_t total = 0;
  auto fw = f.words();
  auto gw = g.words();
  for (std::size_t i = 0; i < fw.size(); ++i) total += static_cast<std::size_t>(std::popcount(fw[i] ^ gw[i]));
  return total;
}

}  // namespace oig
