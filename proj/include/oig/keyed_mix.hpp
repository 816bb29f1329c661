#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>

namespace oig {

// Fixed 64-bit mixing used for every keyed pseudo-random choice in the
// library. Outputs are pinned by golden tests; changing any constant here
// changes every accepted construction seed.

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Domain-separation tags.
enum class MixTag : std::uint64_t {
  kSelect = 0x53454c,      // "SEL"
  kFlip = 0x464c4950,      // "FLIP"
  kTrial = 0x545249414c,   // "TRIAL"
  kSample = 0x53414d50,    // "SAMP"
};

/// Order-sensitive keyed hash of a sequence of words.
class KeyedMix {
 public:
  constexpr KeyedMix(std::uint64_t seed, MixTag tag) noexcept
      : state_(mix64(seed ^ mix64(static_cast<std::uint64_t>(tag)))) {}

  constexpr KeyedMix& add(std::uint64_t word) noexcept {
    state_ = mix64(state_ ^ mix64(word + 0x632be59bd9b4e019ULL));
    return *this;
  }

  KeyedMix& add(std::span<const std::uint64_t> words) noexcept {
    add(static_cast<std::uint64_t>(words.size()));
    for (std::uint64_t w : words) add(w);
    return *this;
  }

  constexpr std::uint64_t value() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

/// Deterministic 64-bit stream (SplitMix64 sequence) seeded from a key.
class SplitMixStream {
 public:
  explicit constexpr SplitMixStream(std::uint64_t key) noexcept : state_(key) {}

  constexpr std::uint64_t next() noexcept {
    const std::uint64_t out = mix64(state_);
    state_ += 0x9e3779b97f4a7c15ULL;
    return out;
  }

  /// Uniform integer in [0, bound) by rejection; bound > 0.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % bound;
  }

 private:
  std::uint64_t state_;
};

}  // namespace oig
