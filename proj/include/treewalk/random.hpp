#pragma once

#include <cstdint>
#include <limits>

namespace treewalk {

/// SplitMix64 finalizer (Steele, Lea & Flood). Pinned: instance generation
/// and stream derivation depend on its exact output.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Keyed pseudo-random function onto [0, 1) with 53-bit resolution.
constexpr double prf_unit(std::uint64_t key, std::uint64_t x) {
  return static_cast<double>(mix64(key ^ mix64(x)) >> 11) * 0x1.0p-53;
}

/// Reproducible random substream identified by (master_seed, stream_id).
///
/// Draws are a SplitMix64 sequence whose starting state is derived from both
/// identifiers; substream() nests identifiers so every batch, level and
/// restart of an estimator owns a stream that does not depend on scheduling.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t master_seed, std::uint64_t stream_id)
      : master_seed_(master_seed), stream_id_(stream_id),
        state_(mix64(master_seed ^ mix64(stream_id ^ 0x5851f42d4c957f2dULL))) {}

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Child stream keyed by this stream's identity and `id`.
  RandomStream substream(std::uint64_t id) const {
    return RandomStream(mix64(master_seed_ ^ mix64(stream_id_ + 0x2545f4914f6cdd1dULL)), id);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// k fresh random bits (1 <= k <= 32), served from a buffered word.
  unsigned bits(int k) {
    if (avail_ < k) {
      buffer_ = (*this)();
      avail_ = 64;
    }
    const unsigned out = static_cast<unsigned>(buffer_ & ((std::uint64_t{1} << k) - 1));
    buffer_ >>= k;
    avail_ -= k;
    return out;
  }

  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), bound >= 1. Bitmask rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1; mask |= mask >> 2; mask |= mask >> 4;
    mask |= mask >> 8; mask |= mask >> 16; mask |= mask >> 32;
    for (;;) {
      const std::uint64_t x = (*this)() & mask;
      if (x < bound) return x;
    }
  }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::uint64_t state_;
  std::uint64_t buffer_ = 0;
  int avail_ = 0;
};

}  // namespace treewalk
