#pragma once

#include <cstdint>

namespace enaqt {

/// SplitMix64 finaliser: a bijective 64-bit mix.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Order-sensitive combination of a key with an index; used to derive per-task seeds.
std::uint64_t stable_hash(std::uint64_t key, std::uint64_t index) noexcept;

/// Counter-based generator: draw i is mix64(key + (i + 1) * golden). The output depends only
/// on (key, i), so streams are reproducible bit for bit and never share state.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

  std::uint64_t next_u64() noexcept;
  /// Uniform on (0, 1], 53-bit resolution.
  double next_open_unit() noexcept;
  /// Standard normal via Box-Muller; the sine branch is cached for the next call.
  double next_normal() noexcept;

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace enaqt
