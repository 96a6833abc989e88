#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace kiselman {

// Recorded in simulation reports so runs can be reproduced elsewhere.
inline constexpr std::string_view kRngName =
    "mt19937_64 per trial, seeded by splitmix64(master seed, trial index)";

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of the independent stream used by trial `index`. Depends only on
// (master, index), so any partition of trials over threads draws the same
// numbers.
constexpr std::uint64_t substream_seed(std::uint64_t master,
                                       std::uint64_t index) noexcept {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 1));
}

class TrialRng {
 public:
  TrialRng(std::uint64_t master, std::uint64_t index)
      : engine_(substream_seed(master, index)) {}

  // Uniform on [0, 1) with 53 random bits. Written out rather than using
  // std::uniform_real_distribution, whose output is implementation-defined.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace kiselman
