#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace fracsob {

/// Independent Mersenne Twister stream; stream i is a pure function of (master_seed, i).
/// Satisfies UniformRandomBitGenerator so it plugs into <random> distributions.
class RngStream {
 public:
  using result_type = std::mt19937_64::result_type;

  RngStream(std::uint64_t master_seed, std::uint64_t index);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return std::generate_canonical<double, 53>(engine_); }
  double normal() { return std::normal_distribution<double>{}(engine_); }

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t index() const noexcept { return index_; }

  /// Full engine state; restore() resumes the stream exactly.
  std::string serialize() const;
  static RngStream restore(const std::string& state);

 private:
  std::uint64_t master_seed_;
  std::uint64_t index_;
  std::mt19937_64 engine_;
};

std::vector<RngStream> rng_streams(std::uint64_t master_seed, std::size_t count);

/// SplitMix64 mix of (seed, salt); gives unrelated master seeds for sub-experiments.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) noexcept;

}  // namespace fracsob
