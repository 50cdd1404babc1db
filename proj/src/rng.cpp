#include "fracsob/rng.hpp"

#include <sstream>
#include <vector>

#include "fracsob/error.hpp"

namespace fracsob {
namespace {

std::mt19937_64 seeded_engine(std::uint64_t master_seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x6a09e667u};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t index)
    : master_seed_(master_seed), index_(index), engine_(seeded_engine(master_seed, index)) {}

std::string RngStream::serialize() const {
  std::ostringstream out;
  out << master_seed_ << ' ' << index_ << ' ' << engine_;
  return out.str();
}

RngStream RngStream::restore(const std::string& state) {
  std::istringstream in(state);
  std::uint64_t seed = 0, index = 0;
  in >> seed >> index;
  RngStream s(seed, index);
  in >> s.engine_;
  require(!in.fail(), Errc::parse_error, "malformed RNG stream state");
  return s;
}

std::vector<RngStream> rng_streams(std::uint64_t master_seed, std::size_t count) {
  require(count >= 1, Errc::invalid_argument, "need at least one stream");
  std::vector<RngStream> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(master_seed, i);
  return out;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace fracsob
