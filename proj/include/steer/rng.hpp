#pragma once

#include <cstdint>
#include <random>

namespace steer {

using Engine = std::mt19937_64;

// Independent engine for stream `index` under `master_seed`.
//
// Every random sample in a batch is drawn from its own stream, so results do
// not depend on how samples are partitioned between worker threads.
// `family` separates unrelated batches that share a master seed.
inline Engine stream_engine(std::uint64_t master_seed, std::uint64_t index, std::uint32_t family = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32),
                    family,
                    0x5eedu};
  return Engine(seq);
}

inline Engine seeded_engine(std::uint64_t seed) { return stream_engine(seed, 0); }

}  // namespace steer
