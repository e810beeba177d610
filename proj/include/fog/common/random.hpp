#pragma once

#include <cstdint>
#include <random>

namespace fog {

using Rng = std::mt19937_64;

// Independent sub-streams of one Monte-Carlo run. The numeric values are part
// of the reproducibility contract: changing them changes every output.
enum class StreamId : std::uint64_t {
  kTopology = 1,
  kQueueEvents = 2,
  kServiceRate = 3,
  kPolicy = 4,
  kCollision = 5,
  kDelay = 6,
};

// Seeds a stream from (master seed, run index, stream, sub-index) so that a run
// never depends on which worker executes it or on what other runs did.
Rng derive_stream(std::uint64_t master_seed, std::uint64_t run, StreamId stream,
                  std::uint64_t sub = 0);

// Uniform on [0, 1) with 53 random bits.
double uniform01(Rng& rng);

// Exponential with the given rate; +inf when rate == 0.
double exponential(Rng& rng, double rate);

// Standard normal via Box-Muller (one value per call, no cached state).
double standard_normal(Rng& rng);

// Uniform integer in [0, n).
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);

}  // namespace fog
