#pragma once

#include <cstdint>

#include "audiomodem/signal.hpp"

namespace audiomodem {

// Deterministic stand-in for an acoustic path: optional leading pad of noise
// samples, then gain * input + additive white Gaussian noise. The same
// (input, spec) pair always produces bit-identical output.
struct ChannelSpec {
    double noise_sigma = 0.0;      // payload noise std dev, volts
    double gain = 1.0;
    double lead_pad_s = 0.0;       // seconds of pad prepended
    double pad_noise_sigma = 0.0;  // pad noise std dev, volts
    std::uint64_t rng_seed = 0;
};

// Seedable Gaussian stream with a pinned algorithm so test vectors can be
// reproduced independently of any standard-library distribution:
//   state advances by the SplitMix64 rule
//     z = (state += 0x9E3779B97F4A7C15)
//     z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//     z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//     z = z ^ (z >> 31)
//   each output maps to a uniform u = (z >> 11 + 1) * 2^-53 in (0, 1]
//   and pairs (u1, u2) feed Box-Muller:
//     r = sqrt(-2 ln u1); n0 = r cos(2 pi u2); n1 = r sin(2 pi u2)
// Values are consumed strictly in order n0, n1, n0, n1, ...
class GaussianNoise {
  public:
    explicit GaussianNoise(std::uint64_t seed) : state_(seed) {}

    double next();

  private:
    std::uint64_t next_u64();

    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

Signal apply_channel(const Signal& input, const ChannelSpec& spec);

}  // namespace audiomodem
