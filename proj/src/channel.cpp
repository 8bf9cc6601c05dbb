#include "audiomodem/channel.hpp"

#include <cmath>

#include "audiomodem/error.hpp"

namespace audiomodem {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPow53 = 9007199254740992.0;
}  // namespace

std::uint64_t GaussianNoise::next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double GaussianNoise::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) / kTwoPow53;
    const double u2 = static_cast<double>((next_u64() >> 11) + 1) / kTwoPow53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
}

Signal apply_channel(const Signal& input, const ChannelSpec& spec) {
    if (input.samples.empty()) {
        throw ModemError(ErrorCode::EmptySignal, "channel input is empty");
    }
    if (!(spec.gain > 0.0) || !std::isfinite(spec.gain) ||
        !(spec.noise_sigma >= 0.0) || !std::isfinite(spec.noise_sigma) ||
        !(spec.pad_noise_sigma >= 0.0) || !std::isfinite(spec.pad_noise_sigma) ||
        !(spec.lead_pad_s >= 0.0) || !std::isfinite(spec.lead_pad_s)) {
        throw ModemError(ErrorCode::InvalidArgument, "bad channel parameters");
    }

    const double fs = input.sample_rate_hz;
    const auto pad_len =
        static_cast<std::size_t>(std::llround(spec.lead_pad_s * fs));

    GaussianNoise rng(spec.rng_seed);
    Signal out;
    out.sample_rate_hz = fs;
    out.samples.resize(pad_len + input.samples.size());
    for (std::size_t i = 0; i < pad_len; ++i) {
        out.samples[i] = spec.pad_noise_sigma == 0.0
                             ? 0.0
                             : spec.pad_noise_sigma * rng.next();
    }
    for (std::size_t i = 0; i < input.samples.size(); ++i) {
        const double noisy = spec.noise_sigma == 0.0
                                 ? 0.0
                                 : spec.noise_sigma * rng.next();
        out.samples[pad_len + i] = spec.gain * input.samples[i] + noisy;
    }
    return out;
}

}  // namespace audiomodem
