#include "audiomodem/digital.hpp"

#include <cmath>

#include "audiomodem/error.hpp"
#include "audiomodem/filters.hpp"

namespace audiomodem {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::size_t samples_per_bit(double sample_rate_hz, double bit_rate) {
    if (!(bit_rate > 0.0)) {
        throw ModemError(ErrorCode::InvalidArgument, "bit rate must be positive");
    }
    const double ratio = sample_rate_hz / bit_rate;
    const double rounded = std::floor(ratio + 0.5);
    if (rounded < 1.0 || std::fabs(ratio - rounded) > 1e-9 * rounded) {
        throw ModemError(ErrorCode::NonIntegralSymbolLength,
                         "fs/bit_rate must be a positive whole number of samples");
    }
    return static_cast<std::size_t>(rounded);
}

void validate_bfsk(const BfskParams& p) {
    const double nyquist = p.sample_rate_hz / 2.0;
    if (p.freq_zero_hz == p.freq_one_hz) {
        throw ModemError(ErrorCode::InvalidArgument, "f1 and f2 must differ");
    }
    if (!(p.freq_zero_hz < nyquist) || !(p.freq_one_hz < nyquist)) {
        throw ModemError(ErrorCode::NyquistViolation,
                         "both keying frequencies must be below fs/2");
    }
    if (!(std::fabs(p.freq_one_hz - p.freq_zero_hz) > p.bpf_bandwidth_hz)) {
        throw ModemError(ErrorCode::InvalidArgument,
                         "tone spacing must exceed the branch filter bandwidth");
    }
    if (!(p.start_threshold > 0.0)) {
        throw ModemError(ErrorCode::InvalidArgument, "start threshold must be positive");
    }
}

void validate_qam(const QamParams& p) {
    if (!(p.carrier_freq_hz < p.sample_rate_hz / 2.0)) {
        throw ModemError(ErrorCode::NyquistViolation,
                         "carrier frequency must be below fs/2");
    }
    if (!(p.output_scale > 0.0) || !(p.output_scale <= 1.0)) {
        throw ModemError(ErrorCode::InvalidArgument, "output scale must lie in (0, 1]");
    }
}

DesignedFilter branch_bandpass(double center_hz, double bandwidth_hz, int order,
                               double fs) {
    return design_butterworth({FilterKind::bandpass, order,
                               center_hz - bandwidth_hz / 2.0,
                               center_hz + bandwidth_hz / 2.0, fs});
}

double window_mean(const std::vector<double>& v, std::size_t begin, std::size_t end) {
    double sum = 0.0;
    for (std::size_t i = begin; i < end; ++i) sum += v[i];
    return sum / static_cast<double>(end - begin);
}

}  // namespace

BitFrame text_to_bits(const std::string& text, double bit_rate) {
    if (!(bit_rate > 0.0)) {
        throw ModemError(ErrorCode::InvalidArgument, "bit rate must be positive");
    }
    BitFrame frame;
    frame.bit_rate = bit_rate;
    frame.bits.reserve(text.size() * 8);
    for (char c : text) {
        const auto byte = static_cast<unsigned char>(c);
        if (byte >= 128) {
            throw ModemError(ErrorCode::NonAsciiInput,
                             "only ASCII payloads are supported");
        }
        for (int b = 7; b >= 0; --b) {
            frame.bits.push_back(static_cast<std::uint8_t>((byte >> b) & 1u));
        }
    }
    return frame;
}

std::string bits_to_text(const BitFrame& frame) {
    if (frame.bits.size() % 8 != 0) {
        throw ModemError(ErrorCode::FrameLengthNotByteAligned,
                         "frame length must be a multiple of 8");
    }
    std::string text;
    text.reserve(frame.bits.size() / 8);
    for (std::size_t i = 0; i < frame.bits.size(); i += 8) {
        unsigned byte = 0;
        for (std::size_t b = 0; b < 8; ++b) {
            byte = (byte << 1) | (frame.bits[i + b] & 1u);
        }
        text.push_back(static_cast<char>(byte));
    }
    return text;
}

Signal bfsk_modulate(const BitFrame& frame, const BfskParams& params) {
    validate_bfsk(params);
    if (frame.bits.empty()) {
        throw ModemError(ErrorCode::EmptyFrame, "nothing to modulate");
    }
    const std::size_t spb = samples_per_bit(params.sample_rate_hz, frame.bit_rate);

    Signal out;
    out.sample_rate_hz = params.sample_rate_hz;
    out.samples.resize(frame.bits.size() * spb);
    for (std::size_t k = 0; k < frame.bits.size(); ++k) {
        const double freq = frame.bits[k] ? params.freq_one_hz : params.freq_zero_hz;
        detail::fill_tone(out.samples, k * spb, spb, freq,
                          params.carrier_amplitude, 0.0, params.sample_rate_hz);
    }
    return out;
}

std::size_t find_signal_start(const Signal& input, double threshold) {
    if (!(threshold > 0.0)) {
        throw ModemError(ErrorCode::InvalidArgument, "threshold must be positive");
    }
    for (std::size_t n = 0; n < input.samples.size(); ++n) {
        if (std::fabs(input.samples[n]) > threshold) return n;
    }
    throw ModemError(ErrorCode::NoSampleAboveThreshold,
                     "no sample magnitude exceeds the threshold");
}

BitFrame bfsk_demodulate(const Signal& received, std::size_t bit_count,
                         const BfskParams& params) {
    validate_bfsk(params);
    if (received.sample_rate_hz != params.sample_rate_hz) {
        throw ModemError(ErrorCode::RateMismatch,
                         "received rate differs from the parameter record's rate");
    }
    if (bit_count == 0) {
        throw ModemError(ErrorCode::InvalidArgument, "bit count must be at least 1");
    }
    const double fs = params.sample_rate_hz;
    const std::size_t spb = samples_per_bit(fs, params.bit_rate);

    const Signal env_zero = rectify_fullwave(apply_filter(
        branch_bandpass(params.freq_zero_hz, params.bpf_bandwidth_hz,
                        params.filter_order, fs),
        received));
    const Signal env_one = rectify_fullwave(apply_filter(
        branch_bandpass(params.freq_one_hz, params.bpf_bandwidth_hz,
                        params.filter_order, fs),
        received));

    Signal env_sum;
    env_sum.sample_rate_hz = fs;
    env_sum.samples.resize(received.samples.size());
    for (std::size_t i = 0; i < env_sum.samples.size(); ++i) {
        env_sum.samples[i] = env_zero.samples[i] + env_one.samples[i];
    }

    const std::size_t start = find_signal_start(env_sum, params.start_threshold);

    // Per-symbol windows measured from the detected start. The band-pass
    // transient delays the threshold crossing by a few dozen samples, so the
    // final window may run past the end of the capture; means are taken over
    // whatever part of the window exists.
    const std::size_t total = received.samples.size();
    BitFrame frame;
    frame.bit_rate = params.bit_rate;
    frame.bits.reserve(bit_count);
    for (std::size_t k = 0; k < bit_count; ++k) {
        const std::size_t begin = start + k * spb;
        const std::size_t end = std::min(begin + spb, total);
        if (begin >= total) {
            throw ModemError(ErrorCode::TruncationOutOfRange,
                             "not enough samples after the detected start");
        }
        const double mean_zero = window_mean(env_zero.samples, begin, end);
        const double mean_one = window_mean(env_one.samples, begin, end);
        frame.bits.push_back(mean_one > mean_zero ? 1 : 0);
    }
    return frame;
}

Signal qam_modulate(const BitFrame& frame_i, const BitFrame& frame_q,
                    const QamParams& params) {
    validate_qam(params);
    if (frame_i.bits.size() != frame_q.bits.size()) {
        throw ModemError(ErrorCode::FrameLengthMismatch,
                         "both arms need the same number of bits");
    }
    if (frame_i.bit_rate != frame_q.bit_rate) {
        throw ModemError(ErrorCode::RateMismatch, "both arms need the same bit rate");
    }
    if (frame_i.bits.empty()) {
        throw ModemError(ErrorCode::EmptyFrame, "nothing to modulate");
    }
    const double fs = params.sample_rate_hz;
    const std::size_t spb = samples_per_bit(fs, frame_i.bit_rate);
    const std::size_t total = frame_i.bits.size() * spb;
    const double level = params.output_scale * params.carrier_amplitude;

    // continuous global carrier phase: both arms span the whole frame, the
    // quadrature one as a tone at -90 degrees (cos shifted into sin)
    std::vector<double> in_phase(total), quadrature(total);
    detail::fill_tone(in_phase, 0, total, params.carrier_freq_hz, 1.0, 0.0, fs);
    detail::fill_tone(quadrature, 0, total, params.carrier_freq_hz, 1.0, -kPi / 2.0, fs);

    Signal out;
    out.sample_rate_hz = fs;
    out.samples.resize(total);
    for (std::size_t n = 0; n < total; ++n) {
        const std::size_t k = n / spb;
        const double m1 = frame_i.bits[k] ? 1.0 : 0.0;
        const double m2 = frame_q.bits[k] ? 1.0 : 0.0;
        out.samples[n] = level * (m1 * in_phase[n] + m2 * quadrature[n]);
    }
    return out;
}

std::pair<BitFrame, BitFrame> qam_demodulate(const Signal& received,
                                             std::size_t bit_count,
                                             const QamParams& params,
                                             double input_bpf_bandwidth_hz) {
    validate_qam(params);
    if (received.sample_rate_hz != params.sample_rate_hz) {
        throw ModemError(ErrorCode::RateMismatch,
                         "received rate differs from the parameter record's rate");
    }
    if (bit_count == 0) {
        throw ModemError(ErrorCode::InvalidArgument, "bit count must be at least 1");
    }
    const double fs = params.sample_rate_hz;
    const std::size_t spb = samples_per_bit(fs, params.bit_rate);
    if (bit_count * spb > received.samples.size()) {
        throw ModemError(ErrorCode::TruncationOutOfRange,
                         "received signal is shorter than bit_count symbols");
    }

    Signal in = received;
    if (input_bpf_bandwidth_hz > 0.0) {
        in = apply_filter(branch_bandpass(params.carrier_freq_hz,
                                          input_bpf_bandwidth_hz,
                                          params.filter_order, fs),
                          in);
    }

    const double w = 2.0 * kPi * params.carrier_freq_hz;
    Signal arm_i, arm_q;
    arm_i.sample_rate_hz = fs;
    arm_q.sample_rate_hz = fs;
    arm_i.samples.resize(in.samples.size());
    arm_q.samples.resize(in.samples.size());
    for (std::size_t n = 0; n < in.samples.size(); ++n) {
        const double t = static_cast<double>(n) / fs;
        arm_i.samples[n] = in.samples[n] * 2.0 * std::cos(w * t);
        arm_q.samples[n] = in.samples[n] * 2.0 * std::sin(w * t);
    }
    const auto lpf = design_butterworth({FilterKind::lowpass, params.filter_order,
                                         0.0, params.lpf_cutoff_hz, fs});
    arm_i = apply_filter(lpf, arm_i);
    arm_q = apply_filter(lpf, arm_q);

    // Ideal recovered level is output_scale * Ac (the 2x mixers compensate the
    // product-detector half); decide at the midpoint between that and zero.
    const double decision =
        0.5 * params.output_scale * params.carrier_amplitude;

    BitFrame out_i, out_q;
    out_i.bit_rate = params.bit_rate;
    out_q.bit_rate = params.bit_rate;
    for (std::size_t k = 0; k < bit_count; ++k) {
        const std::size_t begin = k * spb;
        const std::size_t end = begin + spb;
        out_i.bits.push_back(window_mean(arm_i.samples, begin, end) > decision ? 1 : 0);
        out_q.bits.push_back(window_mean(arm_q.samples, begin, end) > decision ? 1 : 0);
    }
    return {out_i, out_q};
}

}  // namespace audiomodem
