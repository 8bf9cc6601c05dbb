#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "audiomodem/signal.hpp"

namespace audiomodem {

// Ordered bit sequence plus its symbol rate. Bit order is fixed MSB-first
// on both ends so transmitter and receiver agree by construction.
struct BitFrame {
    std::vector<std::uint8_t> bits;  // each 0 or 1
    double bit_rate = 1.0;           // bits per second
};

// Two-tone keying: f1 carries 0, f2 carries 1. Defaults are the 4 kHz/6 kHz
// pair at 1 bit/s with 400 Hz-wide receive filters.
struct BfskParams {
    double freq_zero_hz = 4000.0;   // f1
    double freq_one_hz = 6000.0;    // f2
    double carrier_amplitude = 1.0;
    double bit_rate = 1.0;
    double bpf_bandwidth_hz = 400.0;
    double start_threshold = 0.1;
    double sample_rate_hz = 44100.0;
    int filter_order = 4;
};

// Two on-off-keyed bit streams on quadrature carriers of one frequency.
// lpf_cutoff_hz defaults to 2000 Hz; 5000 Hz is also accepted but barely
// rejects the 2*fc image.
struct QamParams {
    double carrier_freq_hz = 4000.0;
    double carrier_amplitude = 1.0;
    double bit_rate = 1.0;               // per arm
    double lpf_cutoff_hz = 2000.0;
    double output_scale = 0.5;
    double sample_rate_hz = 44100.0;
    int filter_order = 4;
};

// Each ASCII character becomes 8 bits, most significant first.
BitFrame text_to_bits(const std::string& text, double bit_rate);

// Inverse of text_to_bits; the frame length must be a multiple of 8.
std::string bits_to_text(const BitFrame& frame);

// One tone burst per bit, fs/bit_rate samples each, phase restarting at 0
// every symbol.
Signal bfsk_modulate(const BitFrame& frame, const BfskParams& params);

// Smallest index whose magnitude exceeds the threshold.
std::size_t find_signal_start(const Signal& input, double threshold);

// Non-coherent dual-branch receiver: band-pass each tone, rectify, locate
// the signal start on the summed envelopes, then compare per-symbol branch
// means (ties decode as 0).
BitFrame bfsk_demodulate(const Signal& received, std::size_t bit_count,
                         const BfskParams& params);

// s[n] = output_scale * Ac * (m1[n] cos(2 pi fc n/fs) + m2[n] sin(2 pi fc n/fs))
// with a continuous global carrier phase across symbols.
Signal qam_modulate(const BitFrame& frame_i, const BitFrame& frame_q,
                    const QamParams& params);

// Coherent product detection: multiply by 2 cos / 2 sin, low-pass each arm,
// then threshold per-symbol means at half the ideal recovered level.
// The input is assumed symbol-aligned at sample 0. A nonzero
// input_bpf_bandwidth_hz enables an optional band-pass front end around fc.
std::pair<BitFrame, BitFrame> qam_demodulate(const Signal& received,
                                             std::size_t bit_count,
                                             const QamParams& params,
                                             double input_bpf_bandwidth_hz = 0.0);

}  // namespace audiomodem
