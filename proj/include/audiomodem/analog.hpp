#pragma once

#include "audiomodem/signal.hpp"

namespace audiomodem {

// Envelope-detector AM. Defaults follow the reference operating point:
// 4 kHz carrier of 1 V, modulation index 0.3, x10 output amplification,
// 3 kHz-wide receive noise filter and a 1 kHz envelope low-pass.
struct AmParams {
    double carrier_freq_hz = 4000.0;
    double carrier_amplitude = 1.0;
    double modulation_index = 0.3;        // ka, in (0, 1]
    double message_bandwidth_hz = 1500.0; // W; carrier must be >= 2*W
    double message_gain = 1.0;
    double output_gain = 10.0;
    double noise_bpf_bandwidth_hz = 3000.0;
    double envelope_lpf_cutoff_hz = 1000.0;
    double sample_rate_hz = 44100.0;
    int filter_order = 4;
};

// Frequency-discriminator FM. kf is the frequency deviation per volt of
// message. The 1 kHz DC-removal high-pass in the receiver is optional and
// off by default: after the 750 Hz de-emphasis low-pass it would leave
// almost no passband.
struct FmParams {
    double carrier_freq_hz = 4000.0;
    double carrier_amplitude = 1.0;
    double freq_sensitivity_hz_per_volt = 2.5;  // kf
    double preemphasis_cutoff_hz = 750.0;
    double noise_bpf_bandwidth_hz = 2000.0;
    double envelope_lpf_cutoff_hz = 500.0;
    double deemphasis_lpf_cutoff_hz = 750.0;
    double dc_removal_hpf_cutoff_hz = 1000.0;
    double output_gain = 10.0;
    double sample_rate_hz = 44100.0;
    int filter_order = 4;
};

// s[n] = output_gain * Ac * (1 + ka * message_gain * m[n]) * cos(2 pi fc n / fs).
// Rejects any message that would drive |ka * m| to 1 or beyond.
Signal am_modulate(const Signal& message, const AmParams& params);

// Band-pass around the carrier, full-wave rectifier, two identical envelope
// low-passes, mean removal, output gain.
Signal am_demodulate(const Signal& received, const AmParams& params);

// s[n] = output_gain * Ac * cos(2 pi fc n/fs + 2 pi kf * integral of m).
// The instantaneous frequency fc + kf*m must stay below fs/2.
Signal fm_modulate(const Signal& message, const FmParams& params,
                   bool preemphasis_enabled);

// Band-pass, differentiate, rectify, envelope low-pass, optional de-emphasis,
// mean removal, optional DC-removal high-pass, then peak normalized to 0.9.
Signal fm_demodulate(const Signal& received, const FmParams& params,
                     bool deemphasis_enabled, bool dc_removal_enabled = false);

}  // namespace audiomodem
