#pragma once

#include <cstddef>
#include <vector>

namespace audiomodem {

// Uniformly sampled real-valued waveform. The universal currency between
// every modulator, channel and demodulator stage. Treated as an immutable
// value: every operation takes const refs and returns a fresh Signal.
struct Signal {
    std::vector<double> samples;
    double sample_rate_hz = 0.0;

    std::size_t size() const { return samples.size(); }
    double duration_seconds() const {
        return static_cast<double>(samples.size()) / sample_rate_hz;
    }
};

// One-sided power spectral density estimate, bins 0..fs/2.
// Bin k covers frequency k * bin_hz; units are V^2/Hz, so
// sum(power) * bin_hz approximates the signal's mean-square value.
struct Spectrum {
    double bin_hz = 0.0;
    std::vector<double> power;
};

struct Alignment {
    std::ptrdiff_t lag = 0;       // samples `test` lags behind `reference`
    double correlation = 0.0;     // Pearson correlation at that lag, in [-1, 1]
};

// amplitude * cos(2*pi*freq_hz*t + phase), t = n / sample_rate_hz from n = 0.
Signal generate_tone(double freq_hz, double amplitude, double phase_deg,
                     double duration_s, double sample_rate_hz);

// Cumulative trapezoidal integral, zero initial condition:
// out[0] = 0, out[n] = out[n-1] + (in[n-1] + in[n]) / (2 * fs).
Signal trapezoidal_integrate(const Signal& input);

// Five-point stencil in the interior, central differences one sample from
// each edge, one-sided at the endpoints.
Signal differentiate(const Signal& input);

// out[n] = |in[n]|.
Signal rectify_fullwave(const Signal& input);

// Averaged periodogram: Hann-windowed segments, 50% overlap, window power
// compensated so the Parseval sum matches the mean-square value.
// segment_len must be even, >= 16 and <= input length.
Spectrum power_spectral_density(const Signal& input, std::size_t segment_len);

Signal scale(const Signal& input, double gain);

// Lag within |lag| <= min(len)/2 that maximizes the Pearson correlation of
// the overlapping region. Positive lag means `test` is a delayed copy of
// `reference`. Ties resolve toward the smallest |lag|, then the positive one.
Alignment align_by_crosscorrelation(const Signal& reference, const Signal& test);

// Rescale so the peak magnitude equals target_peak; all-zero input stays zero.
Signal normalize_peak(const Signal& input, double target_peak);

namespace detail {
// Shared tone kernel: writes count samples of
// amplitude * cos(2*pi*freq*i/fs + phase_rad) at out[offset + i].
// Modulators reuse it so per-symbol tones are bit-identical to generate_tone.
void fill_tone(std::vector<double>& out, std::size_t offset, std::size_t count,
               double freq_hz, double amplitude, double phase_rad,
               double sample_rate_hz);
}  // namespace detail

}  // namespace audiomodem
