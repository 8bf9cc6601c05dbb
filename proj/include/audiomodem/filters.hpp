#pragma once

#include <vector>

#include "audiomodem/signal.hpp"

namespace audiomodem {

enum class FilterKind { lowpass, highpass, bandpass };

// Butterworth design request. For lowpass/highpass the cutoff lives in
// cutoff_high_hz; bandpass uses both edges. For bandpass, `order` is the
// order of the underlying low-pass prototype (the realized filter has
// twice as many poles).
struct FilterSpec {
    FilterKind kind = FilterKind::lowpass;
    int order = 4;
    double cutoff_low_hz = 0.0;
    double cutoff_high_hz = 0.0;
    double sample_rate_hz = 44100.0;
};

// One normalized second-order section: y = b0*x + b1*x1 + b2*x2 - a1*y1 - a2*y2.
// First-order sections are stored with b2 = a2 = 0.
struct BiquadSection {
    double b0 = 0.0, b1 = 0.0, b2 = 0.0;
    double a1 = 0.0, a2 = 0.0;
};

struct DesignedFilter {
    std::vector<BiquadSection> sections;
    FilterSpec spec;
};

// Analog Butterworth prototype, frequency pre-warped bilinear transform,
// factored into second-order sections. Passband gain is normalized to 1:
// at DC for lowpass, at Nyquist for highpass and at the geometric-mean
// center frequency for bandpass. Both cutoffs land exactly on -3.01 dB.
DesignedFilter design_butterworth(const FilterSpec& spec);

// Causal single-pass filtering, all section states starting at zero.
Signal apply_filter(const DesignedFilter& filter, const Signal& input);

// Cascade magnitude on the unit circle at freq_hz.
double frequency_response(const DesignedFilter& filter, double freq_hz);

// Largest pole magnitude across all sections. Strictly below 1 for every
// filter design_butterworth returns; exposed for stability checks.
double max_pole_magnitude(const DesignedFilter& filter);

// Digital center frequency whose pre-warped image is the geometric mean of
// the warped band edges; the frequency a bandpass design is normalized at.
double bandpass_center_hz(const FilterSpec& spec);

}  // namespace audiomodem
