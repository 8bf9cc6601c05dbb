#include "audiomodem/analog.hpp"

#include <cmath>

#include "audiomodem/error.hpp"
#include "audiomodem/filters.hpp"

namespace audiomodem {

namespace {

constexpr double kPi = 3.14159265358979323846;

double max_abs(const Signal& s) {
    double m = 0.0;
    for (double v : s.samples) m = std::max(m, std::fabs(v));
    return m;
}

Signal remove_mean(const Signal& input) {
    Signal out = input;
    if (out.samples.empty()) return out;
    double sum = 0.0;
    for (double v : out.samples) sum += v;
    const double mean = sum / static_cast<double>(out.samples.size());
    for (auto& v : out.samples) v -= mean;
    return out;
}

DesignedFilter make_lowpass(double cutoff_hz, int order, double fs) {
    return design_butterworth({FilterKind::lowpass, order, 0.0, cutoff_hz, fs});
}

DesignedFilter make_highpass(double cutoff_hz, int order, double fs) {
    return design_butterworth({FilterKind::highpass, order, 0.0, cutoff_hz, fs});
}

DesignedFilter make_bandpass(double center_hz, double bandwidth_hz, int order,
                             double fs) {
    return design_butterworth({FilterKind::bandpass, order,
                               center_hz - bandwidth_hz / 2.0,
                               center_hz + bandwidth_hz / 2.0, fs});
}

void validate_am(const AmParams& p) {
    if (!(p.modulation_index > 0.0) || !(p.modulation_index <= 1.0)) {
        throw ModemError(ErrorCode::InvalidArgument,
                         "modulation index must lie in (0, 1]");
    }
    if (!(p.carrier_freq_hz >= 2.0 * p.message_bandwidth_hz)) {
        throw ModemError(ErrorCode::InvalidArgument,
                         "carrier must be at least twice the message bandwidth");
    }
    if (!(p.carrier_freq_hz < p.sample_rate_hz / 2.0)) {
        throw ModemError(ErrorCode::NyquistViolation,
                         "carrier frequency must be below fs/2");
    }
}

void validate_fm(const FmParams& p) {
    if (!(p.freq_sensitivity_hz_per_volt > 0.0)) {
        throw ModemError(ErrorCode::InvalidArgument, "kf must be positive");
    }
    const double nyquist = p.sample_rate_hz / 2.0;
    if (!(p.carrier_freq_hz < nyquist)) {
        throw ModemError(ErrorCode::NyquistViolation,
                         "carrier frequency must be below fs/2");
    }
    if (!(p.preemphasis_cutoff_hz < nyquist) ||
        !(p.envelope_lpf_cutoff_hz < nyquist) ||
        !(p.deemphasis_lpf_cutoff_hz < nyquist) ||
        !(p.dc_removal_hpf_cutoff_hz < nyquist)) {
        throw ModemError(ErrorCode::InvalidCutoff, "all cutoffs must be below fs/2");
    }
}

void require_same_rate(const Signal& s, double rate) {
    if (s.sample_rate_hz != rate) {
        throw ModemError(ErrorCode::RateMismatch,
                         "signal rate differs from the parameter record's rate");
    }
}

}  // namespace

Signal am_modulate(const Signal& message, const AmParams& params) {
    validate_am(params);
    require_same_rate(message, params.sample_rate_hz);

    Signal amplified = scale(message, params.message_gain);
    if (params.modulation_index * max_abs(amplified) >= 1.0) {
        throw ModemError(ErrorCode::OvermodulationError,
                         "|ka * m(t)| reaches 1; lower the message gain or ka");
    }

    const double fs = params.sample_rate_hz;
    const double w = 2.0 * kPi * params.carrier_freq_hz;
    Signal out;
    out.sample_rate_hz = fs;
    out.samples.resize(amplified.samples.size());
    for (std::size_t n = 0; n < out.samples.size(); ++n) {
        const double t = static_cast<double>(n) / fs;
        const double envelope =
            1.0 + params.modulation_index * amplified.samples[n];
        out.samples[n] = params.carrier_amplitude * envelope * std::cos(w * t);
    }
    return scale(out, params.output_gain);
}

Signal am_demodulate(const Signal& received, const AmParams& params) {
    validate_am(params);
    require_same_rate(received, params.sample_rate_hz);

    const auto bpf = make_bandpass(params.carrier_freq_hz,
                                   params.noise_bpf_bandwidth_hz,
                                   params.filter_order, params.sample_rate_hz);
    const auto lpf = make_lowpass(params.envelope_lpf_cutoff_hz,
                                  params.filter_order, params.sample_rate_hz);

    Signal y = apply_filter(bpf, received);
    y = rectify_fullwave(y);
    y = apply_filter(lpf, y);
    y = apply_filter(lpf, y);  // second identical LPF knocks down residual ripple
    y = remove_mean(y);
    return scale(y, params.output_gain);
}

Signal fm_modulate(const Signal& message, const FmParams& params,
                   bool preemphasis_enabled) {
    validate_fm(params);
    require_same_rate(message, params.sample_rate_hz);

    const double fs = params.sample_rate_hz;
    Signal shaped = message;
    if (preemphasis_enabled) {
        shaped = apply_filter(
            make_highpass(params.preemphasis_cutoff_hz, params.filter_order, fs),
            shaped);
    }

    const double kf = params.freq_sensitivity_hz_per_volt;
    if (params.carrier_freq_hz + kf * max_abs(shaped) >= fs / 2.0) {
        throw ModemError(ErrorCode::DeviationExceedsNyquist,
                         "instantaneous frequency would reach fs/2");
    }

    const Signal integral = trapezoidal_integrate(shaped);
    Signal out;
    out.sample_rate_hz = fs;
    out.samples.resize(message.samples.size());
    for (std::size_t n = 0; n < out.samples.size(); ++n) {
        const double t = static_cast<double>(n) / fs;
        const double phase =
            2.0 * kPi * (params.carrier_freq_hz * t + kf * integral.samples[n]);
        out.samples[n] = params.carrier_amplitude * std::cos(phase);
    }
    return scale(out, params.output_gain);
}

Signal fm_demodulate(const Signal& received, const FmParams& params,
                     bool deemphasis_enabled, bool dc_removal_enabled) {
    validate_fm(params);
    require_same_rate(received, params.sample_rate_hz);
    if (received.samples.empty()) {
        return received;
    }

    const double fs = params.sample_rate_hz;
    Signal y = apply_filter(make_bandpass(params.carrier_freq_hz,
                                          params.noise_bpf_bandwidth_hz,
                                          params.filter_order, fs),
                            received);
    y = differentiate(y);
    y = rectify_fullwave(y);
    y = apply_filter(
        make_lowpass(params.envelope_lpf_cutoff_hz, params.filter_order, fs), y);
    if (deemphasis_enabled) {
        y = apply_filter(make_lowpass(params.deemphasis_lpf_cutoff_hz,
                                      params.filter_order, fs),
                         y);
    }
    y = remove_mean(y);
    if (dc_removal_enabled) {
        y = apply_filter(make_highpass(params.dc_removal_hpf_cutoff_hz,
                                       params.filter_order, fs),
                         y);
    }
    return normalize_peak(y, 0.9);
}

}  // namespace audiomodem
