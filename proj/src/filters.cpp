#include "audiomodem/filters.hpp"

#include <cmath>
#include <complex>

#include "audiomodem/error.hpp"

namespace audiomodem {

namespace {

constexpr double kPi = 3.14159265358979323846;

using cplx = std::complex<double>;

void validate(const FilterSpec& spec) {
    if (!(spec.sample_rate_hz > 0.0)) {
        throw ModemError(ErrorCode::InvalidArgument, "sample rate must be positive");
    }
    if (spec.order < 1 || spec.order > 12) {
        throw ModemError(ErrorCode::InvalidOrder, "order must be between 1 and 12");
    }
    const double nyquist = spec.sample_rate_hz / 2.0;
    if (spec.kind == FilterKind::bandpass) {
        if (!(spec.cutoff_low_hz > 0.0) || !(spec.cutoff_high_hz < nyquist) ||
            !(spec.cutoff_low_hz < spec.cutoff_high_hz)) {
            throw ModemError(ErrorCode::InvalidCutoff,
                             "bandpass edges must satisfy 0 < low < high < fs/2");
        }
    } else {
        if (!(spec.cutoff_high_hz > 0.0) || !(spec.cutoff_high_hz < nyquist)) {
            throw ModemError(ErrorCode::InvalidCutoff,
                             "cutoff must lie strictly between 0 and fs/2");
        }
    }
}

double prewarp(double freq_hz, double fs) {
    return 2.0 * fs * std::tan(kPi * freq_hz / fs);
}

// Upper-half-plane prototype pole angles; the real pole (odd orders) is
// handled separately by the callers.
std::vector<double> prototype_angles(int order) {
    std::vector<double> angles;
    for (int k = 0; k < order / 2; ++k) {
        angles.push_back(kPi / 2.0 + kPi * (2.0 * k + 1.0) / (2.0 * order));
    }
    return angles;
}

// Bilinear transform of an analog biquad (B2 s^2 + B1 s + B0) / (A2 s^2 + A1 s + A0).
BiquadSection bilinear_quad(double B2, double B1, double B0,
                            double A2, double A1, double A0, double K) {
    const double K2 = K * K;
    const double a0 = A2 * K2 + A1 * K + A0;
    BiquadSection s;
    s.b0 = (B2 * K2 + B1 * K + B0) / a0;
    s.b1 = (2.0 * B0 - 2.0 * B2 * K2) / a0;
    s.b2 = (B2 * K2 - B1 * K + B0) / a0;
    s.a1 = (2.0 * A0 - 2.0 * A2 * K2) / a0;
    s.a2 = (A2 * K2 - A1 * K + A0) / a0;
    return s;
}

// Bilinear transform of a first-order analog section (B1 s + B0) / (s + A0).
BiquadSection bilinear_first(double B1, double B0, double A0, double K) {
    const double a0 = K + A0;
    BiquadSection s;
    s.b0 = (B1 * K + B0) / a0;
    s.b1 = (B0 - B1 * K) / a0;
    s.a1 = (A0 - K) / a0;
    return s;
}

cplx section_response(const BiquadSection& s, double omega) {
    const cplx z1 = std::polar(1.0, -omega);
    const cplx z2 = std::polar(1.0, -2.0 * omega);
    return (s.b0 + s.b1 * z1 + s.b2 * z2) / (1.0 + s.a1 * z1 + s.a2 * z2);
}

DesignedFilter design_lp_hp(const FilterSpec& spec) {
    const double fs = spec.sample_rate_hz;
    const double K = 2.0 * fs;
    const double wc = prewarp(spec.cutoff_high_hz, fs);
    const bool highpass = spec.kind == FilterKind::highpass;

    DesignedFilter filt;
    filt.spec = spec;
    for (double theta : prototype_angles(spec.order)) {
        // pole pair at wc*e^{+-j theta}: denominator s^2 - 2 wc cos(theta) s + wc^2
        const double A1 = -2.0 * wc * std::cos(theta);
        const double A0 = wc * wc;
        if (highpass) {
            filt.sections.push_back(bilinear_quad(1.0, 0.0, 0.0, 1.0, A1, A0, K));
        } else {
            filt.sections.push_back(bilinear_quad(0.0, 0.0, A0, 1.0, A1, A0, K));
        }
    }
    if (spec.order % 2 == 1) {
        if (highpass) {
            filt.sections.push_back(bilinear_first(1.0, 0.0, wc, K));
        } else {
            filt.sections.push_back(bilinear_first(0.0, wc, wc, K));
        }
    }
    return filt;
}

DesignedFilter design_bp(const FilterSpec& spec) {
    const double fs = spec.sample_rate_hz;
    const double K = 2.0 * fs;
    const double w1 = prewarp(spec.cutoff_low_hz, fs);
    const double w2 = prewarp(spec.cutoff_high_hz, fs);
    const double bw = w2 - w1;
    const double w0sq = w1 * w2;

    DesignedFilter filt;
    filt.spec = spec;

    // Each prototype pole p yields two passband poles via s^2 - bw*p*s + w0^2 = 0;
    // each of those pairs up with its own conjugate into one section with
    // zeros at z = +1 and z = -1.
    auto add_section_for_pole = [&](const cplx& s_pole) {
        const cplx z = (K + s_pole) / (K - s_pole);
        BiquadSection sec;
        sec.b0 = 1.0;
        sec.b1 = 0.0;
        sec.b2 = -1.0;
        sec.a1 = -2.0 * z.real();
        sec.a2 = std::norm(z);
        filt.sections.push_back(sec);
    };

    for (double theta : prototype_angles(spec.order)) {
        const cplx p(std::cos(theta), std::sin(theta));
        const cplx disc = std::sqrt(bw * bw * p * p - 4.0 * w0sq);
        add_section_for_pole((bw * p + disc) * 0.5);
        add_section_for_pole((bw * p - disc) * 0.5);
    }
    if (spec.order % 2 == 1) {
        // real prototype pole at -1; its two passband roots may be a complex
        // pair or two real poles, either way they share one section
        const cplx disc = std::sqrt(cplx(bw * bw - 4.0 * w0sq, 0.0));
        const cplx sa = (-bw + disc) * 0.5;
        const cplx sb = (-bw - disc) * 0.5;
        const cplx za = (K + sa) / (K - sa);
        const cplx zb = (K + sb) / (K - sb);
        BiquadSection sec;
        sec.b0 = 1.0;
        sec.b1 = 0.0;
        sec.b2 = -1.0;
        sec.a1 = -(za + zb).real();
        sec.a2 = (za * zb).real();
        filt.sections.push_back(sec);
    }

    // normalize each section to unit gain at the design center frequency
    const double f0 = bandpass_center_hz(spec);
    const double omega0 = 2.0 * kPi * f0 / fs;
    for (auto& sec : filt.sections) {
        const double g = std::abs(section_response(sec, omega0));
        sec.b0 /= g;
        sec.b1 /= g;
        sec.b2 /= g;
    }
    return filt;
}

}  // namespace

double bandpass_center_hz(const FilterSpec& spec) {
    const double fs = spec.sample_rate_hz;
    const double w0 = std::sqrt(prewarp(spec.cutoff_low_hz, fs) *
                                prewarp(spec.cutoff_high_hz, fs));
    return fs / kPi * std::atan(w0 / (2.0 * fs));
}

DesignedFilter design_butterworth(const FilterSpec& spec) {
    validate(spec);
    if (spec.kind == FilterKind::bandpass) return design_bp(spec);
    return design_lp_hp(spec);
}

Signal apply_filter(const DesignedFilter& filter, const Signal& input) {
    if (input.sample_rate_hz != filter.spec.sample_rate_hz) {
        throw ModemError(ErrorCode::RateMismatch,
                         "signal and filter sample rates differ");
    }
    Signal out = input;
    for (const auto& sec : filter.sections) {
        // transposed direct form II, zero initial state
        double s1 = 0.0, s2 = 0.0;
        for (auto& v : out.samples) {
            const double x = v;
            const double y = sec.b0 * x + s1;
            s1 = sec.b1 * x - sec.a1 * y + s2;
            s2 = sec.b2 * x - sec.a2 * y;
            v = y;
        }
    }
    return out;
}

double frequency_response(const DesignedFilter& filter, double freq_hz) {
    const double fs = filter.spec.sample_rate_hz;
    if (freq_hz < 0.0 || freq_hz > fs / 2.0) {
        throw ModemError(ErrorCode::FrequencyOutOfRange,
                         "frequency must lie in [0, fs/2]");
    }
    const double omega = 2.0 * kPi * freq_hz / fs;
    double mag = 1.0;
    for (const auto& sec : filter.sections) {
        mag *= std::abs(section_response(sec, omega));
    }
    return mag;
}

double max_pole_magnitude(const DesignedFilter& filter) {
    double worst = 0.0;
    for (const auto& sec : filter.sections) {
        const cplx disc = std::sqrt(cplx(sec.a1 * sec.a1 - 4.0 * sec.a2, 0.0));
        const cplx r1 = (-sec.a1 + disc) * 0.5;
        const cplx r2 = (-sec.a1 - disc) * 0.5;
        worst = std::max({worst, std::abs(r1), std::abs(r2)});
    }
    return worst;
}

}  // namespace audiomodem
