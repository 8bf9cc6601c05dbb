#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "audiomodem/channel.hpp"
#include "audiomodem/fft.hpp"
#include "audiomodem/signal.hpp"

namespace testsup {

constexpr double kPi = 3.14159265358979323846;

// small deterministic generator for test inputs
struct Lcg {
    std::uint64_t state;
    explicit Lcg(std::uint64_t seed) : state(seed) {}
    std::uint64_t next_u64() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return state;
    }
    double uniform() {  // [0, 1)
        return static_cast<double>(next_u64() >> 11) / 9007199254740992.0;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::size_t below(std::size_t n) {
        return static_cast<std::size_t>(next_u64() % n);
    }
};

inline double rms(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc / static_cast<double>(v.size()));
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

inline double mean(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

inline double variance(const std::vector<double>& v) {
    const double m = mean(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return acc / static_cast<double>(v.size());
}

// direct O(n) Pearson correlation of equal-length slices
inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = std::min(a.size(), b.size());
    double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sa += a[i];
        sb += b[i];
        saa += a[i] * a[i];
        sbb += b[i] * b[i];
        sab += a[i] * b[i];
    }
    const double nn = static_cast<double>(n);
    const double num = nn * sab - sa * sb;
    const double den = std::sqrt((nn * saa - sa * sa) * (nn * sbb - sb * sb));
    return den > 0 ? num / den : 0.0;
}

// magnitude of the analytic signal; accurate away from the two edges
inline std::vector<double> hilbert_envelope(const audiomodem::Signal& s) {
    const std::size_t n = s.samples.size();
    std::vector<std::complex<double>> buf(n);
    for (std::size_t i = 0; i < n; ++i) buf[i] = s.samples[i];
    audiomodem::fft(buf, false);
    for (std::size_t k = 1; k < (n + 1) / 2; ++k) buf[k] *= 2.0;
    for (std::size_t k = n / 2 + 1; k < n; ++k) buf[k] = 0.0;
    audiomodem::fft(buf, true);
    std::vector<double> env(n);
    for (std::size_t i = 0; i < n; ++i) env[i] = std::abs(buf[i]);
    return env;
}

// amplitude of the freq_hz component via quadrature projection
inline double tone_amplitude(const audiomodem::Signal& s, double freq_hz) {
    const double w = 2.0 * kPi * freq_hz / s.sample_rate_hz;
    double c = 0.0, q = 0.0;
    for (std::size_t n = 0; n < s.samples.size(); ++n) {
        c += s.samples[n] * std::cos(w * static_cast<double>(n));
        q += s.samples[n] * std::sin(w * static_cast<double>(n));
    }
    const double scale = 2.0 / static_cast<double>(s.samples.size());
    return scale * std::hypot(c, q);
}

inline std::size_t argmax_bin(const audiomodem::Spectrum& spec) {
    return static_cast<std::size_t>(
        std::max_element(spec.power.begin(), spec.power.end()) - spec.power.begin());
}

// sqrt of the power integrated over center_bin +- halfwidth bins; a
// leakage-robust stand-in for a component's amplitude (up to a common factor)
inline double band_amplitude(const audiomodem::Spectrum& spec,
                             std::size_t center_bin, std::size_t halfwidth) {
    const std::size_t lo = center_bin > halfwidth ? center_bin - halfwidth : 0;
    const std::size_t hi = std::min(center_bin + halfwidth + 1, spec.power.size());
    double acc = 0.0;
    for (std::size_t k = lo; k < hi; ++k) acc += spec.power[k] * spec.bin_hz;
    return std::sqrt(acc);
}

// width in Hz of the smallest contiguous bin window holding `fraction` of
// the total power
inline double occupied_bandwidth(const audiomodem::Spectrum& spec, double fraction) {
    double total = 0.0;
    for (double p : spec.power) total += p;
    const double target = fraction * total;
    std::size_t best = spec.power.size();
    double acc = 0.0;
    std::size_t lo = 0;
    for (std::size_t hi = 0; hi < spec.power.size(); ++hi) {
        acc += spec.power[hi];
        while (acc - spec.power[lo] >= target && lo < hi) {
            acc -= spec.power[lo];
            ++lo;
        }
        if (acc >= target) best = std::min(best, hi - lo + 1);
    }
    return static_cast<double>(best) * spec.bin_hz;
}

inline audiomodem::Signal noise_signal(std::size_t count, double fs, double sigma,
                                       std::uint64_t seed) {
    audiomodem::GaussianNoise rng(seed);
    audiomodem::Signal s;
    s.sample_rate_hz = fs;
    s.samples.resize(count);
    for (auto& v : s.samples) v = sigma * rng.next();
    return s;
}

}  // namespace testsup
