#include "audiomodem/fft.hpp"

#include <cmath>

namespace audiomodem {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n < 2) return;

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * kPi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        const std::complex<double> wstep(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wstep;
            }
        }
    }

    if (inverse) {
        const double inv_n = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= inv_n;
    }
}

// Bluestein: X_k = w_k * (u (*) v)_k with u_n = a_n*w_n, w_n = e^{-j*pi*n^2/N},
// v_n = conj(w_n) wrapped circularly for negative indices.
void fft_bluestein(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    const std::size_t m = next_power_of_two(2 * n - 1);

    std::vector<std::complex<double>> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        // i^2 mod 2n keeps the chirp argument small for precision
        const unsigned long long sq = (static_cast<unsigned long long>(i) * i)
                                      % (2ull * n);
        const double ang = kPi * static_cast<double>(sq) / static_cast<double>(n)
                           * (inverse ? 1.0 : -1.0);
        w[i] = std::complex<double>(std::cos(ang), -std::sin(ang));
    }

    std::vector<std::complex<double>> u(m), v(m);
    for (std::size_t i = 0; i < n; ++i) u[i] = a[i] * w[i];
    v[0] = std::conj(w[0]);
    for (std::size_t i = 1; i < n; ++i) {
        v[i] = std::conj(w[i]);
        v[m - i] = std::conj(w[i]);
    }

    fft_radix2(u, false);
    fft_radix2(v, false);
    for (std::size_t i = 0; i < m; ++i) u[i] *= v[i];
    fft_radix2(u, true);

    for (std::size_t i = 0; i < n; ++i) a[i] = u[i] * w[i];
    if (inverse) {
        const double inv_n = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= inv_n;
    }
}

}  // namespace

std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void fft(std::vector<std::complex<double>>& data, bool inverse) {
    if (data.size() < 2) return;
    if (is_power_of_two(data.size())) {
        fft_radix2(data, inverse);
    } else {
        fft_bluestein(data, inverse);
    }
}

}  // namespace audiomodem
