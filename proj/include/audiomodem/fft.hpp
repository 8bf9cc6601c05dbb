#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace audiomodem {

// In-place complex FFT for any size >= 1. Power-of-two sizes run the
// iterative radix-2 path; everything else goes through Bluestein's
// chirp-z algorithm on top of it. inverse=true applies the 1/N factor.
void fft(std::vector<std::complex<double>>& data, bool inverse);

std::size_t next_power_of_two(std::size_t n);

}  // namespace audiomodem
