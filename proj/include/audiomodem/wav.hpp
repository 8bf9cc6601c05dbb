#pragma once

#include <string>

#include "audiomodem/signal.hpp"

namespace audiomodem {

struct WavMetadata {
    unsigned sample_rate_hz = 0;
    unsigned channel_count = 0;
    unsigned bits_per_sample = 0;
};

// Parse the header chunks only.
WavMetadata wav_metadata(const std::string& path);

// Read a RIFF/WAVE file containing 16-bit PCM. Channel 0 is extracted and
// integer samples map to reals by dividing by 32768.
Signal read_wav(const std::string& path);

// Write mono 16-bit PCM with the canonical 44-byte header, overwriting any
// existing file. Samples must lie in [-1, 1]; quantization rounds half away
// from zero and clamps to [-32768, 32767]. Byte-deterministic.
void write_wav(const std::string& path, const Signal& signal);

}  // namespace audiomodem
