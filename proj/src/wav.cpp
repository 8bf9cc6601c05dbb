#include "audiomodem/wav.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <vector>

#include "audiomodem/error.hpp"

namespace audiomodem {

namespace {

struct WavPayload {
    WavMetadata meta;
    std::vector<std::int16_t> frames;  // interleaved
};

std::uint32_t read_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

WavPayload parse_wav(const std::string& path, bool want_samples) {
    if (!std::filesystem::exists(path)) {
        throw ModemError(ErrorCode::FileNotFound, path);
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ModemError(ErrorCode::IoFailure, "cannot open " + path);
    }
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw ModemError(ErrorCode::IoFailure, "read failed on " + path);
    }

    if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
        std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
        throw ModemError(ErrorCode::MalformedWav, "missing RIFF/WAVE header: " + path);
    }

    WavPayload out;
    bool have_fmt = false;
    bool have_data = false;
    std::size_t pos = 12;
    while (pos + 8 <= bytes.size() && !have_data) {
        const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
        const std::uint32_t chunk_size = read_u32(bytes.data() + pos + 4);
        const std::size_t body = pos + 8;
        if (body + chunk_size > bytes.size()) {
            throw ModemError(ErrorCode::MalformedWav, "truncated chunk in " + path);
        }
        if (std::memcmp(id, "fmt ", 4) == 0) {
            if (chunk_size < 16) {
                throw ModemError(ErrorCode::MalformedWav, "fmt chunk too small: " + path);
            }
            const std::uint16_t format_tag = read_u16(bytes.data() + body);
            out.meta.channel_count = read_u16(bytes.data() + body + 2);
            out.meta.sample_rate_hz = read_u32(bytes.data() + body + 4);
            out.meta.bits_per_sample = read_u16(bytes.data() + body + 14);
            if (out.meta.channel_count == 0 || out.meta.sample_rate_hz == 0) {
                throw ModemError(ErrorCode::MalformedWav, "bad fmt fields in " + path);
            }
            if (format_tag != 1) {
                throw ModemError(ErrorCode::UnsupportedFormat,
                                 "only PCM (format tag 1) is supported: " + path);
            }
            if (out.meta.bits_per_sample != 16) {
                throw ModemError(ErrorCode::UnsupportedFormat,
                                 "only 16-bit samples are supported: " + path);
            }
            have_fmt = true;
        } else if (std::memcmp(id, "data", 4) == 0) {
            if (!have_fmt) {
                throw ModemError(ErrorCode::MalformedWav, "data chunk before fmt: " + path);
            }
            const std::size_t frame_bytes = 2u * out.meta.channel_count;
            if (chunk_size % frame_bytes != 0) {
                throw ModemError(ErrorCode::MalformedWav,
                                 "data size not a whole number of frames: " + path);
            }
            if (want_samples) {
                const std::size_t count = chunk_size / 2;
                out.frames.resize(count);
                for (std::size_t i = 0; i < count; ++i) {
                    const std::uint16_t raw = read_u16(bytes.data() + body + 2 * i);
                    out.frames[i] = static_cast<std::int16_t>(raw);
                }
            }
            have_data = true;
        }
        pos = body + chunk_size + (chunk_size % 2);  // chunks are word-aligned
    }

    if (!have_fmt || !have_data) {
        throw ModemError(ErrorCode::MalformedWav, "missing fmt or data chunk: " + path);
    }
    return out;
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
    out.push_back(static_cast<unsigned char>(v & 0xff));
    out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
    out.push_back(static_cast<unsigned char>((v >> 16) & 0xff));
    out.push_back(static_cast<unsigned char>((v >> 24) & 0xff));
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
    out.push_back(static_cast<unsigned char>(v & 0xff));
    out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
}

}  // namespace

WavMetadata wav_metadata(const std::string& path) {
    return parse_wav(path, false).meta;
}

Signal read_wav(const std::string& path) {
    WavPayload payload = parse_wav(path, true);
    Signal sig;
    sig.sample_rate_hz = payload.meta.sample_rate_hz;
    const std::size_t channels = payload.meta.channel_count;
    const std::size_t frames = payload.frames.size() / channels;
    sig.samples.resize(frames);
    for (std::size_t i = 0; i < frames; ++i) {
        sig.samples[i] = payload.frames[i * channels] / 32768.0;
    }
    return sig;
}

void write_wav(const std::string& path, const Signal& signal) {
    const double fs = signal.sample_rate_hz;
    if (!(fs > 0.0) || fs != std::floor(fs) || fs > 4294967295.0) {
        throw ModemError(ErrorCode::InvalidArgument,
                         "sample rate must be a positive integer");
    }
    for (double s : signal.samples) {
        if (!(std::fabs(s) <= 1.0 + 1e-9)) {
            throw ModemError(ErrorCode::SampleOutOfRange,
                             "sample magnitude exceeds 1: " + std::to_string(s));
        }
    }

    const std::uint32_t rate = static_cast<std::uint32_t>(fs);
    const std::uint32_t data_bytes = static_cast<std::uint32_t>(2 * signal.samples.size());

    std::vector<unsigned char> out;
    out.reserve(44 + data_bytes);
    out.insert(out.end(), {'R', 'I', 'F', 'F'});
    put_u32(out, 36 + data_bytes);
    out.insert(out.end(), {'W', 'A', 'V', 'E'});
    out.insert(out.end(), {'f', 'm', 't', ' '});
    put_u32(out, 16);
    put_u16(out, 1);           // PCM
    put_u16(out, 1);           // mono
    put_u32(out, rate);
    put_u32(out, rate * 2);    // byte rate
    put_u16(out, 2);           // block align
    put_u16(out, 16);          // bits per sample
    out.insert(out.end(), {'d', 'a', 't', 'a'});
    put_u32(out, data_bytes);

    for (double s : signal.samples) {
        // round half away from zero, clamp to the int16 range
        double q = s * 32768.0;
        q = q >= 0.0 ? std::floor(q + 0.5) : std::ceil(q - 0.5);
        if (q > 32767.0) q = 32767.0;
        if (q < -32768.0) q = -32768.0;
        const auto v = static_cast<std::int16_t>(q);
        put_u16(out, static_cast<std::uint16_t>(v));
    }

    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw ModemError(ErrorCode::IoFailure, "cannot open for writing: " + path);
    }
    file.write(reinterpret_cast<const char*>(out.data()),
               static_cast<std::streamsize>(out.size()));
    file.flush();
    if (!file) {
        throw ModemError(ErrorCode::IoFailure, "write failed: " + path);
    }
}

}  // namespace audiomodem
