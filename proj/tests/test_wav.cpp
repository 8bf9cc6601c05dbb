#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "audiomodem/error.hpp"
#include "audiomodem/wav.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace audiomodem;

namespace {

std::filesystem::path tmp_path(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

std::vector<unsigned char> slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void dump(const std::filesystem::path& p, const std::vector<unsigned char>& bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

std::int16_t data_word(const std::vector<unsigned char>& bytes, std::size_t index) {
    const std::size_t off = 44 + 2 * index;
    return static_cast<std::int16_t>(bytes[off] | (bytes[off + 1] << 8));
}

}  // namespace

TEST_CASE("wav roundtrip preserves samples within one quantization step") {
    testsup::Lcg rng(3);
    Signal sig;
    sig.sample_rate_hz = 44100.0;
    for (int i = 0; i < 5000; ++i) sig.samples.push_back(rng.uniform(-1.0, 1.0));
    const auto path = tmp_path("roundtrip.wav");
    write_wav(path.string(), sig);
    const Signal back = read_wav(path.string());
    REQUIRE(back.samples.size() == sig.samples.size());
    CHECK(back.sample_rate_hz == 44100.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < sig.samples.size(); ++i) {
        worst = std::max(worst, std::fabs(back.samples[i] - sig.samples[i]));
    }
    CHECK(worst <= 1.0 / 32767.0);
}

TEST_CASE("a single zero sample encodes as integer zero") {
    Signal sig;
    sig.sample_rate_hz = 44100.0;
    sig.samples = {0.0};
    const auto path = tmp_path("zero.wav");
    write_wav(path.string(), sig);
    const auto bytes = slurp(path);
    REQUIRE(bytes.size() == 46);
    CHECK(data_word(bytes, 0) == 0);
    CHECK(wav_metadata(path.string()).sample_rate_hz == 44100);
    CHECK(wav_metadata(path.string()).bits_per_sample == 16);
}

TEST_CASE("full-scale values clamp to the int16 range") {
    Signal sig;
    sig.sample_rate_hz = 44100.0;
    sig.samples = {1.0, -1.0};
    const auto path = tmp_path("fullscale.wav");
    write_wav(path.string(), sig);
    const auto bytes = slurp(path);
    CHECK(data_word(bytes, 0) == 32767);
    CHECK(data_word(bytes, 1) == -32768);
}

TEST_CASE("quantization rounds half away from zero") {
    Signal sig;
    sig.sample_rate_hz = 44100.0;
    sig.samples = {0.5 / 32768.0, -0.5 / 32768.0, 1.5 / 32768.0};
    const auto path = tmp_path("rounding.wav");
    write_wav(path.string(), sig);
    const auto bytes = slurp(path);
    CHECK(data_word(bytes, 0) == 1);
    CHECK(data_word(bytes, 1) == -1);
    CHECK(data_word(bytes, 2) == 2);
}

TEST_CASE("zero-length data chunk reads back as an empty signal") {
    Signal sig;
    sig.sample_rate_hz = 22050.0;
    const auto path = tmp_path("empty.wav");
    write_wav(path.string(), sig);
    const Signal back = read_wav(path.string());
    CHECK(back.samples.empty());
    CHECK(back.sample_rate_hz == 22050.0);
}

TEST_CASE("rewriting a path truncates the previous contents") {
    Signal longer, shorter;
    longer.sample_rate_hz = shorter.sample_rate_hz = 44100.0;
    longer.samples.assign(1000, 0.25);
    shorter.samples.assign(10, 0.25);
    const auto path = tmp_path("rewrite.wav");
    write_wav(path.string(), longer);
    write_wav(path.string(), shorter);
    CHECK(slurp(path).size() == 44 + 2 * 10);
}

TEST_CASE("writing is byte-deterministic") {
    testsup::Lcg rng(77);
    Signal sig;
    sig.sample_rate_hz = 22050.0;
    for (int i = 0; i < 999; ++i) sig.samples.push_back(rng.uniform(-0.9, 0.9));
    const auto p1 = tmp_path("det1.wav");
    const auto p2 = tmp_path("det2.wav");
    write_wav(p1.string(), sig);
    write_wav(p2.string(), sig);
    CHECK(slurp(p1) == slurp(p2));
}

TEST_CASE("reader extracts channel 0 of a stereo file") {
    const auto good = tmp_path("stereo_base.wav");
    Signal mono;
    mono.sample_rate_hz = 44100.0;
    mono.samples = {0.0, 0.0, 0.0, 0.0};  // room for two stereo frames
    write_wav(good.string(), mono);
    auto bytes = slurp(good);
    bytes[22] = 2;                       // channels = 2
    // data: frames (L=100, R=-7), (L=200, R=-9)
    const std::int16_t words[4] = {100, -7, 200, -9};
    for (int i = 0; i < 4; ++i) {
        bytes[44 + 2 * i] = static_cast<unsigned char>(words[i] & 0xff);
        bytes[44 + 2 * i + 1] = static_cast<unsigned char>((words[i] >> 8) & 0xff);
    }
    const auto path = tmp_path("stereo.wav");
    dump(path, bytes);
    const Signal back = read_wav(path.string());
    REQUIRE(back.samples.size() == 2);
    CHECK(back.samples[0] == doctest::Approx(100.0 / 32768.0));
    CHECK(back.samples[1] == doctest::Approx(200.0 / 32768.0));
}

TEST_CASE("malformed and unsupported inputs are rejected by name") {
    const auto base = tmp_path("wav_base.wav");
    Signal sig;
    sig.sample_rate_hz = 44100.0;
    sig.samples = {0.1, 0.2};
    write_wav(base.string(), sig);
    const auto bytes = slurp(base);

    SUBCASE("missing file") {
        try {
            read_wav(tmp_path("no_such_file.wav").string());
            FAIL("expected a throw");
        } catch (const ModemError& e) {
            CHECK(e.code() == ErrorCode::FileNotFound);
        }
    }
    SUBCASE("truncated header") {
        const auto path = tmp_path("trunc.wav");
        dump(path, {bytes.begin(), bytes.begin() + 20});
        try {
            read_wav(path.string());
            FAIL("expected a throw");
        } catch (const ModemError& e) {
            CHECK(e.code() == ErrorCode::MalformedWav);
        }
    }
    SUBCASE("non-PCM format tag") {
        auto patched = bytes;
        patched[20] = 3;  // IEEE float
        const auto path = tmp_path("float.wav");
        dump(path, patched);
        try {
            read_wav(path.string());
            FAIL("expected a throw");
        } catch (const ModemError& e) {
            CHECK(e.code() == ErrorCode::UnsupportedFormat);
        }
    }
    SUBCASE("8-bit samples") {
        auto patched = bytes;
        patched[34] = 8;
        const auto path = tmp_path("8bit.wav");
        dump(path, patched);
        try {
            read_wav(path.string());
            FAIL("expected a throw");
        } catch (const ModemError& e) {
            CHECK(e.code() == ErrorCode::UnsupportedFormat);
        }
    }
}

TEST_CASE("write_wav rejects out-of-range samples and bad rates") {
    Signal sig;
    sig.sample_rate_hz = 44100.0;
    sig.samples = {1.1};
    try {
        write_wav(tmp_path("bad.wav").string(), sig);
        FAIL("expected a throw");
    } catch (const ModemError& e) {
        CHECK(e.code() == ErrorCode::SampleOutOfRange);
    }
    sig.samples = {0.5};
    sig.sample_rate_hz = 44100.5;
    CHECK_THROWS_AS(write_wav(tmp_path("bad.wav").string(), sig), ModemError);
}
