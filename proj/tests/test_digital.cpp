#include <cmath>
#include <string>

#include "audiomodem/channel.hpp"
#include "audiomodem/digital.hpp"
#include "audiomodem/error.hpp"
#include "audiomodem/signal.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace audiomodem;

namespace {

// fast in-spec operating point for the heavier loops
BfskParams fast_bfsk() {
    BfskParams p;
    p.sample_rate_hz = 22050.0;
    p.bit_rate = 10.0;
    return p;
}

QamParams fast_qam() {
    QamParams p;
    p.sample_rate_hz = 22050.0;
    p.bit_rate = 10.0;
    return p;
}

BitFrame byte_frame(unsigned value, double bit_rate) {
    BitFrame f;
    f.bit_rate = bit_rate;
    for (int b = 7; b >= 0; --b) {
        f.bits.push_back(static_cast<std::uint8_t>((value >> b) & 1u));
    }
    return f;
}

std::string random_ascii(testsup::Lcg& rng, std::size_t len) {
    std::string s;
    for (std::size_t i = 0; i < len; ++i) {
        s.push_back(static_cast<char>(32 + rng.below(95)));
    }
    return s;
}

}  // namespace

TEST_CASE("text_to_bits expands 'h' MSB first") {
    const BitFrame f = text_to_bits("h", 1.0);
    const std::vector<std::uint8_t> expected = {0, 1, 1, 0, 1, 0, 0, 0};
    CHECK(f.bits == expected);
}

TEST_CASE("empty text gives an empty frame and back") {
    CHECK(text_to_bits("", 1.0).bits.empty());
    BitFrame empty;
    CHECK(bits_to_text(empty).empty());
}

TEST_CASE("text framing round-trips arbitrary ASCII") {
    testsup::Lcg rng(31);
    for (int i = 0; i < 100; ++i) {
        const std::string s = random_ascii(rng, 1 + rng.below(12));
        CHECK(bits_to_text(text_to_bits(s, 1.0)) == s);
    }
}

TEST_CASE("a zero byte maps to a preserved NUL character") {
    const BitFrame f = byte_frame(0, 1.0);
    const std::string s = bits_to_text(f);
    REQUIRE(s.size() == 1);
    CHECK(s[0] == '\0');
}

TEST_CASE("framing error cases") {
    CHECK_THROWS_AS(text_to_bits("caf\xc3\xa9", 1.0), ModemError);  // UTF-8 bytes
    BitFrame f;
    f.bits.assign(7, 0);
    try {
        bits_to_text(f);
        FAIL("expected a throw");
    } catch (const ModemError& e) {
        CHECK(e.code() == ErrorCode::FrameLengthNotByteAligned);
    }
}

TEST_CASE("one zero bit is exactly one second of the f1 tone") {
    BitFrame f;
    f.bits = {0};
    f.bit_rate = 1.0;
    const BfskParams p;
    const Signal s = bfsk_modulate(f, p);
    const Signal reference = generate_tone(4000.0, 1.0, 0.0, 1.0, 44100.0);
    REQUIRE(s.samples.size() == 44100);
    CHECK(s.samples == reference.samples);
}

TEST_CASE("eight bits at 1 bit/s occupy 8 seconds of samples") {
    const Signal s = bfsk_modulate(text_to_bits("h", 1.0), BfskParams{});
    CHECK(s.samples.size() == 352800);
}

TEST_CASE("per-symbol spectra sit on the keying tones") {
    BitFrame f;
    f.bits = {0, 1};
    f.bit_rate = 1.0;
    const Signal s = bfsk_modulate(f, BfskParams{});
    for (int k = 0; k < 2; ++k) {
        Signal symbol;
        symbol.sample_rate_hz = 44100.0;
        symbol.samples.assign(s.samples.begin() + k * 44100,
                              s.samples.begin() + (k + 1) * 44100);
        const Spectrum spec = power_spectral_density(symbol, 4410);
        const double peak_hz = testsup::argmax_bin(spec) * spec.bin_hz;
        CHECK(std::fabs(peak_hz - (k == 0 ? 4000.0 : 6000.0)) <= spec.bin_hz);
    }
}

TEST_CASE("bfsk modulator input validation") {
    BitFrame empty;
    empty.bit_rate = 1.0;
    CHECK_THROWS_AS(bfsk_modulate(empty, BfskParams{}), ModemError);

    BitFrame f;
    f.bits = {0};
    f.bit_rate = 8.0;  // 44100/8 is not a whole number
    try {
        bfsk_modulate(f, BfskParams{});
        FAIL("expected a throw");
    } catch (const ModemError& e) {
        CHECK(e.code() == ErrorCode::NonIntegralSymbolLength);
    }

    f.bit_rate = 1.0;
    BfskParams close;
    close.freq_zero_hz = 4000.0;
    close.freq_one_hz = 4300.0;  // spacing must exceed the 400 Hz branch width
    CHECK_THROWS_AS(bfsk_modulate(f, close), ModemError);
    BfskParams high;
    high.freq_one_hz = 23000.0;
    CHECK_THROWS_AS(bfsk_modulate(f, high), ModemError);

    BitFrame q = f;
    QamParams bad_scale;
    bad_scale.output_scale = 0.0;
    CHECK_THROWS_AS(qam_modulate(f, q, bad_scale), ModemError);
}

TEST_CASE("find_signal_start basics") {
    Signal s;
    s.sample_rate_hz = 44100.0;
    s.samples.assign(1000, 0.0);
    s.samples.resize(2000, 0.5);
    CHECK(find_signal_start(s, 0.1) == 1000);

    s.samples[0] = 0.9;
    CHECK(find_signal_start(s, 0.1) == 0);

    Signal low;
    low.sample_rate_hz = 44100.0;
    low.samples.assign(100, 0.05);
    try {
        find_signal_start(low, 0.1);
        FAIL("expected a throw");
    } catch (const ModemError& e) {
        CHECK(e.code() == ErrorCode::NoSampleAboveThreshold);
    }
}

TEST_CASE("find_signal_start is monotone in the threshold") {
    const Signal noise = testsup::noise_signal(5000, 44100.0, 0.3, 8);
    std::size_t prev = 0;
    for (double threshold : {0.05, 0.1, 0.3, 0.6}) {
        std::size_t idx;
        try {
            idx = find_signal_start(noise, threshold);
        } catch (const ModemError&) {
            break;  // nothing above an even larger threshold either
        }
        CHECK(idx >= prev);
        prev = idx;
    }
}

TEST_CASE("bfsk loopback with a quarter second of leading silence") {
    const BfskParams p;  // paper operating point: 44.1 kHz, 1 bit/s
    const BitFrame sent = text_to_bits("h", p.bit_rate);
    ChannelSpec ch;
    ch.lead_pad_s = 0.25;
    const Signal rx = apply_channel(bfsk_modulate(sent, p), ch);
    const BitFrame got = bfsk_demodulate(rx, sent.bits.size(), p);
    CHECK(got.bits == sent.bits);
    CHECK(bits_to_text(got) == "h");
}

TEST_CASE("a pure f1 tone decodes as bit zero") {
    const BfskParams p = fast_bfsk();
    const Signal tone = generate_tone(p.freq_zero_hz, 1.0, 0.0, 0.1, p.sample_rate_hz);
    const BitFrame got = bfsk_demodulate(tone, 1, p);
    REQUIRE(got.bits.size() == 1);
    CHECK(got.bits[0] == 0);
}

TEST_CASE("bfsk roundtrip is exact for all 256 byte values") {
    const BfskParams p = fast_bfsk();
    ChannelSpec ch;
    ch.lead_pad_s = 0.25;
    for (unsigned value = 0; value < 256; ++value) {
        const BitFrame sent = byte_frame(value, p.bit_rate);
        const Signal rx = apply_channel(bfsk_modulate(sent, p), ch);
        const BitFrame got = bfsk_demodulate(rx, 8, p);
        CHECK(got.bits == sent.bits);
    }
}

TEST_CASE("bfsk survives awgn at sigma 0.1") {
    const BfskParams p = fast_bfsk();
    testsup::Lcg rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const std::string text(1, static_cast<char>(32 + rng.below(95)));
        const BitFrame sent = text_to_bits(text, p.bit_rate);
        ChannelSpec ch;
        ch.noise_sigma = 0.1;
        ch.rng_seed = static_cast<std::uint64_t>(trial);
        const Signal rx = apply_channel(bfsk_modulate(sent, p), ch);
        const BitFrame got = bfsk_demodulate(rx, 8, p);
        CHECK(got.bits == sent.bits);
    }
}

TEST_CASE("bfsk decisions are invariant under received gain") {
    const BfskParams p = fast_bfsk();
    testsup::Lcg rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const BitFrame sent = byte_frame(static_cast<unsigned>(rng.below(256)), p.bit_rate);
        const Signal tx = bfsk_modulate(sent, p);
        const BitFrame base = bfsk_demodulate(tx, 8, p);
        for (double gain : {0.5, 2.0}) {
            const BitFrame scaled = bfsk_demodulate(scale(tx, gain), 8, p);
            CHECK(scaled.bits == base.bits);
        }
    }
}

TEST_CASE("bfsk demod of a silent capture reports no start") {
    const BfskParams p = fast_bfsk();
    Signal silence;
    silence.sample_rate_hz = p.sample_rate_hz;
    silence.samples.assign(4410, 0.0);
    try {
        bfsk_demodulate(silence, 1, p);
        FAIL("expected a throw");
    } catch (const ModemError& e) {
        CHECK(e.code() == ErrorCode::NoSampleAboveThreshold);
    }
}

TEST_CASE("bfsk truncation past the end of the capture") {
    const BfskParams p = fast_bfsk();
    BitFrame one;
    one.bits = {1};
    one.bit_rate = p.bit_rate;
    const Signal tx = bfsk_modulate(one, p);
    try {
        bfsk_demodulate(tx, 5, p);  // only one symbol exists
        FAIL("expected a throw");
    } catch (const ModemError& e) {
        CHECK(e.code() == ErrorCode::TruncationOutOfRange);
    }
}

TEST_CASE("qam with one arm active is a scaled cosine") {
    QamParams p;
    BitFrame i, q;
    i.bits = {1};
    q.bits = {0};
    const Signal s = qam_modulate(i, q, p);
    const Signal reference = scale(generate_tone(4000.0, 1.0, 0.0, 1.0, 44100.0), 0.5);
    REQUIRE(s.samples.size() == reference.samples.size());
    double worst = 0.0;
    for (std::size_t n = 0; n < s.samples.size(); ++n) {
        worst = std::max(worst, std::fabs(s.samples[n] - reference.samples[n]));
    }
    CHECK(worst == 0.0);
}

TEST_CASE("qam with both arms silent is silence") {
    QamParams p;
    BitFrame i, q;
    i.bits = {0};
    q.bits = {0};
    CHECK(testsup::max_abs(qam_modulate(i, q, p).samples) == 0.0);
}

TEST_CASE("qam with both arms active peaks at scale*Ac*sqrt(2)") {
    QamParams p;
    BitFrame i, q;
    i.bits = {1};
    q.bits = {1};
    const Signal s = qam_modulate(i, q, p);
    const double expected = 0.5 * std::sqrt(2.0);
    CHECK(testsup::max_abs(s.samples) == doctest::Approx(expected).epsilon(0.001 / expected));
}

TEST_CASE("qam frame validation") {
    QamParams p;
    BitFrame i, q;
    i.bits = {1, 0};
    q.bits = {1};
    try {
        qam_modulate(i, q, p);
        FAIL("expected a throw");
    } catch (const ModemError& e) {
        CHECK(e.code() == ErrorCode::FrameLengthMismatch);
    }
}

TEST_CASE("qam loopback recovers both arms exactly") {
    const QamParams p;  // 44.1 kHz, 1 bit/s
    const BitFrame sent_i = text_to_bits("h", p.bit_rate);
    const BitFrame sent_q = text_to_bits("i", p.bit_rate);
    const auto [got_i, got_q] =
        qam_demodulate(qam_modulate(sent_i, sent_q, p), 8, p);
    CHECK(got_i.bits == sent_i.bits);
    CHECK(got_q.bits == sent_q.bits);
    CHECK(bits_to_text(got_i) == "h");
    CHECK(bits_to_text(got_q) == "i");
}

TEST_CASE("qam of silence decodes to zero bits") {
    QamParams p;
    Signal zero;
    zero.sample_rate_hz = p.sample_rate_hz;
    zero.samples.assign(44100 * 2, 0.0);
    const auto [i, q] = qam_demodulate(zero, 2, p);
    CHECK(i.bits == std::vector<std::uint8_t>{0, 0});
    CHECK(q.bits == std::vector<std::uint8_t>{0, 0});
}

TEST_CASE("quadrature arms stay separated by at least 4x") {
    const QamParams p = fast_qam();
    BitFrame i, q;
    i.bits = {1, 1};
    q.bits = {0, 0};
    i.bit_rate = q.bit_rate = p.bit_rate;
    const Signal s = qam_modulate(i, q, p);

    // re-run the product detection to inspect per-symbol means
    const double w = 2.0 * testsup::kPi * p.carrier_freq_hz;
    Signal arm_i = s, arm_q = s;
    for (std::size_t n = 0; n < s.samples.size(); ++n) {
        const double t = static_cast<double>(n) / p.sample_rate_hz;
        arm_i.samples[n] = s.samples[n] * 2.0 * std::cos(w * t);
        arm_q.samples[n] = s.samples[n] * 2.0 * std::sin(w * t);
    }
    const std::size_t spb = static_cast<std::size_t>(p.sample_rate_hz / p.bit_rate);
    for (int k = 0; k < 2; ++k) {
        double mi = 0.0, mq = 0.0;
        for (std::size_t n = k * spb; n < (k + 1) * spb; ++n) {
            mi += arm_i.samples[n];
            mq += arm_q.samples[n];
        }
        CHECK(mi >= 4.0 * std::fabs(mq));
    }
}

TEST_CASE("qam roundtrip over 100 random equal-length pairs") {
    const QamParams p = fast_qam();
    testsup::Lcg rng(57);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t len = 1 + rng.below(2);
        const std::string a = random_ascii(rng, len);
        const std::string b = random_ascii(rng, len);
        const BitFrame sent_i = text_to_bits(a, p.bit_rate);
        const BitFrame sent_q = text_to_bits(b, p.bit_rate);
        const auto [got_i, got_q] =
            qam_demodulate(qam_modulate(sent_i, sent_q, p), sent_i.bits.size(), p);
        CHECK(got_i.bits == sent_i.bits);
        CHECK(got_q.bits == sent_q.bits);
    }
}

TEST_CASE("qam demod needs enough samples for the requested bits") {
    const QamParams p = fast_qam();
    Signal s;
    s.sample_rate_hz = p.sample_rate_hz;
    s.samples.assign(1000, 0.0);
    try {
        qam_demodulate(s, 8, p);
        FAIL("expected a throw");
    } catch (const ModemError& e) {
        CHECK(e.code() == ErrorCode::TruncationOutOfRange);
    }
}

TEST_CASE("qam optional band-pass front end keeps a clean roundtrip") {
    const QamParams p = fast_qam();
    const BitFrame sent_i = text_to_bits("k", p.bit_rate);
    const BitFrame sent_q = text_to_bits("j", p.bit_rate);
    const Signal s = qam_modulate(sent_i, sent_q, p);
    const auto [got_i, got_q] = qam_demodulate(s, 8, p, 400.0);
    CHECK(got_i.bits == sent_i.bits);
    CHECK(got_q.bits == sent_q.bits);
}
