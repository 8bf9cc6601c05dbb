// audiomodem: file-in/file-out audio-band modem pipelines.
//
// Subcommands cover the four schemes (am/fm/bfsk/qam mod+demod), a
// deterministic channel simulator, a PSD-to-CSV exporter and a one-shot
// loopback runner. All defaults match the reference operating point
// (4 kHz carrier at 44.1 kHz, ka=0.3, kf=2.5, 4/6 kHz keying tones).
//
// Exit codes: 0 success, 1 domain error (message names the error case),
// 2 usage error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#include "CLI11.hpp"
#include "audiomodem/analog.hpp"
#include "audiomodem/channel.hpp"
#include "audiomodem/digital.hpp"
#include "audiomodem/error.hpp"
#include "audiomodem/signal.hpp"
#include "audiomodem/spectrum_csv.hpp"
#include "audiomodem/wav.hpp"

using namespace audiomodem;

namespace {

constexpr double kWavPeak = 0.9;

void check_rate_override(double fs) {
    if (fs != 44100.0 && fs != 22050.0) {
        throw ModemError(ErrorCode::InvalidArgument,
                         "sample rate must be 44100 or 22050 for sound-card compatibility");
    }
}

Signal clip_to_unit(Signal s) {
    for (auto& v : s.samples) v = std::clamp(v, -1.0, 1.0);
    return s;
}

// Demodulated (and analog modulated) waveforms carry arbitrary gain, so
// normalize to 0.9 peak before writing and clip the last epsilon away.
void write_normalized(const std::string& path, const Signal& s) {
    write_wav(path, clip_to_unit(normalize_peak(s, kWavPeak)));
}

std::size_t count_bit_errors(const BitFrame& sent, const BitFrame& got) {
    std::size_t errors = 0;
    for (std::size_t i = 0; i < sent.bits.size(); ++i) {
        if (got.bits.size() <= i || got.bits[i] != sent.bits[i]) ++errors;
    }
    return errors;
}

struct ChannelFlags {
    double noise_sigma = 0.0;
    double gain = 1.0;
    double lead_pad_s = 0.0;
    double pad_noise_sigma = 0.0;
    std::uint64_t seed = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--noise-sigma", noise_sigma, "AWGN standard deviation, volts")
            ->capture_default_str();
        cmd->add_option("--gain", gain, "channel gain")->capture_default_str();
        cmd->add_option("--lead-pad", lead_pad_s, "leading pad, seconds")
            ->capture_default_str();
        cmd->add_option("--pad-noise-sigma", pad_noise_sigma,
                        "noise level inside the pad, volts")
            ->capture_default_str();
        cmd->add_option("--seed", seed, "noise generator seed")->capture_default_str();
    }

    ChannelSpec spec() const {
        return ChannelSpec{noise_sigma, gain, lead_pad_s, pad_noise_sigma, seed};
    }
};

// Runs mod -> tx.wav -> channel -> rx.wav -> demod so a loopback really
// passes through WAV bytes on disk.
class LoopbackFiles {
  public:
    explicit LoopbackFiles(std::string workdir) : dir_(std::move(workdir)) {
        if (dir_.empty()) {
            auto base = std::filesystem::temp_directory_path() / "audiomodem-loopback";
            std::filesystem::create_directories(base);
            dir_ = base.string();
            cleanup_ = true;
        } else {
            std::filesystem::create_directories(dir_);
        }
    }
    ~LoopbackFiles() {
        if (cleanup_) {
            std::error_code ec;
            std::filesystem::remove_all(dir_, ec);
        }
    }

    Signal through(const Signal& tx, const ChannelSpec& spec, bool normalize_tx) {
        const std::string tx_path = dir_ + "/tx.wav";
        const std::string rx_path = dir_ + "/rx.wav";
        if (normalize_tx) {
            write_normalized(tx_path, tx);
        } else {
            write_wav(tx_path, clip_to_unit(tx));
        }
        const Signal on_disk = read_wav(tx_path);
        write_wav(rx_path, clip_to_unit(apply_channel(on_disk, spec)));
        return read_wav(rx_path);
    }

  private:
    std::string dir_;
    bool cleanup_ = false;
};

int run_cli(int argc, char** argv) {
    CLI::App app{"audio-band modem: AM, FM, BFSK and QAM over WAV files"};
    app.require_subcommand(1);

    // ---- am-mod ----------------------------------------------------------
    auto* am_mod = app.add_subcommand("am-mod", "amplitude-modulate a WAV message");
    std::string am_mod_in, am_mod_out;
    AmParams am_mod_p;
    am_mod->add_option("--in", am_mod_in, "message WAV")->required();
    am_mod->add_option("--out", am_mod_out, "passband WAV (normalized to 0.9 peak)")
        ->required();
    am_mod->add_option("--fc", am_mod_p.carrier_freq_hz, "carrier frequency, Hz")
        ->capture_default_str();
    am_mod->add_option("--amplitude", am_mod_p.carrier_amplitude, "carrier amplitude, V")
        ->capture_default_str();
    am_mod->add_option("--ka", am_mod_p.modulation_index, "modulation index, (0,1]")
        ->capture_default_str();
    am_mod->add_option("--message-gain", am_mod_p.message_gain, "message amplification")
        ->capture_default_str();
    am_mod->add_option("--message-bandwidth", am_mod_p.message_bandwidth_hz,
                       "message bandwidth W, Hz")
        ->capture_default_str();
    am_mod->add_option("--output-gain", am_mod_p.output_gain, "output amplification")
        ->capture_default_str();
    am_mod->callback([&] {
        Signal message = read_wav(am_mod_in);
        check_rate_override(message.sample_rate_hz);
        am_mod_p.sample_rate_hz = message.sample_rate_hz;
        write_normalized(am_mod_out, am_modulate(message, am_mod_p));
    });

    // ---- am-demod --------------------------------------------------------
    auto* am_demod = app.add_subcommand("am-demod", "envelope-detect an AM WAV");
    std::string am_demod_in, am_demod_out;
    AmParams am_demod_p;
    am_demod->add_option("--in", am_demod_in, "passband WAV")->required();
    am_demod->add_option("--out", am_demod_out, "recovered message WAV")->required();
    am_demod->add_option("--fc", am_demod_p.carrier_freq_hz, "carrier frequency, Hz")
        ->capture_default_str();
    am_demod->add_option("--noise-bpf-bandwidth", am_demod_p.noise_bpf_bandwidth_hz,
                         "receive band-pass width around fc, Hz")
        ->capture_default_str();
    am_demod->add_option("--envelope-lpf-cutoff", am_demod_p.envelope_lpf_cutoff_hz,
                         "envelope low-pass cutoff, Hz")
        ->capture_default_str();
    am_demod->add_option("--output-gain", am_demod_p.output_gain, "output amplification")
        ->capture_default_str();
    am_demod->add_option("--filter-order", am_demod_p.filter_order,
                         "Butterworth stage order")
        ->capture_default_str();
    am_demod->callback([&] {
        Signal rx = read_wav(am_demod_in);
        check_rate_override(rx.sample_rate_hz);
        am_demod_p.sample_rate_hz = rx.sample_rate_hz;
        write_normalized(am_demod_out, am_demodulate(rx, am_demod_p));
    });

    // ---- fm-mod ----------------------------------------------------------
    auto* fm_mod = app.add_subcommand("fm-mod", "frequency-modulate a WAV message");
    std::string fm_mod_in, fm_mod_out;
    FmParams fm_mod_p;
    bool fm_mod_preemph = true;
    fm_mod->add_option("--in", fm_mod_in, "message WAV")->required();
    fm_mod->add_option("--out", fm_mod_out, "passband WAV (normalized to 0.9 peak)")
        ->required();
    fm_mod->add_option("--fc", fm_mod_p.carrier_freq_hz, "carrier frequency, Hz")
        ->capture_default_str();
    fm_mod->add_option("--amplitude", fm_mod_p.carrier_amplitude, "carrier amplitude, V")
        ->capture_default_str();
    fm_mod->add_option("--kf", fm_mod_p.freq_sensitivity_hz_per_volt,
                       "frequency sensitivity, Hz per volt")
        ->capture_default_str();
    fm_mod->add_option("--preemphasis-cutoff", fm_mod_p.preemphasis_cutoff_hz,
                       "pre-emphasis high-pass cutoff, Hz")
        ->capture_default_str();
    fm_mod->add_flag("--preemphasis,!--no-preemphasis", fm_mod_preemph,
                     "apply the pre-emphasis high-pass")
        ->capture_default_str();
    fm_mod->add_option("--output-gain", fm_mod_p.output_gain, "output amplification")
        ->capture_default_str();
    fm_mod->callback([&] {
        Signal message = read_wav(fm_mod_in);
        check_rate_override(message.sample_rate_hz);
        fm_mod_p.sample_rate_hz = message.sample_rate_hz;
        write_normalized(fm_mod_out, fm_modulate(message, fm_mod_p, fm_mod_preemph));
    });

    // ---- fm-demod --------------------------------------------------------
    auto* fm_demod = app.add_subcommand("fm-demod", "discriminate an FM WAV");
    std::string fm_demod_in, fm_demod_out;
    FmParams fm_demod_p;
    bool fm_demod_deemph = true;
    bool fm_demod_dc_removal = false;
    fm_demod->add_option("--in", fm_demod_in, "passband WAV")->required();
    fm_demod->add_option("--out", fm_demod_out, "recovered message WAV")->required();
    fm_demod->add_option("--fc", fm_demod_p.carrier_freq_hz, "carrier frequency, Hz")
        ->capture_default_str();
    fm_demod->add_option("--noise-bpf-bandwidth", fm_demod_p.noise_bpf_bandwidth_hz,
                         "receive band-pass width around fc, Hz")
        ->capture_default_str();
    fm_demod->add_option("--envelope-lpf-cutoff", fm_demod_p.envelope_lpf_cutoff_hz,
                         "envelope low-pass cutoff, Hz")
        ->capture_default_str();
    fm_demod->add_option("--deemphasis-cutoff", fm_demod_p.deemphasis_lpf_cutoff_hz,
                         "de-emphasis low-pass cutoff, Hz")
        ->capture_default_str();
    fm_demod->add_flag("--deemphasis,!--no-deemphasis", fm_demod_deemph,
                       "apply the de-emphasis low-pass")
        ->capture_default_str();
    fm_demod->add_option("--dc-removal-cutoff", fm_demod_p.dc_removal_hpf_cutoff_hz,
                         "DC-removal high-pass cutoff, Hz")
        ->capture_default_str();
    fm_demod->add_flag("--dc-removal", fm_demod_dc_removal,
                       "enable the DC-removal high-pass (off by default: after the "
                       "750 Hz de-emphasis it leaves almost no passband)")
        ->capture_default_str();
    fm_demod->add_option("--filter-order", fm_demod_p.filter_order,
                         "Butterworth stage order")
        ->capture_default_str();
    fm_demod->callback([&] {
        Signal rx = read_wav(fm_demod_in);
        check_rate_override(rx.sample_rate_hz);
        fm_demod_p.sample_rate_hz = rx.sample_rate_hz;
        write_normalized(fm_demod_out, fm_demodulate(rx, fm_demod_p, fm_demod_deemph,
                                                     fm_demod_dc_removal));
    });

    // ---- bfsk-mod --------------------------------------------------------
    auto* bfsk_mod = app.add_subcommand("bfsk-mod", "key ASCII text onto two tones");
    std::string bfsk_mod_text, bfsk_mod_out;
    BfskParams bfsk_mod_p;
    double bfsk_mod_fs = 44100.0;
    bfsk_mod->add_option("--text", bfsk_mod_text, "ASCII payload")->required();
    bfsk_mod->add_option("--out", bfsk_mod_out, "keyed WAV")->required();
    bfsk_mod->add_option("--f1", bfsk_mod_p.freq_zero_hz, "tone for bit 0, Hz")
        ->capture_default_str();
    bfsk_mod->add_option("--f2", bfsk_mod_p.freq_one_hz, "tone for bit 1, Hz")
        ->capture_default_str();
    bfsk_mod->add_option("--amplitude", bfsk_mod_p.carrier_amplitude, "tone amplitude, V")
        ->capture_default_str();
    bfsk_mod->add_option("--bit-rate", bfsk_mod_p.bit_rate, "bits per second")
        ->capture_default_str();
    bfsk_mod->add_option("--fs", bfsk_mod_fs, "sample rate (44100 or 22050)")
        ->capture_default_str();
    bfsk_mod->callback([&] {
        check_rate_override(bfsk_mod_fs);
        bfsk_mod_p.sample_rate_hz = bfsk_mod_fs;
        const BitFrame frame = text_to_bits(bfsk_mod_text, bfsk_mod_p.bit_rate);
        write_wav(bfsk_mod_out, bfsk_modulate(frame, bfsk_mod_p));
    });

    // ---- bfsk-demod ------------------------------------------------------
    auto* bfsk_demod = app.add_subcommand("bfsk-demod", "decode a BFSK WAV to text");
    std::string bfsk_demod_in;
    std::size_t bfsk_demod_bits = 0;
    BfskParams bfsk_demod_p;
    bfsk_demod->add_option("--in", bfsk_demod_in, "keyed WAV")->required();
    bfsk_demod->add_option("--bits", bfsk_demod_bits, "number of bits to decode")
        ->required();
    bfsk_demod->add_option("--f1", bfsk_demod_p.freq_zero_hz, "tone for bit 0, Hz")
        ->capture_default_str();
    bfsk_demod->add_option("--f2", bfsk_demod_p.freq_one_hz, "tone for bit 1, Hz")
        ->capture_default_str();
    bfsk_demod->add_option("--bit-rate", bfsk_demod_p.bit_rate, "bits per second")
        ->capture_default_str();
    bfsk_demod->add_option("--bpf-bandwidth", bfsk_demod_p.bpf_bandwidth_hz,
                           "branch band-pass width, Hz")
        ->capture_default_str();
    bfsk_demod->add_option("--start-threshold", bfsk_demod_p.start_threshold,
                           "start detection threshold, volts")
        ->capture_default_str();
    bfsk_demod->add_option("--filter-order", bfsk_demod_p.filter_order,
                           "Butterworth stage order")
        ->capture_default_str();
    bfsk_demod->callback([&] {
        Signal rx = read_wav(bfsk_demod_in);
        check_rate_override(rx.sample_rate_hz);
        bfsk_demod_p.sample_rate_hz = rx.sample_rate_hz;
        const BitFrame frame = bfsk_demodulate(rx, bfsk_demod_bits, bfsk_demod_p);
        std::printf("%s\n", bits_to_text(frame).c_str());
    });

    // ---- qam-mod ---------------------------------------------------------
    auto* qam_mod = app.add_subcommand(
        "qam-mod", "carry two ASCII payloads on quadrature carriers");
    std::string qam_mod_text_i, qam_mod_text_q, qam_mod_out;
    QamParams qam_mod_p;
    double qam_mod_fs = 44100.0;
    qam_mod->add_option("--text", qam_mod_text_i, "in-phase ASCII payload")->required();
    qam_mod->add_option("--text-q", qam_mod_text_q, "quadrature ASCII payload")
        ->required();
    qam_mod->add_option("--out", qam_mod_out, "modulated WAV")->required();
    qam_mod->add_option("--fc", qam_mod_p.carrier_freq_hz, "carrier frequency, Hz")
        ->capture_default_str();
    qam_mod->add_option("--amplitude", qam_mod_p.carrier_amplitude,
                        "carrier amplitude, V")
        ->capture_default_str();
    qam_mod->add_option("--bit-rate", qam_mod_p.bit_rate, "bits per second per arm")
        ->capture_default_str();
    qam_mod->add_option("--output-scale", qam_mod_p.output_scale,
                        "final scale keeping the sum inside +-1")
        ->capture_default_str();
    qam_mod->add_option("--fs", qam_mod_fs, "sample rate (44100 or 22050)")
        ->capture_default_str();
    qam_mod->callback([&] {
        check_rate_override(qam_mod_fs);
        qam_mod_p.sample_rate_hz = qam_mod_fs;
        write_wav(qam_mod_out,
                  qam_modulate(text_to_bits(qam_mod_text_i, qam_mod_p.bit_rate),
                               text_to_bits(qam_mod_text_q, qam_mod_p.bit_rate),
                               qam_mod_p));
    });

    // ---- qam-demod -------------------------------------------------------
    auto* qam_demod = app.add_subcommand("qam-demod", "decode a QAM WAV to two texts");
    std::string qam_demod_in;
    std::size_t qam_demod_bits = 0;
    QamParams qam_demod_p;
    double qam_demod_bpf = 0.0;
    qam_demod->add_option("--in", qam_demod_in, "modulated WAV")->required();
    qam_demod->add_option("--bits", qam_demod_bits, "bits per arm to decode")->required();
    qam_demod->add_option("--fc", qam_demod_p.carrier_freq_hz, "carrier frequency, Hz")
        ->capture_default_str();
    qam_demod->add_option("--amplitude", qam_demod_p.carrier_amplitude,
                          "carrier amplitude, V")
        ->capture_default_str();
    qam_demod->add_option("--bit-rate", qam_demod_p.bit_rate, "bits per second per arm")
        ->capture_default_str();
    qam_demod->add_option("--output-scale", qam_demod_p.output_scale,
                          "scale the transmitter applied")
        ->capture_default_str();
    qam_demod->add_option("--lpf-cutoff", qam_demod_p.lpf_cutoff_hz,
                          "arm low-pass cutoff, Hz (5000 accepted, barely rejects "
                          "the 2fc image)")
        ->capture_default_str();
    qam_demod->add_option("--input-bpf-bandwidth", qam_demod_bpf,
                          "optional band-pass front end width around fc, Hz (0 = off)")
        ->capture_default_str();
    qam_demod->add_option("--filter-order", qam_demod_p.filter_order,
                          "Butterworth stage order")
        ->capture_default_str();
    qam_demod->callback([&] {
        Signal rx = read_wav(qam_demod_in);
        check_rate_override(rx.sample_rate_hz);
        qam_demod_p.sample_rate_hz = rx.sample_rate_hz;
        const auto [frame_i, frame_q] =
            qam_demodulate(rx, qam_demod_bits, qam_demod_p, qam_demod_bpf);
        std::printf("%s\n%s\n", bits_to_text(frame_i).c_str(),
                    bits_to_text(frame_q).c_str());
    });

    // ---- channel ---------------------------------------------------------
    auto* channel = app.add_subcommand("channel", "pad/gain/noise channel simulator");
    std::string channel_in, channel_out;
    ChannelFlags channel_flags;
    bool channel_no_clip = false;
    channel->add_option("--in", channel_in, "input WAV")->required();
    channel->add_option("--out", channel_out, "output WAV")->required();
    channel_flags.attach(channel);
    channel->add_flag("--no-clip", channel_no_clip,
                      "fail on out-of-range samples instead of clamping to [-1, 1]");
    channel->callback([&] {
        const Signal out = apply_channel(read_wav(channel_in), channel_flags.spec());
        write_wav(channel_out, channel_no_clip ? out : clip_to_unit(out));
    });

    // ---- psd -------------------------------------------------------------
    auto* psd = app.add_subcommand("psd", "export a power spectral density as CSV");
    std::string psd_in, psd_out;
    std::size_t psd_segment = 4096;
    psd->add_option("--in", psd_in, "input WAV")->required();
    psd->add_option("--out", psd_out, "output CSV")->required();
    psd->add_option("--segment", psd_segment, "segment length, even, >= 16")
        ->capture_default_str();
    psd->callback([&] {
        export_spectrum_csv(power_spectral_density(read_wav(psd_in), psd_segment),
                            psd_out);
    });

    // ---- loopback --------------------------------------------------------
    auto* loopback = app.add_subcommand(
        "loopback", "modulate, pass through files and the channel, demodulate, report");
    std::string lb_scheme, lb_text, lb_text_q, lb_workdir;
    double lb_tone_hz = 500.0, lb_tone_amplitude = 1.0, lb_duration = 1.0;
    double lb_fs = 44100.0;
    double lb_fc = 4000.0, lb_amplitude = 1.0, lb_output_gain = 10.0;
    int lb_filter_order = 4;
    double lb_ka = 0.3, lb_message_gain = 1.0, lb_message_bandwidth = 1500.0;
    double lb_kf = 2.5, lb_preemph_cutoff = 750.0, lb_deemph_cutoff = 750.0;
    double lb_dc_removal_cutoff = 1000.0;
    bool lb_preemph = false, lb_deemph = true, lb_dc_removal = false;
    double lb_noise_bpf = 0.0;      // 0 = scheme default (3000 for am, 2000 for fm)
    double lb_envelope_lpf = 0.0;   // 0 = scheme default (1000 for am, 500 for fm)
    double lb_f1 = 4000.0, lb_f2 = 6000.0, lb_bit_rate = 1.0;
    double lb_bpf_bandwidth = 400.0, lb_start_threshold = 0.1;
    double lb_output_scale = 0.5, lb_lpf_cutoff = 2000.0, lb_input_bpf = 0.0;
    ChannelFlags lb_channel;
    loopback->add_option("--scheme", lb_scheme, "am, fm, bfsk or qam")
        ->required()
        ->check(CLI::IsMember({"am", "fm", "bfsk", "qam"}));
    loopback->add_option("--text", lb_text, "payload for bfsk/qam");
    loopback->add_option("--text-q", lb_text_q,
                         "quadrature payload for qam (defaults to --text)");
    loopback->add_option("--tone-hz", lb_tone_hz, "test tone for am/fm, Hz")
        ->capture_default_str();
    loopback->add_option("--tone-amplitude", lb_tone_amplitude, "test tone amplitude, V")
        ->capture_default_str();
    loopback->add_option("--duration", lb_duration, "test tone duration, seconds")
        ->capture_default_str();
    loopback->add_option("--fs", lb_fs, "sample rate (44100 or 22050)")
        ->capture_default_str();
    loopback->add_option("--workdir", lb_workdir,
                         "directory for tx/rx intermediates (default: temp, removed)");
    lb_channel.attach(loopback);
    loopback->add_option("--fc", lb_fc, "carrier frequency for am/fm/qam, Hz")
        ->capture_default_str();
    loopback->add_option("--amplitude", lb_amplitude, "carrier amplitude, V")
        ->capture_default_str();
    loopback->add_option("--filter-order", lb_filter_order, "Butterworth stage order")
        ->capture_default_str();
    loopback->add_option("--output-gain", lb_output_gain, "am/fm output amplification")
        ->capture_default_str();
    loopback->add_option("--ka", lb_ka, "am modulation index")->capture_default_str();
    loopback->add_option("--message-gain", lb_message_gain, "am message amplification")
        ->capture_default_str();
    loopback->add_option("--message-bandwidth", lb_message_bandwidth,
                         "am message bandwidth W, Hz")
        ->capture_default_str();
    loopback->add_option("--kf", lb_kf, "fm frequency sensitivity, Hz per volt")
        ->capture_default_str();
    loopback->add_option("--preemphasis-cutoff", lb_preemph_cutoff,
                         "fm pre-emphasis cutoff, Hz")
        ->capture_default_str();
    loopback->add_flag("--preemphasis,!--no-preemphasis", lb_preemph,
                       "fm pre-emphasis (default off: a bare test tone needs no "
                       "emphasis shaping)")
        ->capture_default_str();
    loopback->add_option("--deemphasis-cutoff", lb_deemph_cutoff,
                         "fm de-emphasis cutoff, Hz")
        ->capture_default_str();
    loopback->add_flag("--deemphasis,!--no-deemphasis", lb_deemph, "fm de-emphasis")
        ->capture_default_str();
    loopback->add_option("--dc-removal-cutoff", lb_dc_removal_cutoff,
                         "fm DC-removal cutoff, Hz")
        ->capture_default_str();
    loopback->add_flag("--dc-removal", lb_dc_removal, "fm DC-removal high-pass")
        ->capture_default_str();
    loopback->add_option("--noise-bpf-bandwidth", lb_noise_bpf,
                         "receive band-pass width, Hz (0 = scheme default)")
        ->capture_default_str();
    loopback->add_option("--envelope-lpf-cutoff", lb_envelope_lpf,
                         "envelope low-pass cutoff, Hz (0 = scheme default)")
        ->capture_default_str();
    loopback->add_option("--f1", lb_f1, "bfsk tone for bit 0, Hz")->capture_default_str();
    loopback->add_option("--f2", lb_f2, "bfsk tone for bit 1, Hz")->capture_default_str();
    loopback->add_option("--bit-rate", lb_bit_rate, "bfsk/qam bits per second")
        ->capture_default_str();
    loopback->add_option("--bpf-bandwidth", lb_bpf_bandwidth,
                         "bfsk branch band-pass width, Hz")
        ->capture_default_str();
    loopback->add_option("--start-threshold", lb_start_threshold,
                         "bfsk start detection threshold, volts")
        ->capture_default_str();
    loopback->add_option("--output-scale", lb_output_scale, "qam output scale")
        ->capture_default_str();
    loopback->add_option("--lpf-cutoff", lb_lpf_cutoff, "qam arm low-pass cutoff, Hz")
        ->capture_default_str();
    loopback->add_option("--input-bpf-bandwidth", lb_input_bpf,
                         "qam optional band-pass front end width, Hz (0 = off)")
        ->capture_default_str();
    loopback->callback([&] {
        check_rate_override(lb_fs);
        LoopbackFiles files(lb_workdir);

        if (lb_scheme == "am" || lb_scheme == "fm") {
            const Signal message =
                generate_tone(lb_tone_hz, lb_tone_amplitude, 0.0, lb_duration, lb_fs);
            Signal recovered;
            if (lb_scheme == "am") {
                AmParams p;
                p.carrier_freq_hz = lb_fc;
                p.carrier_amplitude = lb_amplitude;
                p.modulation_index = lb_ka;
                p.message_bandwidth_hz = lb_message_bandwidth;
                p.message_gain = lb_message_gain;
                p.output_gain = lb_output_gain;
                if (lb_noise_bpf > 0.0) p.noise_bpf_bandwidth_hz = lb_noise_bpf;
                if (lb_envelope_lpf > 0.0) p.envelope_lpf_cutoff_hz = lb_envelope_lpf;
                p.sample_rate_hz = lb_fs;
                p.filter_order = lb_filter_order;
                const Signal rx =
                    files.through(am_modulate(message, p), lb_channel.spec(), true);
                recovered = am_demodulate(rx, p);
            } else {
                FmParams p;
                p.carrier_freq_hz = lb_fc;
                p.carrier_amplitude = lb_amplitude;
                p.freq_sensitivity_hz_per_volt = lb_kf;
                p.preemphasis_cutoff_hz = lb_preemph_cutoff;
                if (lb_noise_bpf > 0.0) p.noise_bpf_bandwidth_hz = lb_noise_bpf;
                if (lb_envelope_lpf > 0.0) p.envelope_lpf_cutoff_hz = lb_envelope_lpf;
                p.deemphasis_lpf_cutoff_hz = lb_deemph_cutoff;
                p.dc_removal_hpf_cutoff_hz = lb_dc_removal_cutoff;
                p.output_gain = lb_output_gain;
                p.sample_rate_hz = lb_fs;
                p.filter_order = lb_filter_order;
                const Signal rx = files.through(fm_modulate(message, p, lb_preemph),
                                                lb_channel.spec(), true);
                recovered = fm_demodulate(rx, p, lb_deemph, lb_dc_removal);
            }
            const Alignment a = align_by_crosscorrelation(message, recovered);
            std::printf("correlation=%.6f\nlag=%td\n", a.correlation, a.lag);
        } else if (lb_scheme == "bfsk") {
            if (lb_text.empty()) {
                throw ModemError(ErrorCode::InvalidArgument, "bfsk loopback needs --text");
            }
            BfskParams p;
            p.freq_zero_hz = lb_f1;
            p.freq_one_hz = lb_f2;
            p.carrier_amplitude = lb_amplitude;
            p.bit_rate = lb_bit_rate;
            p.bpf_bandwidth_hz = lb_bpf_bandwidth;
            p.start_threshold = lb_start_threshold;
            p.sample_rate_hz = lb_fs;
            p.filter_order = lb_filter_order;
            const BitFrame sent = text_to_bits(lb_text, p.bit_rate);
            const Signal rx =
                files.through(bfsk_modulate(sent, p), lb_channel.spec(), false);
            const BitFrame got = bfsk_demodulate(rx, sent.bits.size(), p);
            std::printf("bit_errors=%zu\ndecoded=%s\n", count_bit_errors(sent, got),
                        bits_to_text(got).c_str());
        } else {
            if (lb_text.empty()) {
                throw ModemError(ErrorCode::InvalidArgument, "qam loopback needs --text");
            }
            const std::string text_q = lb_text_q.empty() ? lb_text : lb_text_q;
            QamParams p;
            p.carrier_freq_hz = lb_fc;
            p.carrier_amplitude = lb_amplitude;
            p.bit_rate = lb_bit_rate;
            p.lpf_cutoff_hz = lb_lpf_cutoff;
            p.output_scale = lb_output_scale;
            p.sample_rate_hz = lb_fs;
            p.filter_order = lb_filter_order;
            const BitFrame sent_i = text_to_bits(lb_text, p.bit_rate);
            const BitFrame sent_q = text_to_bits(text_q, p.bit_rate);
            const Signal rx =
                files.through(qam_modulate(sent_i, sent_q, p), lb_channel.spec(), false);
            const auto [got_i, got_q] =
                qam_demodulate(rx, sent_i.bits.size(), p, lb_input_bpf);
            std::printf("bit_errors=%zu\ndecoded_i=%s\ndecoded_q=%s\n",
                        count_bit_errors(sent_i, got_i) + count_bit_errors(sent_q, got_q),
                        bits_to_text(got_i).c_str(), bits_to_text(got_q).c_str());
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const ModemError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
