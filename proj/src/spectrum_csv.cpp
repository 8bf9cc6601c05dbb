#include "audiomodem/spectrum_csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "audiomodem/error.hpp"

namespace audiomodem {

void export_spectrum_csv(const Spectrum& spectrum, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw ModemError(ErrorCode::IoFailure, "cannot open for writing: " + path);
    }
    out << "frequency_hz,power\n";
    char buf[64];
    for (std::size_t k = 0; k < spectrum.power.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%.17g",
                      static_cast<double>(k) * spectrum.bin_hz);
        out << buf << ',';
        std::snprintf(buf, sizeof(buf), "%.17g", spectrum.power[k]);
        out << buf << '\n';
    }
    out.flush();
    if (!out) {
        throw ModemError(ErrorCode::IoFailure, "write failed: " + path);
    }
}

Spectrum read_spectrum_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ModemError(ErrorCode::FileNotFound, path);
    }
    std::string line;
    if (!std::getline(in, line) || line != "frequency_hz,power") {
        throw ModemError(ErrorCode::MalformedCsv, "missing header row: " + path);
    }
    Spectrum spec;
    std::vector<double> freqs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ModemError(ErrorCode::MalformedCsv, "row without comma: " + path);
        }
        try {
            freqs.push_back(std::stod(line.substr(0, comma)));
            spec.power.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw ModemError(ErrorCode::MalformedCsv, "unparsable row: " + path);
        }
    }
    if (freqs.size() < 2) {
        throw ModemError(ErrorCode::MalformedCsv,
                         "need at least two rows to recover the bin width: " + path);
    }
    spec.bin_hz = freqs[1];
    return spec;
}

}  // namespace audiomodem
