#pragma once

#include <string>

#include "audiomodem/signal.hpp"

namespace audiomodem {

// UTF-8 CSV with header "frequency_hz,power", one row per bin in ascending
// frequency, printed with enough digits that parsing the file back
// reproduces the Spectrum exactly.
void export_spectrum_csv(const Spectrum& spectrum, const std::string& path);

Spectrum read_spectrum_csv(const std::string& path);

}  // namespace audiomodem
