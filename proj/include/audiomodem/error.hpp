#pragma once

#include <stdexcept>
#include <string>

namespace audiomodem {

// Every failure mode the library can report. The CLI prints the enum name
// verbatim so scripts can match on it.
enum class ErrorCode {
    InvalidArgument,
    NyquistViolation,
    InvalidDuration,
    EmptySignal,
    RateMismatch,
    SegmentTooLong,
    SignalTooShort,
    InvalidSegmentLength,
    InvalidCutoff,
    InvalidOrder,
    FrequencyOutOfRange,
    FileNotFound,
    MalformedWav,
    UnsupportedFormat,
    IoFailure,
    SampleOutOfRange,
    OvermodulationError,
    DeviationExceedsNyquist,
    NonAsciiInput,
    FrameLengthNotByteAligned,
    EmptyFrame,
    NonIntegralSymbolLength,
    FrameLengthMismatch,
    NoSampleAboveThreshold,
    TruncationOutOfRange,
    MalformedCsv,
};

const char* error_code_name(ErrorCode code);

class ModemError : public std::runtime_error {
  public:
    ModemError(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }
    const char* code_name() const { return error_code_name(code_); }

  private:
    ErrorCode code_;
};

}  // namespace audiomodem
