#include "audiomodem/error.hpp"

namespace audiomodem {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NyquistViolation: return "NyquistViolation";
        case ErrorCode::InvalidDuration: return "InvalidDuration";
        case ErrorCode::EmptySignal: return "EmptySignal";
        case ErrorCode::RateMismatch: return "RateMismatch";
        case ErrorCode::SegmentTooLong: return "SegmentTooLong";
        case ErrorCode::SignalTooShort: return "SignalTooShort";
        case ErrorCode::InvalidSegmentLength: return "InvalidSegmentLength";
        case ErrorCode::InvalidCutoff: return "InvalidCutoff";
        case ErrorCode::InvalidOrder: return "InvalidOrder";
        case ErrorCode::FrequencyOutOfRange: return "FrequencyOutOfRange";
        case ErrorCode::FileNotFound: return "FileNotFound";
        case ErrorCode::MalformedWav: return "MalformedWav";
        case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
        case ErrorCode::IoFailure: return "IoFailure";
        case ErrorCode::SampleOutOfRange: return "SampleOutOfRange";
        case ErrorCode::OvermodulationError: return "OvermodulationError";
        case ErrorCode::DeviationExceedsNyquist: return "DeviationExceedsNyquist";
        case ErrorCode::NonAsciiInput: return "NonAsciiInput";
        case ErrorCode::FrameLengthNotByteAligned: return "FrameLengthNotByteAligned";
        case ErrorCode::EmptyFrame: return "EmptyFrame";
        case ErrorCode::NonIntegralSymbolLength: return "NonIntegralSymbolLength";
        case ErrorCode::FrameLengthMismatch: return "FrameLengthMismatch";
        case ErrorCode::NoSampleAboveThreshold: return "NoSampleAboveThreshold";
        case ErrorCode::TruncationOutOfRange: return "TruncationOutOfRange";
        case ErrorCode::MalformedCsv: return "MalformedCsv";
    }
    return "UnknownError";
}

}  // namespace audiomodem
