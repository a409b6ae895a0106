#pragma once

#include <stdexcept>
#include <string>

namespace ecz {

enum class ErrorCode {
    invalid_argument,     // bad arity, width or field value handed to an encoder
    sample_out_of_range,  // input sample does not fit the configured bit depth
    invalid_header,       // reserved "0010" frame prefix seen on the wire
    range_corruption,     // reconstructed sample left the sample range
    bad_magic,
    unsupported_version,
    truncated,
    corrupt_container,
    channel_mismatch,     // channel tag outside the configured channel count
    parse_error,
    empty_histogram,
    io_error,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace ecz
