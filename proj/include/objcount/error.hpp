#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace objcount {

enum class ErrorCode {
    io_error,
    malformed_header,
    unsupported_bit_depth,
    unsupported_format,
    invalid_parameter,
    degenerate_histogram,
    empty_histogram,
    impossible_scene,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library. The code is
/// what callers branch on; the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace objcount
