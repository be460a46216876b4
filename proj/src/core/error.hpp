#pragma once

#include <stdexcept>
#include <string>

namespace permqubo {

// Error categories, mirrored one-to-one by the C API status codes.
enum class ErrorCode {
    parse = 1,
    argument = 2,
    capacity = 3,
    method = 4,
    overflow = 5,
    io = 6,
    config = 7,
    internal = 8,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
    throw Error(code, msg);
}

} // namespace permqubo
