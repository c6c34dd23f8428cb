#pragma once

#include <stdexcept>
#include <string>

namespace cutcell {

// Error categories; values are shared with the C API status codes.
enum class ErrorCode : int {
    Ok = 0,
    InvalidArgument = 1,
    DomainError = 2,
    DegenerateInput = 3,
    NonConvergence = 4,
    NotAGraph = 5,
    TilingFailure = 6,
    SingularSystem = 7,
    ParseError = 8,
    Internal = 9,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace cutcell
