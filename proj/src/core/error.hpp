#ifndef QLAB_CORE_ERROR_HPP
#define QLAB_CORE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qlab {

enum class ErrorCode {
    InvalidArgument,
    DimensionMismatch,
    NotNormalized,
    NotAProjector,
    NotUnitary,
    NotAState,
    NotOrthonormal,
    DuplicatePower,
    CapExceeded,
    OutOfRange,
    Incomplete,
    Unverified,
    InvariantViolation,
    BadFormat,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace qlab

#endif
