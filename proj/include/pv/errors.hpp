#pragma once
#include <stdexcept>
#include <string>

namespace pv {

enum class Err {
    NonConvergent,
    NotUnit,
    BadParams,
    SimilitudeMismatch,
    NotUnitary,
    RingMismatch,
    NotInGroup,
    NearSingular,
    NotInCompact,
    NoConvergence,
    BadCase,
    BadLevel,
    OutOfRange,
    ConfigError,
    IoError,
    Internal,
};

const char* err_name(Err e);

class PvError : public std::runtime_error {
public:
    PvError(Err code, const std::string& what)
        : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
    Err code() const { return code_; }

private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw PvError(code, what); }

}  // namespace pv
