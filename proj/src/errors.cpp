#include "pv/errors.hpp"

namespace pv {

const char* err_name(Err e) {
    switch (e) {
        case Err::NonConvergent: return "NonConvergent";
        case Err::NotUnit: return "NotUnit";
        case Err::BadParams: return "BadParams";
        case Err::SimilitudeMismatch: return "SimilitudeMismatch";
        case Err::NotUnitary: return "NotUnitary";
        case Err::RingMismatch: return "RingMismatch";
        case Err::NotInGroup: return "NotInGroup";
        case Err::NearSingular: return "NearSingular";
        case Err::NotInCompact: return "NotInCompact";
        case Err::NoConvergence: return "NoConvergence";
        case Err::BadCase: return "BadCase";
        case Err::BadLevel: return "BadLevel";
        case Err::OutOfRange: return "OutOfRange";
        case Err::ConfigError: return "ConfigError";
        case Err::IoError: return "IoError";
        case Err::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace pv
