#pragma once

#include <stdexcept>
#include <string>

namespace lagspec {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed files, unparsable numbers, schema mismatches.
struct InputError : Error {
    using Error::Error;
};

struct PreconditionError : Error {
    using Error::Error;
};

struct InvalidComplex : Error {
    using Error::Error;
};

struct IllPosedInvariant : Error {
    explicit IllPosedInvariant(const std::string& what)
        : Error("ill-posed spectral invariant: " + what) {}
};

struct NonTransverse : Error {
    NonTransverse(const std::string& what, long seg_a, long seg_b)
        : Error("non-transverse pair: " + what), segment_a(seg_a), segment_b(seg_b) {}
    long segment_a;
    long segment_b;
};

struct UnsupportedPair : Error {
    explicit UnsupportedPair(const std::string& what)
        : Error("pair outside supported class: " + what) {}
};

struct NoRoom : Error {
    explicit NoRoom(const std::string& what) : Error("no room: " + what) {}
};

struct BoundViolation : Error {
    explicit BoundViolation(const std::string& what) : Error("bound violation: " + what) {}
};

}  // namespace lagspec
