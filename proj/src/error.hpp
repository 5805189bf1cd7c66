#pragma once
#include <stdexcept>
#include <string>

namespace c2l {

enum class Err {
    Input = 1,
    Verify,
    NotDivisible,
    RegistryMismatch,
    DivZero,
    Domain,
    NotFreeFermionic,
    LoopTrack,
    NotFlippable,
    WindowTooSmall,
    Stuck,
    NotAMonomial,
    NotFound,
    NonPositive,
    HasLoops,
    IntrinsicViolated,
    IO,
    Internal
};

struct Error : std::runtime_error {
    Err code;
    Error(Err c, const std::string& m) : std::runtime_error(m), code(c) {}
};

[[noreturn]] inline void fail(Err c, const std::string& m) { throw Error(c, m); }

}
