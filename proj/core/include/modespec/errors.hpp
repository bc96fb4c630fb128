#pragma once

#include <stdexcept>
#include <string>

namespace modespec {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Grid cannot support the requested operation (resolution, window or
/// chirp-sampling rule violated). Message names the violated rule.
struct GridError : Error {
    using Error::Error;
};

/// Parameter outside the operational interval of an element or engine.
struct RangeError : Error {
    using Error::Error;
};

/// A numerical design solve failed (no root in the searched bracket).
struct DesignError : Error {
    using Error::Error;
};

/// Malformed input file; message carries line/column diagnostics.
struct ParseError : Error {
    using Error::Error;
};

/// Operands live on incompatible grids or frames.
struct MismatchError : Error {
    using Error::Error;
};

/// Precondition on a value failed (e.g. unnormalized spectrum).
struct InvalidArgument : Error {
    using Error::Error;
};

}  // namespace modespec
