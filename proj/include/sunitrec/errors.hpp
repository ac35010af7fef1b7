#pragma once

#include <stdexcept>
#include <string>

namespace sunitrec {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent user input (bad config, bad recurrence data,
// invalid prime sets, out-of-range parameters).
struct InputError : Error {
    explicit InputError(const std::string& what) : Error(what) {}
};

// A certified computation could not be completed below the precision cap.
struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& what) : Error(what) {}
};

// The instance fails a hypothesis the bound pipeline needs.  `code` is a
// stable machine-readable tag surfaced in reports and exit codes.
struct HypothesisRefusal : Error {
    std::string code;
    HypothesisRefusal(std::string code_, const std::string& what)
        : Error(what), code(std::move(code_)) {}
};

// Internal invariant violation; indicates a bug, not bad input.
struct InternalError : Error {
    explicit InternalError(const std::string& what) : Error(what) {}
};

}  // namespace sunitrec
