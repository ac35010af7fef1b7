#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "sunitrec/bounds.hpp"

namespace sunitrec {

// A fully parsed problem configuration.  Problem data (coefficients,
// initials, primes, a, b, zmax, moduli) travels as decimal strings in the
// JSON so nothing is squeezed through floating point; epsilon is an exact
// rational "u/v" (or "u") string.
struct RunConfig {
    ProblemInstance inst;
    std::optional<unsigned long> nmax;
    std::optional<mpz_class> zmax;
    std::vector<mpz_class> moduli;
    Prec precision_cap = kDefaultPrecCap;
};

// Parse and validate a configuration from JSON text.  Throws InputError with
// the offending field named on any violation (bad JSON, wrong types, integer
// strings that do not parse, eps <= 0, composite "primes", ...).
RunConfig parse_config_text(const std::string& text);

// Same, reading the file at `path`.
RunConfig load_config(const std::string& path);

}  // namespace sunitrec
