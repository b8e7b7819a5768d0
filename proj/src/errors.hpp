#pragma once

#include <stdexcept>
#include <string>

namespace grenlab {

// Error taxonomy shared by the whole library. The C API maps each type to a
// status code, the CLI maps status codes to exit codes.

/// Malformed input data (unsorted abscissae, non-finite values, size mismatch).
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Evaluation outside the domain of a function-like object.
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Statistical model cannot be formed (e.g. no uncensored observations).
struct model_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad configuration file or plan parameters.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem failure.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rate fit impossible (too few sizes, non-positive aggregates).
struct fit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace grenlab
