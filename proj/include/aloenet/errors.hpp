#pragma once
#include <stdexcept>

namespace aloenet {

// Rejected input (bad arguments, domain violations, malformed files).
struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Fatal numeric failure (non-finite objective, bracket exhaustion, singular system).
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace aloenet
