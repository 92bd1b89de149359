#pragma once

#include <stdexcept>
#include <string>

namespace upb {

// Enumeration request exceeds the configured member cap.
struct too_large_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Iterative eigensolver failed to reach its off-diagonal target.
struct nonconvergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace upb
