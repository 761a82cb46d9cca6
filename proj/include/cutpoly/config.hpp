#pragma once

#include <cstdlib>
#include <string>

namespace cutpoly {

inline constexpr const char* kVersion = "0.1.0";

/// Tolerances for the floating-point backend. The exact backend ignores them.
/// Single source: everything that compares floats goes through one of these.
struct Tolerances {
    double feasibility = 1e-9;
    double optimality = 1e-9;
    double reported_value = 1e-7;  // cross-backend / reported-value comparisons
};

/// Default tolerances, with CUTPOLY_TOL overriding the reported-value
/// comparison tolerance (the one user-facing checks run at).
inline Tolerances default_tolerances() {
    Tolerances t;
    if (const char* env = std::getenv("CUTPOLY_TOL")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v > 0) t.reported_value = v;
    }
    return t;
}

}  // namespace cutpoly
