#pragma once

#include <stdexcept>
#include <string>

namespace cutpoly {

enum class Errc {
    parameter,             // precondition on an argument violated
    size_limit,            // instance too large for an enumeration-only oracle
    malformed_cycle,       // duplicate / out-of-range node in a cycle order
    zero_distance,         // cycle_distance called with i == j
    instance_too_small,    // n < 2 where a cut is required
    solver_failure,        // numerical stall with no exact escape
    internal_consistency,  // solver produced a certificate that fails its own check
    symmetry_violation,    // rotation average infeasible: formulation not symmetric
    negativity,            // split step would drive a weight below zero
    reduction_stuck,       // no admissible splitting pair though degrees > 2 remain
    pipeline_inconsistency,// objective increased along a split trace
    invalid_cut,           // generated TSP inequality fails tour validity
    degenerate_solution,   // all-zero solution where scaling is required
    inapplicable_lemma,    // path inequality queried outside the support
    io,                    // malformed graph / model file
    usage,                 // CLI usage error
};

struct Error : std::runtime_error {
    Errc code;
    Error(Errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

inline void require(bool cond, Errc c, const std::string& msg) {
    if (!cond) fail(c, msg);
}

}  // namespace cutpoly
