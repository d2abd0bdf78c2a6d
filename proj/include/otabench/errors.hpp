#pragma once

#include <stdexcept>
#include <string>

namespace otabench {

/// Base class for every error the simulator raises on purpose.
struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input outside a model's or measurement's domain of validity.
struct DomainError : SimError {
    using SimError::SimError;
};

/// Netlist syntax or validation failure. `line` is 1-based; 0 means the
/// error is not tied to a source line (bare value parsing). `offset` is
/// the byte offset of the offending character within the token or line.
struct ParseError : SimError {
    int line = 0;
    std::size_t offset = 0;

    explicit ParseError(const std::string& msg, int line_no = 0, std::size_t off = 0)
        : SimError(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no),
          offset(off) {}
};

/// Circuit graph defect that would make the MNA system singular
/// (floating node, island with no DC path to ground).
struct TopologyError : SimError {
    using SimError::SimError;
};

/// LU elimination hit a pivot below the singularity threshold.
struct SingularMatrix : SimError {
    using SimError::SimError;
};

/// Newton (or a continuation ladder) failed; carries the best KCL
/// residual reached and, for transient, the simulation time of the
/// failing step.
struct NoConvergence : SimError {
    double best_residual = 0.0;  // A
    double time = -1.0;          // s, < 0 when not time-domain

    explicit NoConvergence(const std::string& msg, double residual = 0.0, double t = -1.0)
        : SimError(msg), best_residual(residual), time(t) {}
};

/// A measurement's feature (crossing, transition) does not exist in the data.
struct NotFound : SimError {
    using SimError::SimError;
};

/// Waveform tail is still moving; settling time undefined.
struct NotSettled : SimError {
    using SimError::SimError;
};

}  // namespace otabench
