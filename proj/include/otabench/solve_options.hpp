#pragma once

namespace otabench {

/// Newton and continuation knobs. Netlist `.options` lines override the
/// defaults field by field.
struct SolveOptions {
    double abstol = 1e-9;   // A, KCL residual bound
    double reltol = 1e-4;   // relative voltage update bound
    double vntol = 1e-6;    // V, absolute voltage update bound
    int maxiter = 200;      // Newton iteration cap
    double gmin = 1e-12;    // S, leak conductance on every node
    int gmin_steps = 10;    // rungs in the gmin ladder
    int src_steps = 10;     // rungs in the source-stepping ladder
    double damping = 0.3;   // V, max per-iteration voltage update
};

}  // namespace otabench
