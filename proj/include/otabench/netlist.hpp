#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "otabench/device_model.hpp"
#include "otabench/errors.hpp"
#include "otabench/solve_options.hpp"

namespace otabench {

// =============================================================================
// Devices
// =============================================================================

struct Resistor {
    std::string name;
    int np = 0, nn = 0;
    double ohms = 0.0;
    double tc = 0.0;  // 1/K, optional linear temperature coefficient

    bool operator==(const Resistor&) const = default;
};

struct Capacitor {
    std::string name;
    int np = 0, nn = 0;
    double farads = 0.0;
    std::optional<double> ic;  // V, initial voltage

    bool operator==(const Capacitor&) const = default;
};

struct PulseSpec {
    double v1 = 0.0, v2 = 0.0;
    double delay = 0.0, rise = 0.0, fall = 0.0, width = 0.0, period = 0.0;

    bool operator==(const PulseSpec&) const = default;
};

struct SinSpec {
    double offset = 0.0, amplitude = 0.0, freq = 0.0;

    bool operator==(const SinSpec&) const = default;
};

using TransientSpec = std::variant<std::monostate, PulseSpec, SinSpec>;

/// Shared shape of independent V and I sources.
struct SourceSpec {
    double dc = 0.0;
    double ac_mag = 0.0;
    double ac_phase_deg = 0.0;
    TransientSpec transient;

    /// Instantaneous value at time t; transient spec overrides dc when present.
    double value_at(double t) const;

    bool operator==(const SourceSpec&) const = default;
};

struct VSource {
    std::string name;
    int np = 0, nn = 0;
    SourceSpec spec;
    int branch = -1;  // MNA branch-current slot, assigned by elaborate()

    bool operator==(const VSource&) const = default;
};

struct ISource {
    std::string name;
    int np = 0, nn = 0;  // current flows np -> nn through the source
    SourceSpec spec;

    bool operator==(const ISource&) const = default;
};

struct Mosfet {
    std::string name;
    int d = 0, g = 0, s = 0, b = 0;
    std::string model;
    MosGeometry geom;
    // fixed overlap/junction capacitances, F (level 1 has no intrinsic caps)
    double cgs = 0.0, cgd = 0.0, cdb = 0.0, cbs = 0.0;

    bool operator==(const Mosfet& o) const {
        return name == o.name && d == o.d && g == o.g && s == o.s && b == o.b &&
               model == o.model && geom.w == o.geom.w && geom.l == o.geom.l &&
               cgs == o.cgs && cgd == o.cgd && cdb == o.cdb && cbs == o.cbs;
    }
};

using Device = std::variant<Resistor, Capacitor, VSource, ISource, Mosfet>;

// =============================================================================
// Analysis directives
// =============================================================================

struct OpDirective {
    bool operator==(const OpDirective&) const = default;
};

struct DcSweepDirective {
    std::string source;
    double start = 0.0, stop = 0.0, step = 0.0;
    // optional outer sweep
    std::optional<std::string> source2;
    double start2 = 0.0, stop2 = 0.0, step2 = 0.0;

    bool operator==(const DcSweepDirective&) const = default;
};

enum class SweepScale { Decade, Linear };

struct FreqGrid {
    SweepScale scale = SweepScale::Decade;
    int points = 10;       // per decade for Decade, total for Linear
    double fstart = 1.0;   // Hz
    double fstop = 1e6;    // Hz

    std::vector<double> frequencies() const;

    bool operator==(const FreqGrid&) const = default;
};

struct AcDirective {
    FreqGrid grid;

    bool operator==(const AcDirective&) const = default;
};

struct TranDirective {
    double tstep = 0.0;  // s
    double tstop = 0.0;  // s

    bool operator==(const TranDirective&) const = default;
};

struct NoiseDirective {
    std::string output_node;   // noise probe
    std::string input_source;  // reference for input-referred noise
    FreqGrid grid;

    bool operator==(const NoiseDirective&) const = default;
};

struct TempDirective {
    std::vector<double> celsius;

    bool operator==(const TempDirective&) const = default;
};

using AnalysisDirective = std::variant<OpDirective, DcSweepDirective, AcDirective,
                                       TranDirective, NoiseDirective, TempDirective>;

// =============================================================================
// Circuit
// =============================================================================

/// Elaborated netlist. Node 0 is always ground "0"; node indices are
/// dense in order of first appearance. Voltage-source branch slots are
/// node_count + k for the k-th VSource, so every MNA unknown has the
/// single index space [1, node_count + branch_count).
struct Circuit {
    std::string title;
    std::vector<std::string> nodes{"0"};
    std::vector<Device> devices;
    std::map<std::string, MosModelCard> models;  // keyed by lower-cased name
    std::vector<AnalysisDirective> analyses;
    SolveOptions options;
    double temp_kelvin = 300.15;  // circuit temperature (27 C default)
    std::vector<std::string> warnings;  // filled by elaborate()

    int node_count() const { return static_cast<int>(nodes.size()); }
    int vsource_count() const;
    int unknown_count() const { return node_count() - 1 + vsource_count(); }

    /// Node index by (case-insensitive) name; -1 when absent.
    int find_node(const std::string& name) const;
    /// Device index by (case-insensitive) name; -1 when absent.
    int find_device(const std::string& name) const;

    bool operator==(const Circuit& o) const;
};

// =============================================================================
// Operations
// =============================================================================

/// Parse one SPICE-style number with engineering suffix
/// (f p n u m k meg g t, case-insensitive; trailing unit letters are
/// ignored). Throws ParseError carrying the byte offset of the first
/// offending character.
double parse_value(const std::string& token);

/// Parse a full netlist (title line, '*' comments, '+' continuations,
/// R/C/V/I/M devices, .model/.op/.dc/.ac/.tran/.noise/.temp/.options/.end)
/// and return the elaborated circuit. Every ParseError carries the
/// 1-based source line.
Circuit parse_netlist(const std::string& text);

/// Validation and index assignment: branch slots for voltage sources,
/// dangling-node warnings, and a TopologyError when some node has no DC
/// conduction path to ground.
Circuit elaborate(Circuit circuit);

/// Render the circuit back to netlist text that reparses to an equal
/// Circuit (shortest round-trip number formatting).
std::string unparse(const Circuit& circuit);

/// Name of a device variant, for diagnostics and tables.
std::string device_name(const Device& device);

}  // namespace otabench
