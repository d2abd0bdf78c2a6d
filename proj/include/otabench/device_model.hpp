#pragma once

#include <string>

#include "otabench/errors.hpp"

namespace otabench {

inline constexpr double kBoltzmann = 1.380649e-23;         // J/K
inline constexpr double kElementaryCharge = 1.602176634e-19;  // C

/// Thermal voltage kT/q in volts.
inline double thermal_voltage(double temp_kelvin) {
    return kBoltzmann * temp_kelvin / kElementaryCharge;
}

enum class MosPolarity { Nmos, Pmos };
enum class MosRegion { Cutoff, Triode, Saturation };

const char* to_string(MosRegion region);

// =============================================================================
// Model card
// =============================================================================

/// Level-1 MOSFET parameters extended with body effect, temperature,
/// noise and bulk-diode terms. Threshold sign follows SPICE convention:
/// enhancement PMOS cards carry a negative vt0. beta = kp * (W/L) is
/// derived at evaluation time, never stored.
struct MosModelCard {
    std::string name = "nmos";
    MosPolarity polarity = MosPolarity::Nmos;
    double vt0 = 0.4;       // V, zero-bias threshold
    double kp = 100e-6;     // A/V^2, process transconductance
    double gamma = 0.5;     // V^0.5, body-effect coefficient
    double phi = 0.7;       // V, surface potential (2*|Phi_F|)
    double lambda = 0.05;   // 1/V, channel-length modulation
    double kf = 0.0;        // flicker noise coefficient
    double af = 1.0;        // flicker current exponent
    double cox = 5e-3;      // F/m^2, oxide capacitance per area
    double is_bulk = 1e-14; // A, bulk-diode saturation current
    double tnom = 300.15;   // K, parameter reference temperature
    double tc_vth = 2e-3;   // V/K, threshold temperature slope
    double mu_exp = 1.5;    // mobility temperature exponent

    /// Throws DomainError if any parameter is outside its legal range.
    void validate() const;
};

struct MosGeometry {
    double w = 1e-6;  // m
    double l = 1e-6;  // m
};

// =============================================================================
// Evaluation result
// =============================================================================

/// Operating-point snapshot of one device.
///
/// `id` is the current into the wired drain terminal (negative for a
/// PMOS in normal orientation). `gm`, `gmb`, `gds` are the nonnegative
/// small-signal magnitudes in the device's effective orientation.
/// `did_dvgs` / `did_dvds` / `did_dvbs` are the signed partial
/// derivatives of `id` with respect to the wired terminal voltages;
/// they equal (gm, gds, gmb) in normal orientation and get the usual
/// source-drain-swap sign mapping otherwise. Newton stamps use the
/// signed set, reports use the magnitudes.
struct MosEval {
    double id = 0.0;       // A
    double gm = 0.0;       // S
    double gmb = 0.0;      // S
    double gds = 0.0;      // S
    double vth_eff = 0.0;  // V, magnitude form
    MosRegion region = MosRegion::Cutoff;

    double did_dvgs = 0.0;
    double did_dvds = 0.0;
    double did_dvbs = 0.0;
};

struct MosNoisePsd {
    double thermal = 0.0;  // A^2/Hz
    double flicker = 0.0;  // A^2/Hz
};

// =============================================================================
// Operations
// =============================================================================

/// Body-effect threshold shift, magnitude form:
/// vt0 + gamma * (sqrt(phi + vsb) - sqrt(phi)).
/// `vsb` is reverse-bias-positive; forward body bias (vsb < 0) lowers
/// the threshold. Throws DomainError when phi + vsb <= 0.
double effective_vth(const MosModelCard& card, double vsb);

/// Evaluate drain current and small-signal parameters at the given wired
/// terminal voltages. PMOS devices are mirrored onto the NMOS equations;
/// vds < 0 (in normalized orientation) swaps source and drain. The card
/// is re-scaled to `temp` through apply_temperature before evaluation.
MosEval eval_mos(const MosModelCard& card, const MosGeometry& geom,
                 double vgs, double vds, double vbs, double temp = 300.15);

/// Parasitic bulk-source junction current, ideal diode law
/// is_bulk * (exp(v/Vt) - 1) with the exponent argument clamped to 80.
double bulk_diode_current(const MosModelCard& card, double vbs_forward, double temp);

/// Drain-current noise densities at frequency `f`:
/// thermal 4kT*(2/3)*gm and flicker kf*|id|^af / (f * cox * W * L).
MosNoisePsd mos_noise_psd(const MosEval& eval, const MosModelCard& card,
                          const MosGeometry& geom, double f, double temp);

/// Returns a copy of the card with kp scaled by (temp/tnom)^(-mu_exp)
/// and the threshold magnitude reduced by tc_vth * (temp - tnom).
/// All other fields, including tnom, are unchanged.
MosModelCard apply_temperature(const MosModelCard& card, double temp);

}  // namespace otabench
