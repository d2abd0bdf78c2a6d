#include "otabench/device_model.hpp"

#include <algorithm>
#include <cmath>

namespace otabench {

const char* to_string(MosRegion region) {
    switch (region) {
        case MosRegion::Cutoff: return "cutoff";
        case MosRegion::Triode: return "triode";
        case MosRegion::Saturation: return "saturation";
    }
    return "?";
}

void MosModelCard::validate() const {
    auto require = [this](bool ok, const char* what) {
        if (!ok) throw DomainError("model '" + name + "': " + what);
    };
    require(kp > 0, "kp must be > 0");
    require(phi > 0, "phi must be > 0");
    require(gamma >= 0, "gamma must be >= 0");
    require(lambda >= 0, "lambda must be >= 0");
    require(cox > 0, "cox must be > 0");
    require(is_bulk >= 0, "is_bulk must be >= 0");
    require(tnom > 0, "tnom must be > 0");
    require(kf >= 0, "kf must be >= 0");
    require(af >= 0, "af must be >= 0");
}

namespace {

// Threshold magnitude at zero body bias, N-normal form. Enhancement
// PMOS cards store vt0 < 0.
double normalized_vt0(const MosModelCard& card) {
    return card.polarity == MosPolarity::Nmos ? card.vt0 : -card.vt0;
}

double effective_vth_from(double vt0_mag, double gamma, double phi, double vsb) {
    const double arg = phi + vsb;
    if (!(arg > 0.0))
        throw DomainError("effective_vth: phi + vsb must be positive (got " +
                          std::to_string(arg) + ")");
    return vt0_mag + gamma * (std::sqrt(arg) - std::sqrt(phi));
}

}  // namespace

double effective_vth(const MosModelCard& card, double vsb) {
    return effective_vth_from(normalized_vt0(card), card.gamma, card.phi, vsb);
}

MosModelCard apply_temperature(const MosModelCard& card, double temp) {
    if (!(temp > 0.0))
        throw DomainError("apply_temperature: temperature must be > 0 K");
    MosModelCard out = card;
    if (temp == card.tnom) return out;
    const double dvth = card.tc_vth * (temp - card.tnom);
    out.kp = card.kp * std::pow(temp / card.tnom, -card.mu_exp);
    // Threshold magnitude shrinks as temperature rises, for either polarity.
    out.vt0 = card.polarity == MosPolarity::Nmos ? card.vt0 - dvth : card.vt0 + dvth;
    return out;
}

MosEval eval_mos(const MosModelCard& card, const MosGeometry& geom,
                 double vgs, double vds, double vbs, double temp) {
    const MosModelCard c = apply_temperature(card, temp);
    const double sign = c.polarity == MosPolarity::Nmos ? 1.0 : -1.0;

    // Normalize onto the NMOS equations, then swap source and drain if
    // the device operates with the channel reversed.
    double vgs_n = sign * vgs;
    double vds_n = sign * vds;
    double vbs_n = sign * vbs;
    const bool swapped = vds_n < 0.0;
    if (swapped) {
        vgs_n -= vds_n;
        vbs_n -= vds_n;
        vds_n = -vds_n;
    }
    const double vsb_n = -vbs_n;

    MosEval e;
    e.vth_eff = effective_vth_from(normalized_vt0(c), c.gamma, c.phi, vsb_n);

    const double beta = c.kp * geom.w / geom.l;
    const double vov = vgs_n - e.vth_eff;
    double id_n = 0.0, gm_n = 0.0, gds_n = 0.0;
    if (vov <= 0.0) {
        e.region = MosRegion::Cutoff;
    } else if (vds_n >= vov) {
        e.region = MosRegion::Saturation;
        const double clm = 1.0 + c.lambda * vds_n;
        id_n = 0.5 * beta * vov * vov * clm;
        gm_n = beta * vov * clm;
        gds_n = 0.5 * beta * vov * vov * c.lambda;
    } else {
        e.region = MosRegion::Triode;
        const double clm = 1.0 + c.lambda * vds_n;
        const double core = vov * vds_n - 0.5 * vds_n * vds_n;
        id_n = beta * core * clm;
        gm_n = beta * vds_n * clm;
        gds_n = beta * (vov - vds_n) * clm + beta * core * c.lambda;
    }
    const double gmb_n = gm_n * c.gamma / (2.0 * std::sqrt(c.phi + vsb_n));

    e.gm = gm_n;
    e.gds = gds_n;
    e.gmb = gmb_n;
    if (!swapped) {
        e.id = sign * id_n;
        e.did_dvgs = gm_n;
        e.did_dvds = gds_n;
        e.did_dvbs = gmb_n;
    } else {
        e.id = -sign * id_n;
        e.did_dvgs = -gm_n;
        e.did_dvds = gm_n + gds_n + gmb_n;
        e.did_dvbs = -gmb_n;
    }
    return e;
}

double bulk_diode_current(const MosModelCard& card, double vbs_forward, double temp) {
    if (card.is_bulk == 0.0) return 0.0;
    const double vt = thermal_voltage(temp);
    const double x = std::min(vbs_forward / vt, 80.0);
    return card.is_bulk * std::expm1(x);
}

MosNoisePsd mos_noise_psd(const MosEval& eval, const MosModelCard& card,
                          const MosGeometry& geom, double f, double temp) {
    if (!(f > 0.0)) throw DomainError("mos_noise_psd: frequency must be > 0");
    MosNoisePsd psd;
    psd.thermal = 4.0 * kBoltzmann * temp * (2.0 / 3.0) * eval.gm;
    if (card.kf > 0.0) {
        psd.flicker = card.kf * std::pow(std::abs(eval.id), card.af) /
                      (f * card.cox * geom.w * geom.l);
    }
    return psd;
}

}  // namespace otabench
