#pragma once

#include <variant>

#include "ramansim/quadrature.hpp"
#include "ramansim/units.hpp"

namespace ramansim {

/// A0/(z − center + i·hwhm), evaluated at complex cm⁻¹ arguments.
struct LorentzianEnvelope {
    double amplitude = 1.0;
    Wavenumber center{14000.0};
    Wavenumber hwhm{500.0};

    cplx operator()(cplx z) const;
    void validate() const;
    friend bool operator==(const LorentzianEnvelope&, const LorentzianEnvelope&) = default;
};

cplx envelope_eval(const LorentzianEnvelope& env, cplx z);

/// Type-II down-conversion pair. The pump envelope is centered at 2·omega0.
struct TwinParams {
    LorentzianEnvelope pump{1.0, Wavenumber{28000.0}, Wavenumber{500.0}};
    Wavenumber omega0{14000.0};
    double T1 = 110.0;  // fs
    double T2 = 120.0;  // fs

    static TwinParams make(double omega0, double sigma0, double A0, double T1, double T2);
    double sigma0() const { return pump.hwhm.value; }
    double entanglement_time() const { return T2 - T1; }
    /// ω_s at which the real-axis slice Φ(·, wr) is centered.
    double slice_center(double wr) const { return pump.center.value - wr; }

    void validate() const;
    friend bool operator==(const TwinParams&, const TwinParams&) = default;
};

/// sin(z)/z for complex z, series below |z| = 1e-4.
cplx csinc(cplx z);

/// Φ(zs, wr). Complex zs is allowed anywhere the pump envelope has no pole.
cplx twin_amplitude(const TwinParams& p, cplx zs, double wr);

/// The two (i, j) summands of the bracket, without the pump envelope.
struct TwinTerms {
    cplx t12;
    cplx t21;
};
TwinTerms twin_terms(const TwinParams& p, cplx zs, double wr);

/// Φ(t, wr) = ∫dω/2π e^{−iωt} Φ(ω, wr) over slice_center ± window_sigmas·σ₀.
cplx twin_amplitude_time(const TwinParams& p, double t_fs, double wr, const QuadSettings& quad);

/// Φ_s(ws)·Φ_r(wr).
cplx uncorrelated_amplitude(const LorentzianEnvelope& s_env, const LorentzianEnvelope& r_env, cplx ws,
                            cplx wr);

/// |Φ(ws, wr)|².
double correlated_weight(const TwinParams& p, double ws, double wr);

/// Product-state pair with independent single-photon envelopes.
struct UncorrelatedPair {
    LorentzianEnvelope s;
    LorentzianEnvelope r;
    friend bool operator==(const UncorrelatedPair&, const UncorrelatedPair&) = default;
};

using PhotonPair = std::variant<TwinParams, UncorrelatedPair>;

cplx pair_amplitude(const PhotonPair& pair, cplx zs, double wr);
/// Center and width of the s-photon marginal around which quadrature windows are placed.
double pair_slice_center(const PhotonPair& pair, double wr);
double pair_slice_width(const PhotonPair& pair);

}  // namespace ramansim
