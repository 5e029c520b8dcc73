#include "ramansim/fields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ramansim/error.hpp"

namespace ramansim {

cplx LorentzianEnvelope::operator()(cplx z) const {
    const cplx den = z - center.value + cplx{0.0, hwhm.value};
    if (std::abs(den) < 1e-12) {
        std::ostringstream msg;
        msg << "envelope pole: |z - center + i*sigma| < 1e-12 at z = " << z;
        throw SingularityError(msg.str());
    }
    return amplitude / den;
}

void LorentzianEnvelope::validate() const {
    if (!std::isfinite(amplitude) || !std::isfinite(center.value))
        throw ConfigError("envelope: amplitude and center must be finite");
    if (!(hwhm.value > 0) || !std::isfinite(hwhm.value))
        throw ConfigError("envelope: hwhm sigma must be positive");
}

cplx envelope_eval(const LorentzianEnvelope& env, cplx z) { return env(z); }

TwinParams TwinParams::make(double omega0, double sigma0, double A0, double T1, double T2) {
    TwinParams p;
    p.pump = LorentzianEnvelope{A0, Wavenumber{2.0 * omega0}, Wavenumber{sigma0}};
    p.omega0 = Wavenumber{omega0};
    p.T1 = T1;
    p.T2 = T2;
    return p;
}

void TwinParams::validate() const {
    pump.validate();
    if (!(omega0.value > 0)) throw ConfigError("twin: omega0 must be positive");
    if (!(T1 >= 0) || !std::isfinite(T1)) throw ConfigError("twin: T1 must be non-negative");
    if (!(T2 > T1) || !std::isfinite(T2))
        throw ConfigError("twin: entanglement time T12 = T2 - T1 must be positive");
}

cplx csinc(cplx z) {
    if (std::abs(z) < 1e-4) {
        const cplx z2 = z * z;
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sin(z) / z;
}

TwinTerms twin_terms(const TwinParams& p, cplx zs, double wr) {
    const cplx ws0 = to_angular(zs - p.omega0.value);
    const double wr0 = to_angular(wr - p.omega0.value);
    const cplx x12 = 0.5 * (ws0 * p.T1 + wr0 * p.T2);
    const cplx x21 = 0.5 * (ws0 * p.T2 + wr0 * p.T1);
    const cplx i{0.0, 1.0};
    return {csinc(x12) * std::exp(i * x12), csinc(x21) * std::exp(i * x21)};
}

cplx twin_amplitude(const TwinParams& p, cplx zs, double wr) {
    const TwinTerms t = twin_terms(p, zs, wr);
    return p.pump(zs + wr) * (t.t12 + t.t21);
}

cplx twin_amplitude_time(const TwinParams& p, double t_fs, double wr, const QuadSettings& quad) {
    const double c = p.slice_center(wr);
    const double half = quad.window_sigmas * p.sigma0();
    const double wt = to_angular(1.0) * t_fs;
    auto f = [&](double nu) {
        return std::polar(1.0, -wt * nu) * twin_amplitude(p, nu, wr);
    };
    // Far from t = 0 the transform is small relative to the oscillating integrand,
    // so the absolute floor is tied to the integrand scale rather than the result.
    QuadSettings local = quad;
    local.abs_tol = std::max(quad.abs_tol, quad.rel_tol * std::abs(twin_amplitude(p, c, wr)) * p.sigma0());
    const QuadResult r = integrate_gk(f, c - half, c + half, local, {c});
    // dω/2π with dω = κ dν.
    return r.value * (kAngularPerWavenumber / (2.0 * std::numbers::pi));
}

cplx uncorrelated_amplitude(const LorentzianEnvelope& s_env, const LorentzianEnvelope& r_env, cplx ws,
                            cplx wr) {
    return s_env(ws) * r_env(wr);
}

double correlated_weight(const TwinParams& p, double ws, double wr) {
    return std::norm(twin_amplitude(p, ws, wr));
}

cplx pair_amplitude(const PhotonPair& pair, cplx zs, double wr) {
    if (const auto* tw = std::get_if<TwinParams>(&pair)) return twin_amplitude(*tw, zs, wr);
    const auto& u = std::get<UncorrelatedPair>(pair);
    return uncorrelated_amplitude(u.s, u.r, zs, wr);
}

double pair_slice_center(const PhotonPair& pair, double wr) {
    if (const auto* tw = std::get_if<TwinParams>(&pair)) return tw->slice_center(wr);
    return std::get<UncorrelatedPair>(pair).s.center.value;
}

double pair_slice_width(const PhotonPair& pair) {
    if (const auto* tw = std::get_if<TwinParams>(&pair)) return tw->sigma0();
    return std::get<UncorrelatedPair>(pair).s.hwhm.value;
}

}  // namespace ramansim
