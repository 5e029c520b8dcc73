#include "ramansim/tsj.hpp"

#include <cmath>

#include "ramansim/error.hpp"

namespace ramansim {

namespace {
constexpr cplx I{0.0, 1.0};
}

TsjParams TsjParams::slow() { return TsjParams{}; }

TsjParams TsjParams::fast() {
    TsjParams p;
    p.k = Wavenumber{53.0};
    p.gamma_a = Wavenumber{43.0};
    return p;
}

cplx TsjParams::tunneling_weight() const {
    return 2.0 * I * delta.value / (k.value + 2.0 * I * delta.value);
}

void TsjParams::validate() const {
    for (double v : {omega_ac.value, delta.value, k.value, gamma_a.value, omega_a.value, mu_ag, alpha_ac})
        if (!std::isfinite(v)) throw ConfigError("matter: parameters must be finite");
    if (!(delta.value > 0)) throw ConfigError("matter: level splitting delta must be positive");
    if (!(omega_minus() > 0)) throw ConfigError("matter: omega_minus = omega_ac - delta must be positive");
    if (!(k.value >= 0)) throw ConfigError("matter: tunneling rate k must be non-negative");
    if (!(gamma_a.value > 0)) throw ConfigError("matter: dephasing gamma_a must be positive");
}

double absorption(const TsjParams& p, double nu, double prefactor) {
    const double d = p.delta.value, k = p.k.value, g = p.gamma_a.value;
    const double wa_minus = p.omega_a.value - d;
    const double wa_plus = p.omega_a.value + d;
    const cplx bracket = (k + I * d) / (nu - wa_minus + I * g) + I * d / (nu - wa_plus + I * (g + k));
    const cplx s = prefactor * p.mu_ag * p.mu_ag / (k + 2.0 * I * d) * bracket;
    return -s.imag();
}

cplx f_i(const TsjParams& p, double t1, double t2, double prefactor) {
    if (t1 < 0 || t2 < 0) return 0.0;
    const double g = to_angular(p.gamma_a.value), k = to_angular(p.k.value);
    const double wm = to_angular(p.omega_minus()), wp = to_angular(p.omega_plus());
    const cplx lead = std::polar(1.0, -wm * t1);
    const cplx tunnel = lead - std::exp(-(k + I * wp) * t1);
    const cplx bracket = lead - p.tunneling_weight() * std::exp(-k * t2) * tunnel;
    const double scale = prefactor * p.mu_ag * p.mu_ag * p.alpha_ac * p.alpha_ac;
    return I * scale * std::exp(-g * (t1 + 2.0 * t2)) * bracket;
}

cplx f_ii(const TsjParams& p, double t1, double t2, double prefactor) {
    if (t1 < 0 || t2 < 0) return 0.0;
    const double g = to_angular(p.gamma_a.value), k = to_angular(p.k.value);
    const double wm = to_angular(p.omega_minus()), wp = to_angular(p.omega_plus());
    const cplx lead = std::polar(1.0, wp * t1);
    const cplx tunnel = lead - std::exp(-(k - I * wm) * t1);
    const cplx bracket = lead - p.tunneling_weight() * std::exp(-k * t2) * tunnel;
    const double scale = prefactor * p.mu_ag * p.mu_ag * p.alpha_ac * p.alpha_ac;
    return -I * scale * std::exp(-g * (t1 + 2.0 * t2)) * bracket;
}

}  // namespace ramansim
