#pragma once

#include "ramansim/units.hpp"

namespace ramansim {

/// Two-state-jump vibration: frequency jumps from ω_+ to ω_− at rate k.
struct TsjParams {
    Wavenumber omega_ac{500.0};
    Wavenumber delta{120.0};
    Wavenumber k{18.0};
    Wavenumber gamma_a{9.0};
    Wavenumber omega_a{13000.0};  // electronic center, default ω_p + ω_ac
    double mu_ag = 1.0;
    double alpha_ac = 1.0;

    static TsjParams slow();
    static TsjParams fast();

    double omega_plus() const { return omega_ac.value + delta.value; }
    double omega_minus() const { return omega_ac.value - delta.value; }
    /// 2iδ/(k + 2iδ), weight of the tunneling correction.
    cplx tunneling_weight() const;

    void validate() const;
    friend bool operator==(const TsjParams&, const TsjParams&) = default;
};

/// Linear absorption lineshape at ν (cm⁻¹); prefactor multiplies |μ_ag|².
double absorption(const TsjParams& p, double nu, double prefactor = 1.0);

/// Matter correlation functions of the (2,1) and (1,1) pathways, times in fs.
/// Both vanish when either time is negative.
cplx f_i(const TsjParams& p, double t1, double t2, double prefactor = 1.0);
cplx f_ii(const TsjParams& p, double t1, double t2, double prefactor = 1.0);

}  // namespace ramansim
