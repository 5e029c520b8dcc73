#pragma once

#include <Eigen/Dense>
#include <functional>

#include "ramansim/fields.hpp"
#include "ramansim/units.hpp"

namespace ramansim {

struct Spectrogram {
    Grid1D t_axis;       // fs
    Grid1D nu_axis;      // cm⁻¹
    Eigen::MatrixXd values;  // values(i_t, j_nu)
    double max_imag_residue = 0.0;  // relative to max|value|
};

struct WignerSettings {
    double delta_halfwidth_sigmas = 20.0;
    friend bool operator==(const WignerSettings&, const WignerSettings&) = default;
};

using FieldSlice = std::function<cplx(double nu)>;

/// Symmetric Wigner transform of a spectral field:
/// W(ν,t) = ∫dΔ/2π E*(ν−Δ/2) E(ν+Δ/2) e^{−iΔt}, trapezoid over Δ ∈ ±halfwidth·σ.
Spectrogram wigner_transform(const FieldSlice& field, double sigma, const Grid1D& t_axis, const Grid1D& nu_axis,
                             const WignerSettings& s = {});

Spectrogram wigner_classical(const LorentzianEnvelope& env, const Grid1D& t_axis, const Grid1D& nu_axis,
                             const WignerSettings& s = {});
Spectrogram wigner_twin(const TwinParams& p, double wr, const Grid1D& t_axis, const Grid1D& nu_axis,
                        const WignerSettings& s = {});

struct MarginalWidths {
    double delta_nu = 0.0;   // cm⁻¹, FWHM of the frequency marginal
    double delta_t = 0.0;    // ps, FWHM of the time marginal
    double product = 0.0;    // ps·cm⁻¹
    bool nu_resolution_limited = false;
    bool t_resolution_limited = false;
    double dominant_fraction = 1.0;
};

/// Full width at half maximum of a sampled profile on a uniform grid.
/// Throws MultiModalError when the above-half-max set is not one interval.
double fwhm(const std::vector<double>& y, double spacing, bool* resolution_limited = nullptr);

/// Frequency and time marginals of a spectrogram and the product of their FWHMs.
MarginalWidths marginal_widths(const Spectrogram& s);

std::vector<double> frequency_marginal(const Spectrogram& s);
std::vector<double> time_marginal(const Spectrogram& s);

}  // namespace ramansim
