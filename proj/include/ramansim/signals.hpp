#pragma once

#include <Eigen/Dense>
#include <string>

#include "ramansim/fields.hpp"
#include "ramansim/quadrature.hpp"
#include "ramansim/tsj.hpp"
#include "ramansim/units.hpp"

namespace ramansim {

/// Arguments of a Raman window: decay γ and complex resonance Ω, both in cm⁻¹.
struct WindowArgs {
    double gamma = 0.0;
    cplx Omega{0.0, 0.0};
};

// Windows. nu, nu_s, nu_r are absolute frequencies in cm⁻¹.
cplx window_classical(const LorentzianEnvelope& probe, const ExperimentConfig& cfg, double nu, const WindowArgs& w);
cplx window_q01(const PhotonPair& pair, const ExperimentConfig& cfg, const WindowArgs& w, const QuadSettings& quad);
cplx window_q21(const PhotonPair& pair, const ExperimentConfig& cfg, double nu_s, double nu_r, const WindowArgs& w);
cplx window_q11(const PhotonPair& pair, const ExperimentConfig& cfg, double nu_s, double nu_r, const WindowArgs& w);

// Frequency-gated signals; nu is absolute, T in fs.
double fsrs_classical(const LorentzianEnvelope& probe, const ExperimentConfig& cfg, const TsjParams& m, double nu,
                      double T);

/// ns = 0 ignores nu_s and depends on cfg.omega_r_bar only.
double ifsrs(int ns, const PhotonPair& pair, const ExperimentConfig& cfg, const TsjParams& m, double nu_s, double T,
             const QuadSettings& quad = {});

/// Non-resonant (1,1) background; excluded from spectra unless requested.
double ifsrs11_background(const PhotonPair& pair, const ExperimentConfig& cfg, const TsjParams& m, double nu_s,
                          double T);

/// (2,1) coincidence with two s-detector frequencies, symmetrized in the pair.
double ifsrs21_two_freq(const PhotonPair& pair, const ExperimentConfig& cfg, const TsjParams& m, double nu_s1,
                        double nu_s2, double T);

// Time-gated signals. Detector times are measured from the actinic pulse; the
// photon wave packet is referenced to its arrival at T.
struct TimeGated11 {
    double a = 0.0;  // resonant term
    double b = 0.0;  // background term
};
TimeGated11 ifsrs_time_11_terms(const TwinParams& p, const ExperimentConfig& cfg, const TsjParams& m, double t_s,
                                double T, const QuadSettings& quad = {});
double ifsrs_time_11(const TwinParams& p, const ExperimentConfig& cfg, const TsjParams& m, double t_s, double T,
                     bool include_background = false, const QuadSettings& quad = {});
double ifsrs_time_21(const TwinParams& p, const ExperimentConfig& cfg, const TsjParams& m, double t_s1, double t_s2,
                     double T, const QuadSettings& quad = {});

enum class SeparableState { correlated, uncorrelated };

/// Separable-state signals; no delay dependence. Correlated uses |Φ|² of the twin
/// amplitude, uncorrelated uses |Φ_s|²|Φ_r|².
double ifsrs_sep(int ns, SeparableState state, const TwinParams& twin, const UncorrelatedPair& envs,
                 const ExperimentConfig& cfg, const TsjParams& m, double nu_s, double nu_r,
                 const QuadSettings& quad = {});

enum class SignalKind {
    fsrs,
    ifsrs01,
    ifsrs11,
    ifsrs21,
    sep_correlated_01,
    sep_correlated_11,
    sep_correlated_21,
    sep_uncorrelated_01,
    sep_uncorrelated_11,
    sep_uncorrelated_21,
    absorption,
};

std::string to_string(SignalKind k);
SignalKind signal_kind_from_string(const std::string& s);

/// Everything a signal evaluation needs.
struct SignalModel {
    TsjParams matter;
    TwinParams twin;
    UncorrelatedPair uncorrelated;
    LorentzianEnvelope probe;
    ExperimentConfig experiment;
    QuadSettings quad;
    bool include_background = false;
};

/// Value of one map cell; nu is the detuning ν − ω_p.
double signal_value(SignalKind kind, const SignalModel& model, double nu, double T);

struct SignalMap {
    Grid1D nu_axis;  // ν − ω_p, cm⁻¹
    Grid1D T_axis;   // fs
    Eigen::MatrixXd values;  // values(i_nu, j_T)
    SignalKind kind = SignalKind::fsrs;
};

/// Thread count from the argument, else the THREADS variable, else hardware concurrency.
unsigned resolve_threads(unsigned requested);

/// Dense evaluation. Rows are split across `threads` workers (0 reads THREADS,
/// falling back to hardware concurrency); the result does not depend on the split.
SignalMap scan2d(SignalKind kind, const SignalModel& model, const Grid1D& nu_axis, const Grid1D& T_axis,
                 unsigned threads = 0);

}  // namespace ramansim
