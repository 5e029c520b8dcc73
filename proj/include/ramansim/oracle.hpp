#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "ramansim/fields.hpp"
#include "ramansim/units.hpp"

namespace ramansim::oracle {

struct Estimate {
    cplx value;
    double error = 0.0;
};

/// Recursive adaptive Simpson with Richardson correction. Independent of the
/// Gauss–Kronrod path. Throws ConvergenceError past the depth limit.
Estimate quad_adaptive(const std::function<cplx(double)>& f, double a, double b, double tol, int max_depth = 48);

/// Composite trapezoid with n equal panels.
cplx trapezoid(const std::function<cplx(double)>& f, double a, double b, std::size_t n);

/// Singular values by one-sided Jacobi rotations, descending.
std::vector<double> svd_reference(const Eigen::MatrixXcd& m, int max_sweeps = 60);

/// Complex division by Smith's algorithm on real components.
cplx divide(cplx num, cplx den);

/// Straightforward re-evaluation of the twin amplitude on real components.
cplx twin_amplitude_reference(const TwinParams& p, cplx zs, double wr);

struct CheckResult {
    std::string name;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// Cross-checks of the main numerical paths against the oracles, for CLI --verify.
std::vector<CheckResult> run_verification(const TwinParams& twin, const LorentzianEnvelope& probe, double omega_p,
                                          double omega_r_bar, double gamma_a, double omega_minus);

}  // namespace ramansim::oracle
