#pragma once

#include <functional>

#include "ramansim/units.hpp"

namespace ramansim {

struct QuadSettings {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    double window_sigmas = 20.0;  // half-width of the integration window, in units of the envelope hwhm
    int max_intervals = 20000;

    void validate() const;
    friend bool operator==(const QuadSettings&, const QuadSettings&) = default;
};

struct QuadResult {
    cplx value;
    double error = 0.0;
    int intervals = 0;
};

using ComplexIntegrand = std::function<cplx(double)>;

/// Globally adaptive 7/15-point Gauss–Kronrod on [a, b]. Optional interior
/// breakpoints seed the subdivision. Throws ConvergenceError when the
/// interval budget runs out before the tolerance is met.
QuadResult integrate_gk(const ComplexIntegrand& f, double a, double b, const QuadSettings& s,
                        const std::vector<double>& breakpoints = {});

}  // namespace ramansim
