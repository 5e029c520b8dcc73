#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace ramansim {

using cplx = std::complex<double>;

inline constexpr double kSpeedOfLight = 2.99792458e-5;  // cm/fs

/// rad/fs per cm⁻¹.
inline constexpr double kAngularPerWavenumber = 2.0 * std::numbers::pi * kSpeedOfLight;

/// Spectroscopic wavenumber in cm⁻¹. All user-facing frequencies use this type.
struct Wavenumber {
    double value = 0.0;  // cm⁻¹

    constexpr Wavenumber() = default;
    constexpr explicit Wavenumber(double v) : value(v) {}
    friend constexpr bool operator==(Wavenumber, Wavenumber) = default;
};

/// ω [rad/fs] = 2πc·ν.
constexpr double wavenumber_to_angular(Wavenumber nu) { return kAngularPerWavenumber * nu.value; }
constexpr double angular_to_wavenumber(double omega) { return omega / kAngularPerWavenumber; }

/// Convert a (possibly complex) cm⁻¹ quantity to rad/fs.
inline cplx to_angular(cplx nu) { return kAngularPerWavenumber * nu; }
constexpr double to_angular(double nu) { return kAngularPerWavenumber * nu; }

/// Uniform grid, endpoints included.
class Grid1D {
public:
    Grid1D() = default;

    double start() const { return start_; }
    double stop() const { return stop_; }
    std::size_t size() const { return n_; }
    double spacing() const { return (stop_ - start_) / static_cast<double>(n_ - 1); }

    double operator[](std::size_t i) const {
        if (i + 1 == n_) return stop_;
        return start_ + static_cast<double>(i) * spacing();
    }
    std::vector<double> points() const;

    friend bool operator==(const Grid1D&, const Grid1D&) = default;

private:
    friend Grid1D make_grid(double start, double stop, std::size_t n);
    double start_ = 0.0;
    double stop_ = 1.0;
    std::size_t n_ = 2;
};

/// Throws ConfigError when n < 2 or stop <= start.
Grid1D make_grid(double start, double stop, std::size_t n);

struct ExperimentConfig {
    Wavenumber omega_p{12500.0};       // narrowband Raman pump
    Wavenumber omega_r_bar{15500.0};   // reference detector setting
    double delay_T = 0.0;              // fs, actinic delay
    double prefactor = 1.0;            // overall scale, arbitrary units

    void validate() const;
    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

}  // namespace ramansim
