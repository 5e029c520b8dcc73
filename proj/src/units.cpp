#include "ramansim/units.hpp"

#include <cmath>

#include "ramansim/error.hpp"

namespace ramansim {

std::vector<double> Grid1D::points() const {
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = (*this)[i];
    return out;
}

Grid1D make_grid(double start, double stop, std::size_t n) {
    if (n < 2) throw ConfigError("grid needs at least 2 points");
    if (!std::isfinite(start) || !std::isfinite(stop) || !(stop > start))
        throw ConfigError("grid requires finite stop > start");
    Grid1D g;
    g.start_ = start;
    g.stop_ = stop;
    g.n_ = n;
    return g;
}

void ExperimentConfig::validate() const {
    if (!(omega_p.value > 0)) throw ConfigError("experiment: omega_p must be positive");
    if (!(omega_r_bar.value > 0)) throw ConfigError("experiment: omega_r_bar must be positive");
    if (!(delay_T >= 0) || !std::isfinite(delay_T))
        throw ConfigError("experiment: delay_T must be non-negative");
    if (!(prefactor > 0) || !std::isfinite(prefactor))
        throw ConfigError("experiment: prefactor must be positive");
}

}  // namespace ramansim
