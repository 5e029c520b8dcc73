#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <vector>

#include "ramansim/units.hpp"

namespace ramansim {

struct AmplitudeMatrix {
    Eigen::MatrixXcd values;  // rows follow s_axis, columns r_axis
    Grid1D s_axis;
    Grid1D r_axis;
};

struct SchmidtResult {
    std::vector<double> lambdas;  // descending, sums to 1
    double r_p = 1.0;
    double reconstruction_error = 0.0;
    Eigen::MatrixXcd s_modes;  // ψ_n as columns, sampled on s_axis (weights folded in)
    Eigen::MatrixXcd r_modes;  // φ_n as columns
};

using AmplitudeFunction = std::function<cplx(double ws, double wr)>;

/// M(i, j) = Φ(s_i, r_j)·√(Δs·Δr).
AmplitudeMatrix sample_amplitude(const AmplitudeFunction& source, const Grid1D& s_axis, const Grid1D& r_axis);

/// Throws DegenerateInputError for an all-zero matrix.
SchmidtResult schmidt_decompose(const AmplitudeMatrix& m);

/// 1/Σλ². Rejects negative entries or a sum off 1 by more than 1e-8.
double participation_ratio(std::span<const double> lambdas);

}  // namespace ramansim
