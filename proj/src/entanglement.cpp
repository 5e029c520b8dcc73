#include "ramansim/entanglement.hpp"

#include <cmath>

#include "ramansim/error.hpp"

namespace ramansim {

AmplitudeMatrix sample_amplitude(const AmplitudeFunction& source, const Grid1D& s_axis, const Grid1D& r_axis) {
    AmplitudeMatrix m{Eigen::MatrixXcd(s_axis.size(), r_axis.size()), s_axis, r_axis};
    const double w = std::sqrt(s_axis.spacing() * r_axis.spacing());
    for (std::size_t j = 0; j < r_axis.size(); ++j) {
        const double wr = r_axis[j];
        for (std::size_t i = 0; i < s_axis.size(); ++i) {
            const cplx v = source(s_axis[i], wr) * w;
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw Error("sample_amplitude: non-finite amplitude sample");
            m.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
        }
    }
    return m;
}

SchmidtResult schmidt_decompose(const AmplitudeMatrix& m) {
    const double norm = m.values.norm();
    if (!(norm > 0)) throw DegenerateInputError("schmidt_decompose: amplitude matrix is zero");

    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m.values, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& s = svd.singularValues();
    const double total = s.squaredNorm();

    SchmidtResult out;
    out.lambdas.resize(static_cast<std::size_t>(s.size()));
    for (Eigen::Index n = 0; n < s.size(); ++n) out.lambdas[static_cast<std::size_t>(n)] = s(n) * s(n) / total;
    double sum_sq = 0.0;
    for (double l : out.lambdas) sum_sq += l * l;
    out.r_p = 1.0 / sum_sq;

    const Eigen::MatrixXcd rebuilt = svd.matrixU() * s.cast<cplx>().asDiagonal() * svd.matrixV().adjoint();
    out.reconstruction_error = (m.values - rebuilt).norm() / norm;
    out.s_modes = svd.matrixU();
    out.r_modes = svd.matrixV();
    return out;
}

double participation_ratio(std::span<const double> lambdas) {
    if (lambdas.empty()) throw DegenerateInputError("participation_ratio: empty spectrum");
    double sum = 0.0, sum_sq = 0.0;
    for (double l : lambdas) {
        if (!(l >= 0)) throw DegenerateInputError("participation_ratio: negative eigenvalue");
        sum += l;
        sum_sq += l * l;
    }
    if (std::abs(sum - 1.0) > 1e-8) throw DegenerateInputError("participation_ratio: eigenvalues not normalized");
    return 1.0 / sum_sq;
}

}  // namespace ramansim
