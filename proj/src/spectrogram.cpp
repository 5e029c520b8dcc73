#include "ramansim/spectrogram.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "ramansim/error.hpp"

namespace ramansim {

Spectrogram wigner_transform(const FieldSlice& field, double sigma, const Grid1D& t_axis, const Grid1D& nu_axis,
                             const WignerSettings& s) {
    if (!(s.delta_halfwidth_sigmas >= 10.0))
        throw ConfigError("wigner: difference-frequency window must be at least 20 sigma wide");
    const double half = s.delta_halfwidth_sigmas * sigma;
    // Step chosen so the aliasing period 2π/(κh) exceeds twice the largest |t|.
    const double t_span = 2.0 * std::max(std::abs(t_axis.start()), std::abs(t_axis.stop()));
    const double h_max = 2.0 * std::numbers::pi / (kAngularPerWavenumber * t_span);
    const std::size_t half_steps = static_cast<std::size_t>(std::ceil(half / h_max));
    const double h = half / static_cast<double>(half_steps);
    const std::size_t nd = 2 * half_steps + 1;

    std::vector<double> deltas(nd);
    for (std::size_t k = 0; k < nd; ++k)
        deltas[k] = (static_cast<double>(k) - static_cast<double>(half_steps)) * h;

    const std::size_t nt = t_axis.size(), nn = nu_axis.size();
    std::vector<cplx> phase(nt * nd);
    for (std::size_t i = 0; i < nt; ++i) {
        const double wt = kAngularPerWavenumber * t_axis[i];
        for (std::size_t k = 0; k < nd; ++k) phase[i * nd + k] = std::polar(1.0, -wt * deltas[k]);
    }

    Spectrogram out{t_axis, nu_axis, Eigen::MatrixXd(nt, nn), 0.0};
    const double measure = kAngularPerWavenumber * h / (2.0 * std::numbers::pi);
    std::vector<cplx> g(nd);
    double max_imag = 0.0, max_abs = 0.0;
    for (std::size_t j = 0; j < nn; ++j) {
        const double nu = nu_axis[j];
        for (std::size_t k = 0; k < nd; ++k) g[k] = std::conj(field(nu - 0.5 * deltas[k])) * field(nu + 0.5 * deltas[k]);
        g.front() *= 0.5;
        g.back() *= 0.5;
        for (std::size_t i = 0; i < nt; ++i) {
            cplx acc{0.0, 0.0};
            const cplx* ph = &phase[i * nd];
            for (std::size_t k = 0; k < nd; ++k) acc += g[k] * ph[k];
            acc *= measure;
            out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc.real();
            max_imag = std::max(max_imag, std::abs(acc.imag()));
            max_abs = std::max(max_abs, std::abs(acc.real()));
        }
    }
    out.max_imag_residue = max_abs > 0 ? max_imag / max_abs : 0.0;
    if (out.max_imag_residue > 1e-8) {
        std::ostringstream msg;
        msg << "wigner: imaginary residue " << out.max_imag_residue << " exceeds 1e-8 of max|W|";
        throw Error(msg.str());
    }
    return out;
}

Spectrogram wigner_classical(const LorentzianEnvelope& env, const Grid1D& t_axis, const Grid1D& nu_axis,
                             const WignerSettings& s) {
    return wigner_transform([&](double nu) { return env(nu); }, env.hwhm.value, t_axis, nu_axis, s);
}

Spectrogram wigner_twin(const TwinParams& p, double wr, const Grid1D& t_axis, const Grid1D& nu_axis,
                        const WignerSettings& s) {
    return wigner_transform([&](double nu) { return twin_amplitude(p, nu, wr); }, p.sigma0(), t_axis, nu_axis, s);
}

std::vector<double> frequency_marginal(const Spectrogram& s) {
    const double dt = s.t_axis.spacing();
    std::vector<double> m(s.nu_axis.size(), 0.0);
    for (Eigen::Index j = 0; j < s.values.cols(); ++j) {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < s.values.rows(); ++i) {
            const double w = (i == 0 || i + 1 == s.values.rows()) ? 0.5 : 1.0;
            acc += w * s.values(i, j);
        }
        m[static_cast<std::size_t>(j)] = acc * dt;
    }
    return m;
}

std::vector<double> time_marginal(const Spectrogram& s) {
    const double dnu = s.nu_axis.spacing() * kAngularPerWavenumber / (2.0 * std::numbers::pi);
    std::vector<double> m(s.t_axis.size(), 0.0);
    for (Eigen::Index i = 0; i < s.values.rows(); ++i) {
        double acc = 0.0;
        for (Eigen::Index j = 0; j < s.values.cols(); ++j) {
            const double w = (j == 0 || j + 1 == s.values.cols()) ? 0.5 : 1.0;
            acc += w * s.values(i, j);
        }
        m[static_cast<std::size_t>(i)] = acc * dnu;
    }
    return m;
}

double fwhm(const std::vector<double>& y, double spacing, bool* resolution_limited) {
    const auto peak_it = std::max_element(y.begin(), y.end());
    const double peak = *peak_it;
    if (!(peak > 0)) throw MultiModalError("fwhm: profile has no positive maximum");
    const double half = 0.5 * peak;
    std::size_t runs = 0;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (y[i] >= half && (i == 0 || y[i - 1] < half)) ++runs;
    if (runs != 1) {
        std::ostringstream msg;
        msg << "fwhm: " << runs << " separate regions above half maximum";
        throw MultiModalError(msg.str());
    }
    std::size_t lo = static_cast<std::size_t>(peak_it - y.begin()), hi = lo;
    while (lo > 0 && y[lo - 1] >= half) --lo;
    while (hi + 1 < y.size() && y[hi + 1] >= half) ++hi;
    double left = static_cast<double>(lo), right = static_cast<double>(hi);
    if (lo > 0) left -= (y[lo] - half) / (y[lo] - y[lo - 1]);
    if (hi + 1 < y.size()) right += (y[hi] - half) / (y[hi] - y[hi + 1]);
    double width = (right - left) * spacing;
    const bool limited = width <= spacing;
    if (limited) width = spacing;
    if (resolution_limited) *resolution_limited = limited;
    return width;
}

namespace {

// Fraction of above-half-maximum mass held by the largest 4-connected region.
double dominant_fraction(const Eigen::MatrixXd& v) {
    const double half = 0.5 * v.maxCoeff();
    const Eigen::Index rows = v.rows(), cols = v.cols();
    std::vector<int> label(static_cast<std::size_t>(rows * cols), -1);
    std::vector<double> mass;
    std::vector<Eigen::Index> stack;
    double total = 0.0;
    for (Eigen::Index start = 0; start < rows * cols; ++start) {
        const Eigen::Index r0 = start / cols, c0 = start % cols;
        if (v(r0, c0) < half || label[static_cast<std::size_t>(start)] >= 0) continue;
        const int id = static_cast<int>(mass.size());
        double m = 0.0;
        stack.assign(1, start);
        label[static_cast<std::size_t>(start)] = id;
        while (!stack.empty()) {
            const Eigen::Index cur = stack.back();
            stack.pop_back();
            const Eigen::Index r = cur / cols, c = cur % cols;
            m += v(r, c);
            const Eigen::Index nb[4][2] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
            for (const auto& q : nb) {
                if (q[0] < 0 || q[0] >= rows || q[1] < 0 || q[1] >= cols) continue;
                const Eigen::Index idx = q[0] * cols + q[1];
                if (v(q[0], q[1]) >= half && label[static_cast<std::size_t>(idx)] < 0) {
                    label[static_cast<std::size_t>(idx)] = id;
                    stack.push_back(idx);
                }
            }
        }
        mass.push_back(m);
        total += m;
    }
    return *std::max_element(mass.begin(), mass.end()) / total;
}

}  // namespace

MarginalWidths marginal_widths(const Spectrogram& s) {
    MarginalWidths w;
    w.dominant_fraction = dominant_fraction(s.values);
    if (w.dominant_fraction < 0.5) {
        std::ostringstream msg;
        msg << "marginal_widths: largest half-maximum region holds only " << w.dominant_fraction
            << " of the above-half-maximum mass";
        throw MultiModalError(msg.str());
    }
    w.delta_nu = fwhm(frequency_marginal(s), s.nu_axis.spacing(), &w.nu_resolution_limited);
    w.delta_t = 1e-3 * fwhm(time_marginal(s), s.t_axis.spacing(), &w.t_resolution_limited);
    w.product = w.delta_nu * w.delta_t;
    return w;
}

}  // namespace ramansim
