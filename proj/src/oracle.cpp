#include "ramansim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "ramansim/entanglement.hpp"
#include "ramansim/error.hpp"
#include "ramansim/quadrature.hpp"
#include "ramansim/signals.hpp"

namespace ramansim::oracle {

namespace {

struct SimpsonState {
    const std::function<cplx(double)>& f;
    int max_depth;
    double err = 0.0;
    bool failed = false;
};

cplx simpson_step(SimpsonState& st, double a, double b, cplx fa, cplx fm, cplx fb, cplx whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const cplx flm = st.f(lm), frm = st.f(rm);
    const cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const cplx diff = left + right - whole;
    if (std::abs(diff) <= 15.0 * tol) {
        st.err += std::abs(diff) / 15.0;
        return left + right + diff / 15.0;
    }
    if (depth >= st.max_depth) {
        st.failed = true;
        st.err += std::abs(diff) / 15.0;
        return left + right + diff / 15.0;
    }
    return simpson_step(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           simpson_step(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

Estimate quad_adaptive(const std::function<cplx(double)>& f, double a, double b, double tol, int max_depth) {
    SimpsonState st{f, max_depth};
    // Start from 64 equal panels so narrow features are not skipped by the first estimate.
    constexpr int panels = 64;
    const double h = (b - a) / panels;
    cplx total{0.0, 0.0};
    for (int p = 0; p < panels; ++p) {
        const double x0 = a + p * h, x1 = (p + 1 == panels) ? b : a + (p + 1) * h;
        const cplx f0 = f(x0), f1 = f(x1), fm = f(0.5 * (x0 + x1));
        const cplx whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
        total += simpson_step(st, x0, x1, f0, fm, f1, whole, tol / panels, 0);
    }
    if (st.failed) {
        std::ostringstream msg;
        msg << "adaptive Simpson reached depth " << max_depth << "; estimate |I|=" << std::abs(total)
            << ", error " << st.err;
        throw ConvergenceError(msg.str(), std::abs(total), st.err);
    }
    return {total, st.err};
}

cplx trapezoid(const std::function<cplx(double)>& f, double a, double b, std::size_t n) {
    const double h = (b - a) / static_cast<double>(n);
    cplx sum = 0.5 * (f(a) + f(b));
    for (std::size_t i = 1; i < n; ++i) sum += f(a + static_cast<double>(i) * h);
    return sum * h;
}

std::vector<double> svd_reference(const Eigen::MatrixXcd& m, int max_sweeps) {
    // Orthogonalize columns pairwise; the column norms converge to the singular values.
    Eigen::MatrixXcd a = m.rows() >= m.cols() ? m : Eigen::MatrixXcd(m.adjoint());
    const Eigen::Index n = a.cols();
    const double eps = 1e-15;
    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        converged = true;
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double alpha = a.col(p).squaredNorm();
                const double beta = a.col(q).squaredNorm();
                const cplx gamma = a.col(p).dot(a.col(q));  // conj(a_p)·a_q
                const double g = std::abs(gamma);
                if (g <= eps * std::sqrt(alpha * beta) || g == 0.0) continue;
                converged = false;
                // Rotate in the plane of columns p, q to zero their inner product.
                const cplx phase = gamma / g;
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                const Eigen::VectorXcd ap = a.col(p), aq = a.col(q);
                a.col(p) = c * ap - s * std::conj(phase) * aq;
                a.col(q) = s * phase * ap + c * aq;
            }
        }
    }
    if (!converged) throw ConvergenceError("Jacobi SVD did not converge within the sweep limit", 0.0, 0.0);
    std::vector<double> sv(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) sv[static_cast<std::size_t>(j)] = a.col(j).norm();
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

cplx divide(cplx num, cplx den) {
    const double a = num.real(), b = num.imag(), c = den.real(), d = den.imag();
    if (std::abs(c) >= std::abs(d)) {
        const double r = d / c, t = c + d * r;
        return {(a + b * r) / t, (b - a * r) / t};
    }
    const double r = c / d, t = c * r + d;
    return {(a * r + b) / t, (b * r - a) / t};
}

cplx twin_amplitude_reference(const TwinParams& p, cplx zs, double wr) {
    const double kappa = 2.0 * std::numbers::pi * 2.99792458e-5;
    auto term = [&](double ts, double tr) {
        // x = (κ(zs−ω₀)ts + κ(wr−ω₀)tr)/2, term = sin(x)/x · e^{ix} = (e^{2ix} − 1)/(2ix)
        const double xr = 0.5 * kappa * ((zs.real() - p.omega0.value) * ts + (wr - p.omega0.value) * tr);
        const double xi = 0.5 * kappa * zs.imag() * ts;
        if (std::hypot(xr, xi) < 1e-6) return cplx{1.0 - xi, xr};  // first order: 1 + ix
        const double mag = std::exp(-2.0 * xi);
        const cplx e2{mag * std::cos(2.0 * xr) - 1.0, mag * std::sin(2.0 * xr)};
        return divide(e2, cplx{-2.0 * xi, 2.0 * xr});
    };
    const cplx sum = term(p.T1, p.T2) + term(p.T2, p.T1);
    const cplx den{zs.real() + wr - p.pump.center.value, zs.imag() + p.pump.hwhm.value};
    const cplx env = divide(cplx{p.pump.amplitude, 0.0}, den);
    const double re = env.real() * sum.real() - env.imag() * sum.imag();
    const double im = env.real() * sum.imag() + env.imag() * sum.real();
    return {re, im};
}

std::vector<CheckResult> run_verification(const TwinParams& twin, const LorentzianEnvelope& probe, double omega_p,
                                          double omega_r_bar, double gamma_a, double omega_minus) {
    std::vector<CheckResult> out;
    auto add = [&](std::string name, double dev, double tol) { out.push_back({std::move(name), dev, tol, dev < tol}); };

    // Twin amplitude against the real-component re-evaluation.
    {
        std::mt19937_64 rng(20240611);
        std::uniform_real_distribution<double> off(-3.0, 3.0);
        double worst = 0.0;
        for (int n = 0; n < 32; ++n) {
            const double ws = twin.omega0.value + off(rng) * twin.sigma0();
            const double wr = twin.omega0.value + off(rng) * twin.sigma0();
            const cplx zs{ws, n % 2 == 0 ? 0.0 : 2.0 * gamma_a};
            const cplx a = twin_amplitude(twin, zs, wr), b = twin_amplitude_reference(twin, zs, wr);
            worst = std::max(worst, std::abs(a - b) / std::abs(b));
        }
        add("twin_amplitude vs reference evaluation", worst, 1e-12);
    }

    ExperimentConfig cfg;
    cfg.omega_p = Wavenumber{omega_p};
    cfg.omega_r_bar = Wavenumber{omega_r_bar};
    const WindowArgs w{2.0 * gamma_a, cplx{omega_minus, -gamma_a}};
    QuadSettings quad;
    const double c = twin.slice_center(omega_r_bar);
    const double half = quad.window_sigmas * twin.sigma0();

    // Gauss–Kronrod window against a fine trapezoid and adaptive Simpson on the same integrand.
    {
        const cplx main = window_q01(PhotonPair{twin}, cfg, w, quad);
        auto f = [&](double nu) {
            return std::conj(twin_amplitude(twin, nu, omega_r_bar)) * twin_amplitude(twin, cplx{nu, w.gamma}, omega_r_bar) /
                   (nu - omega_p - w.Omega) / (2.0 * std::numbers::pi);
        };
        const cplx trap = trapezoid(f, c - half, c + half, std::size_t{1} << 20);
        add("window_q01 vs 2^20-point trapezoid", std::abs(main - trap) / std::abs(trap), 1e-6);
        const Estimate simp = quad_adaptive(f, c - half, c + half, 1e-10 * std::abs(trap));
        add("window_q01 vs adaptive Simpson", std::abs(main - simp.value) / std::abs(simp.value), 1e-6);
    }

    // Time amplitude at t = 0 against adaptive Simpson.
    {
        const cplx main = twin_amplitude_time(twin, 0.0, omega_r_bar, quad);
        auto f = [&](double nu) { return twin_amplitude(twin, nu, omega_r_bar); };
        const Estimate simp = quad_adaptive(f, c - half, c + half, 1e-11 * std::abs(main) / kAngularPerWavenumber);
        const cplx ref = simp.value * kAngularPerWavenumber / (2.0 * std::numbers::pi);
        add("twin_amplitude_time(0) vs adaptive Simpson", std::abs(main - ref) / std::abs(ref), 1e-6);
    }

    // Main SVD against Jacobi on a 64×64 sample of the twin amplitude.
    {
        const Grid1D ax = make_grid(twin.omega0.value - 4000.0, twin.omega0.value + 4000.0, 64);
        const AmplitudeMatrix m = sample_amplitude([&](double s, double r) { return twin_amplitude(twin, s, r); }, ax, ax);
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(m.values);
        const Eigen::VectorXd sv = svd.singularValues();
        const std::vector<double> ref = svd_reference(m.values);
        double worst = 0.0;
        for (std::size_t i = 0; i < ref.size(); ++i)
            worst = std::max(worst, std::abs(sv(static_cast<Eigen::Index>(i)) - ref[i]) / ref[0]);
        add("singular values vs Jacobi reference (64x64)", worst, 1e-9);
    }

    // Classical window against the Smith-division re-evaluation.
    {
        const double nu = omega_p + omega_minus;
        const cplx main = window_classical(probe, cfg, nu, w);
        const cplx e1 = divide(probe.amplitude, cplx{nu - probe.center.value, probe.hwhm.value});
        const cplx e2 = divide(probe.amplitude, cplx{nu - probe.center.value, probe.hwhm.value + w.gamma});
        const cplx ref = divide(std::conj(e1) * e2, cplx{nu - omega_p - w.Omega.real(), -w.Omega.imag()});
        add("window_classical vs reference evaluation", std::abs(main - ref) / std::abs(ref), 1e-12);
    }
    return out;
}

}  // namespace ramansim::oracle
