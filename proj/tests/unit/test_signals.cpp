#include <numbers>
#include <random>

#include "doctest.h"
#include "ramansim/error.hpp"
#include "ramansim/oracle.hpp"
#include "ramansim/signals.hpp"

using namespace ramansim;

namespace {

bool close(cplx a, cplx b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

const TwinParams kTwin110 = TwinParams::make(14000.0, 500.0, 1.0, 110.0, 120.0);
const TwinParams kTwin10 = TwinParams::make(14000.0, 500.0, 1.0, 10.0, 120.0);
const LorentzianEnvelope kProbe{1.0, Wavenumber{14000.0}, Wavenumber{500.0}};
const ExperimentConfig kCfg{};
const TsjParams kSlow = TsjParams::slow();

// Detuning of max |f| on a 1 cm⁻¹ grid within [lo, hi].
double argmax_abs(const std::function<double(double)>& f, double lo, double hi, double step = 1.0) {
    double best = lo, best_v = -1.0;
    for (double x = lo; x <= hi; x += step) {
        const double v = std::abs(f(x));
        if (v > best_v) {
            best_v = v;
            best = x;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("classical window") {
    const double wp = kCfg.omega_p.value;
    SUBCASE("flat envelope reduces to the pole") {
        // A very wide envelope is flat near the pole; normalize it out.
        const LorentzianEnvelope flat{1e12, Wavenumber{14000.0}, Wavenumber{1e12}};
        const WindowArgs w{18.0, cplx{380.0, -9.0}};
        const cplx v = window_classical(flat, kCfg, wp + 300.0, w);
        CHECK(close(v, 1.0 / (cplx{300.0, 0.0} - w.Omega), 1e-9));
    }
    SUBCASE("frozen value") {
        const WindowArgs w{18.0, cplx{380.0, -9.0}};
        CHECK(close(window_classical(kProbe, kCfg, wp + 380.0, w), {9.7783032290260053e-10, -7.3405179101229942e-8},
                    1e-12));
    }
    SUBCASE("real-axis pole is rejected") {
        CHECK_THROWS_AS(window_classical(kProbe, kCfg, wp + 380.0, WindowArgs{0.0, cplx{380.0, 0.0}}),
                        SingularityError);
    }
}

TEST_CASE("pole placement for every window and resonance") {
    const double wp = kCfg.omega_p.value;
    const double g = kSlow.gamma_a.value, k = kSlow.k.value;
    const std::vector<WindowArgs> args = {{2 * g, cplx{380.0, -g}},
                                          {2 * g + k, cplx{620.0, -(g + k)}},
                                          {2 * g, cplx{-620.0, -g}},
                                          {2 * g + k, cplx{-380.0, -(g + k)}}};
    for (const auto& w : args) {
        const double target = w.Omega.real();
        const double lo = target - 150.0, hi = target + 150.0;
        INFO("Re Omega = " << target);
        CHECK(std::abs(argmax_abs([&](double x) { return std::abs(window_classical(kProbe, kCfg, wp + x, w)); }, lo,
                                  hi) -
                       target) <= 1.0);
        for (const TwinParams* p : {&kTwin10, &kTwin110}) {
            INFO("T1 = " << p->T1);
            const PhotonPair pair{*p};
            CHECK(std::abs(argmax_abs([&](double x) { return std::abs(window_q21(pair, kCfg, wp + x, 15500.0, w)); },
                                      lo, hi) -
                           target) <= 1.0);
            CHECK(std::abs(argmax_abs([&](double x) { return std::abs(window_q11(pair, kCfg, wp + x, 15500.0, w)); },
                                      lo, hi) -
                           target) <= 1.0);
        }
    }
}

TEST_CASE("(2,1) and (1,1) windows") {
    const double wp = kCfg.omega_p.value, wr = kCfg.omega_r_bar.value;
    const PhotonPair pair{kTwin110};
    SUBCASE("gamma = 0 numerator is |phi|^2") {
        const WindowArgs w{0.0, cplx{380.0, -9.0}};
        const double nu = wp + 250.0;
        const cplx v = window_q21(pair, kCfg, nu, wr, w) * (cplx{250.0, 0.0} - w.Omega);
        CHECK(close(v, correlated_weight(kTwin110, nu, wr), 1e-14));
    }
    SUBCASE("factorized amplitude matches the classical window") {
        const UncorrelatedPair u{kProbe, LorentzianEnvelope{1.0, Wavenumber{14000.0}, Wavenumber{500.0}}};
        const double r2 = std::norm(u.r(wr));
        for (double x : {-700.0, -380.0, 0.0, 380.0, 620.0}) {
            const WindowArgs w{27.0, cplx{620.0, -27.0}};
            CHECK(close(window_q21(PhotonPair{u}, kCfg, wp + x, wr, w), r2 * window_classical(kProbe, kCfg, wp + x, w),
                        1e-10));
        }
    }
    SUBCASE("(1,1) numerator depends on nu_s only through conj(phi)") {
        const WindowArgs w{18.0, cplx{-620.0, -9.0}};
        for (double x : {-900.0, -500.0, -100.0}) {
            const double nu = wp + x;
            const cplx ratio = window_q11(pair, kCfg, nu, wr, w) * (cplx{x, 0.0} - w.Omega) /
                               std::conj(twin_amplitude(kTwin110, nu, wr));
            CHECK(close(ratio, twin_amplitude(kTwin110, wp + w.Omega - cplx{0.0, 18.0}, wr), 1e-13));
        }
    }
    SUBCASE("(1,1) frozen value") {
        const WindowArgs w{18.0, cplx{-620.0, -9.0}};
        CHECK(close(window_q11(pair, kCfg, wp - 620.0, wr, w), {-4.0892557650386344e-9, -2.0346318675216847e-8},
                    1e-12));
    }
}

TEST_CASE("(0,1) window") {
    const PhotonPair pair{kTwin110};
    const WindowArgs w{18.0, cplx{380.0, -9.0}};
    QuadSettings q;
    q.rel_tol = 1e-8;
    const cplx base = window_q01(pair, kCfg, w, q);
    CHECK(close(base, {-7.7285933975360214e-7, -6.0439385947476609e-8}, 1e-6));

    QuadSettings wide = q;
    wide.window_sigmas = 30.0;
    CHECK(close(window_q01(pair, kCfg, w, wide), base, 1e-6));

    const WindowArgs far{18.0, cplx{380.0, -1e4}};
    const double c = kTwin110.slice_center(15500.0), half = 20.0 * 500.0;
    const QuadResult overlap = integrate_gk(
        [&](double nu) { return std::conj(twin_amplitude(kTwin110, nu, 15500.0)) * twin_amplitude(kTwin110, cplx{nu, 18.0}, 15500.0); },
        c - half, c + half, q, {c});
    const double limit = std::abs(overlap.value) / (2.0 * std::numbers::pi) / std::abs(far.Omega);
    CHECK(std::abs(std::abs(window_q01(pair, kCfg, far, q)) - limit) / limit < 0.05);
}

TEST_CASE("frozen signal values") {
    const double wp = kCfg.omega_p.value;
    CHECK(fsrs_classical(kProbe, kCfg, kSlow, wp + 620.0, 0.0) == doctest::Approx(3.5583134409143375e-8).epsilon(1e-12));
    CHECK(fsrs_classical(kProbe, kCfg, kSlow, wp + 620.0, 400.0) ==
          doctest::Approx(2.3800491132503062e-9).epsilon(1e-12));
    CHECK(ifsrs(2, kTwin110, kCfg, kSlow, wp + 620.0, 0.0) == doctest::Approx(2.1541160965223744e-9).epsilon(1e-12));
    CHECK(ifsrs(2, kTwin110, kCfg, kSlow, wp + 620.0, 400.0) ==
          doctest::Approx(1.5293929247924434e-10).epsilon(1e-12));
    CHECK(ifsrs(1, kTwin10, kCfg, kSlow, wp - 380.0, 0.0) == doctest::Approx(7.0418979597354059e-11).epsilon(1e-12));
    CHECK(ifsrs(1, kTwin10, kCfg, kSlow, wp - 380.0, 400.0) ==
          doctest::Approx(4.6112207160454762e-12).epsilon(1e-12));
    CHECK(ifsrs21_two_freq(kTwin110, kCfg, kSlow, wp + 380.0, wp + 620.0, 100.0) ==
          doctest::Approx(-3.8011941988375833e-10).epsilon(1e-12));
    CHECK(ifsrs_sep(1, SeparableState::correlated, kTwin110, {kProbe, kProbe}, kCfg, kSlow, wp - 620.0, 15500.0) ==
          doctest::Approx(-4.1048587102796449e-10).epsilon(1e-12));
}

TEST_CASE("k = 0 collapses to a single resonance") {
    TsjParams m = kSlow;
    m.k = Wavenumber{0.0};
    const double wp = kCfg.omega_p.value;
    const double c_plus = std::abs(fsrs_classical(kProbe, kCfg, m, wp + 620.0, 0.0));
    const double c_minus = std::abs(fsrs_classical(kProbe, kCfg, m, wp + 380.0, 0.0));
    CHECK(c_minus / c_plus < 0.01);
    for (const TwinParams* p : {&kTwin10, &kTwin110}) {
        INFO("T1 = " << p->T1);
        const double s_plus = std::abs(ifsrs(2, *p, kCfg, m, wp + 620.0, 0.0));
        const double s_minus = std::abs(ifsrs(2, *p, kCfg, m, wp + 380.0, 0.0));
        CHECK(s_minus / s_plus < 0.01);
    }
    // Mirror resonance of the exchange term.
    CHECK(std::abs(argmax_abs([&](double x) { return fsrs_classical(kProbe, kCfg, m, wp + x, 0.0); }, -500.0, -250.0) +
                   380.0) <= 1.0);
}

TEST_CASE("(1,1) resonances sit on the red side") {
    const double wp = kCfg.omega_p.value;
    for (const TwinParams* p : {&kTwin10, &kTwin110}) {
        auto s = [&](double x) { return ifsrs(1, *p, kCfg, kSlow, wp + x, 0.0); };
        const double a = argmax_abs(s, -700.0, -500.0), b = argmax_abs(s, -500.0, -300.0);
        MESSAGE("T1=" << p->T1 << ": peaks at " << a << ", " << b);
        CHECK(a < -500.0);
        CHECK(b > -500.0);
        CHECK(b < -300.0);
    }
}

TEST_CASE("two-frequency (2,1) signal") {
    const double wp = kCfg.omega_p.value;
    SUBCASE("detector exchange symmetry") {
        for (double T : {0.0, 250.0}) {
            const double a = ifsrs21_two_freq(kTwin110, kCfg, kSlow, wp + 300.0, wp + 640.0, T);
            const double b = ifsrs21_two_freq(kTwin110, kCfg, kSlow, wp + 640.0, wp + 300.0, T);
            CHECK(a == b);
        }
    }
    SUBCASE("equal detectors carry no delay dependence") {
        const double v0 = ifsrs21_two_freq(kTwin110, kCfg, kSlow, wp + 400.0, wp + 400.0, 0.0);
        for (double T : {100.0, 700.0, 1300.0})
            CHECK(ifsrs21_two_freq(kTwin110, kCfg, kSlow, wp + 400.0, wp + 400.0, T) == doctest::Approx(v0).epsilon(1e-14));
    }
    SUBCASE("delay oscillation at the detector difference") {
        const double d = 300.0;  // cm⁻¹
        const int n = 4096;
        const double dt = 1.0;  // fs
        std::vector<double> trace(n);
        double mean = 0.0;
        for (int i = 0; i < n; ++i) {
            trace[i] = ifsrs21_two_freq(kTwin110, kCfg, kSlow, wp + 350.0, wp + 350.0 + d, i * dt);
            mean += trace[i] / n;
        }
        // Locate the spectral peak of the trace (dense DFT scan), then refine by parabola.
        auto power = [&](double nu) {
            cplx acc{0.0, 0.0};
            for (int i = 0; i < n; ++i) acc += (trace[i] - mean) * std::polar(1.0, -to_angular(nu) * i * dt);
            return std::norm(acc);
        };
        double best = 0.0, best_p = -1.0;
        for (double nu = 200.0; nu <= 400.0; nu += 0.5) {
            const double pw = power(nu);
            if (pw > best_p) {
                best_p = pw;
                best = nu;
            }
        }
        const double pl = power(best - 0.5), pr = power(best + 0.5);
        const double refined = best + 0.25 * (pl - pr) / (pl - 2.0 * best_p + pr);
        CHECK(std::abs(refined - d) / d < 0.01);
    }
}

TEST_CASE("separable signals") {
    const double wp = kCfg.omega_p.value, wr = kCfg.omega_r_bar.value;
    const UncorrelatedPair envs{kProbe, kProbe};
    SUBCASE("no delay dependence") {
        SignalModel md{kSlow, kTwin110, envs, kProbe, kCfg, {}, false};
        for (SignalKind k : {SignalKind::sep_correlated_11, SignalKind::sep_correlated_21,
                             SignalKind::sep_uncorrelated_21}) {
            double lo = 1e300, hi = -1e300;
            for (double T = 0.0; T <= 1300.0; T += 100.0) {
                ExperimentConfig c = kCfg;
                c.delay_T = T;
                md.experiment = c;
                const double v = signal_value(k, md, 400.0, T);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            CHECK((hi - lo) <= 1e-14 * std::abs(hi));
        }
    }
    SUBCASE("uncorrelated (2,1) peaks coincide with classical FSRS") {
        TsjParams m = kSlow;
        m.k = Wavenumber{0.0};
        auto sep = [&](double x) { return ifsrs_sep(2, SeparableState::uncorrelated, kTwin110, envs, kCfg, m, wp + x, wr); };
        auto fsrs = [&](double x) { return fsrs_classical(kProbe, kCfg, m, wp + x, 0.0); };
        CHECK(argmax_abs(sep, 500.0, 750.0) == argmax_abs(fsrs, 500.0, 750.0));
    }
    SUBCASE("duplicate evaluation of the correlated (1,1) bracket") {
        const double nu = wp - 620.0;
        const double g = kSlow.gamma_a.value, k = kSlow.k.value, x = nu - wp;
        const cplx c = oracle::divide(cplx{0.0, 240.0}, cplx{k, 240.0});
        const cplx pa = oracle::divide(1.0, cplx{x + 620.0, g});
        const cplx pb = oracle::divide(1.0, cplx{x + 380.0, g + k});
        const cplx br = pa / (2.0 * g) - oracle::divide(c, cplx{2.0 * g + k, 0.0}) * (pa - pb);
        const double ref = (std::norm(oracle::twin_amplitude_reference(kTwin110, nu, wr)) * br).imag();
        const double v = ifsrs_sep(1, SeparableState::correlated, kTwin110, envs, kCfg, kSlow, nu, wr);
        CHECK(std::abs(v - ref) <= 1e-12 * std::abs(ref));
    }
}

TEST_CASE("time-gated signals") {
    const QuadSettings q;
    SUBCASE("(1,1) vanishes before the delay") {
        CHECK(ifsrs_time_11(kTwin110, kCfg, kSlow, 100.0, 200.0, true, q) == 0.0);
    }
    SUBCASE("(1,1) background plateau") {
        // Past a few dephasing times the background saturates at |Φ|²/2γ.
        const double T = 100.0, t = T + 40.0;
        const double plateau = std::norm(twin_amplitude_time(kTwin110, t - T, kCfg.omega_r_bar.value, q)) /
                               (2.0 * to_angular(kSlow.gamma_a.value));
        const double early = ifsrs_time_11_terms(kTwin110, kCfg, kSlow, t, T, q).b;
        const double late = ifsrs_time_11_terms(kTwin110, kCfg, kSlow, t + 3000.0, T + 3000.0, q).b;
        CHECK(early < late);
        CHECK(late == doctest::Approx(plateau).epsilon(1e-4));
    }
    SUBCASE("(2,1) with one detector before the delay keeps one diagonal term") {
        const double T = 100.0, t1 = 160.0, t2 = 50.0;
        const cplx phi = twin_amplitude_time(kTwin110, t1 - T, kCfg.omega_r_bar.value, q);
        const double expected = (std::norm(phi) * f_i(kSlow, 0.0, t1)).imag();
        CHECK(expected != 0.0);
        CHECK(ifsrs_time_21(kTwin110, kCfg, kSlow, t1, t2, T, q) == doctest::Approx(expected).epsilon(1e-14));
        CHECK(ifsrs_time_21(kTwin110, kCfg, kSlow, t2, t2 - 10.0, T, q) == 0.0);
    }
}

TEST_CASE("scan2d") {
    SignalModel md{kSlow, kTwin110, {kProbe, kProbe}, kProbe, kCfg, {}, false};
    SUBCASE("cells equal scalar values") {
        const Grid1D nu = make_grid(620.0, 621.0, 2), T = make_grid(0.0, 100.0, 2);
        const SignalMap m = scan2d(SignalKind::ifsrs21, md, nu, T, 1);
        CHECK(m.values(0, 0) == signal_value(SignalKind::ifsrs21, md, 620.0, 0.0));
        CHECK(m.values(1, 1) == ifsrs(2, kTwin110, kCfg, kSlow, kCfg.omega_p.value + 621.0, 100.0));
    }
    SUBCASE("thread count does not change the map") {
        const Grid1D nu = make_grid(-1000.0, 1000.0, 81), T = make_grid(0.0, 1300.0, 14);
        for (SignalKind k : {SignalKind::fsrs, SignalKind::ifsrs11, SignalKind::ifsrs21, SignalKind::sep_correlated_21}) {
            const SignalMap a = scan2d(k, md, nu, T, 1);
            const SignalMap b = scan2d(k, md, nu, T, 4);
            CHECK(a.values == b.values);
        }
    }
    SUBCASE("slow-case (2,1) peaks") {
        const Grid1D nu = make_grid(200.0, 800.0, 601), T = make_grid(0.0, 1300.0, 2);
        const SignalMap m = scan2d(SignalKind::ifsrs21, md, nu, T, 1);
        Eigen::Index i0, i1;
        m.values.col(0).maxCoeff(&i0);
        m.values.col(1).maxCoeff(&i1);
        MESSAGE("argmax at T=0: " << nu[static_cast<std::size_t>(i0)] << ", at 1.3 ps: " << nu[static_cast<std::size_t>(i1)]);
        CHECK(std::abs(nu[static_cast<std::size_t>(i0)] - 620.0) <= 1.0);
        CHECK(std::abs(nu[static_cast<std::size_t>(i1)] - 380.0) <= 1.0);
    }
    SUBCASE("a failing cell fails the scan") {
        SignalModel bad = md;
        bad.quad.max_intervals = 1;
        const Grid1D nu = make_grid(0.0, 1.0, 2), T = make_grid(0.0, 1.0, 2);
        CHECK_THROWS_AS(scan2d(SignalKind::ifsrs01, bad, nu, T, 2), Error);
    }
}

TEST_CASE("late-delay decay follows the dephasing rate") {
    SignalModel md{kSlow, kTwin110, {kProbe, kProbe}, kProbe, kCfg, {}, false};
    const double ga = to_angular(kSlow.gamma_a.value);
    const double t0 = 5.0 / to_angular(kSlow.k.value);
    const Grid1D nu = make_grid(-1000.0, 1000.0, 401);
    for (SignalKind kind : {SignalKind::fsrs, SignalKind::ifsrs01, SignalKind::ifsrs11, SignalKind::ifsrs21}) {
        // Least-squares slope of the log peak amplitude over the window.
        const int n = 11;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int i = 0; i < n; ++i) {
            const double T = t0 + 500.0 * i / (n - 1);
            double peak = 0.0;
            for (std::size_t j = 0; j < nu.size(); ++j) peak = std::max(peak, std::abs(signal_value(kind, md, nu[j], T)));
            const double y = std::log(peak);
            sx += T;
            sy += y;
            sxx += T * T;
            sxy += T * y;
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        INFO(to_string(kind));
        CHECK(std::abs(slope / (-2.0 * ga) - 1.0) < 0.05);
    }
}
