#include "ramansim/signals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <thread>
#include <vector>

#include "ramansim/error.hpp"

namespace ramansim {

namespace {

constexpr cplx I{0.0, 1.0};

cplx checked_pole(double x, cplx Omega) {
    const cplx den = x - Omega;
    if (Omega.imag() == 0.0 && std::abs(den) < 1e-9) {
        std::ostringstream msg;
        msg << "window pole on the real axis at detuning " << x;
        throw SingularityError(msg.str());
    }
    return 1.0 / den;
}

double matter_scale(const TsjParams& m, const ExperimentConfig& cfg) {
    return cfg.prefactor * m.mu_ag * m.mu_ag * m.alpha_ac * m.alpha_ac;
}

// Shared TSJ population structure:
// e^{−2γT}[R(2γ, Ωa) − c·e^{−kT}(R(2γ+k, Ωa) − R(2γ+k, Ωb))].
template <class Window>
cplx tsj_bracket(const TsjParams& m, double T, Window&& R, cplx Omega_a, cplx Omega_b) {
    const double g = m.gamma_a.value, k = m.k.value;
    const cplx first = R(WindowArgs{2.0 * g, Omega_a});
    const cplx tunnel = R(WindowArgs{2.0 * g + k, Omega_a}) - R(WindowArgs{2.0 * g + k, Omega_b});
    return std::exp(-2.0 * to_angular(g) * T) * (first - m.tunneling_weight() * std::exp(-to_angular(k) * T) * tunnel);
}

cplx gain_resonance_a(const TsjParams& m) { return {m.omega_minus(), -m.gamma_a.value}; }
cplx gain_resonance_b(const TsjParams& m) { return {m.omega_plus(), -(m.gamma_a.value + m.k.value)}; }
cplx loss_resonance_a(const TsjParams& m) { return {-m.omega_plus(), -m.gamma_a.value}; }
cplx loss_resonance_b(const TsjParams& m) { return {-m.omega_minus(), -(m.gamma_a.value + m.k.value)}; }

// Steady-state bracket of the separable signals at detunings x (first pole) and y (second pole).
cplx separable_bracket(const TsjParams& m, double x, double y) {
    const double g = m.gamma_a.value, k = m.k.value;
    const cplx pa = 1.0 / (x + I * g);
    const cplx pb = 1.0 / (y + I * (g + k));
    return pa / (2.0 * g) - m.tunneling_weight() / (2.0 * g + k) * (pa - pb);
}

}  // namespace

cplx window_classical(const LorentzianEnvelope& probe, const ExperimentConfig& cfg, double nu, const WindowArgs& w) {
    const cplx num = std::conj(probe(nu)) * probe(cplx{nu, w.gamma});
    return num * checked_pole(nu - cfg.omega_p.value, w.Omega);
}

cplx window_q01(const PhotonPair& pair, const ExperimentConfig& cfg, const WindowArgs& w, const QuadSettings& quad) {
    const double wr = cfg.omega_r_bar.value;
    const double c = pair_slice_center(pair, wr);
    const double half = quad.window_sigmas * pair_slice_width(pair);
    const double wp = cfg.omega_p.value;
    auto f = [&](double nu) {
        return std::conj(pair_amplitude(pair, nu, wr)) * pair_amplitude(pair, cplx{nu, w.gamma}, wr) /
               (nu - wp - w.Omega);
    };
    const QuadResult r = integrate_gk(f, c - half, c + half, quad, {c, wp + w.Omega.real()});
    return r.value / (2.0 * std::numbers::pi);
}

cplx window_q21(const PhotonPair& pair, const ExperimentConfig& cfg, double nu_s, double nu_r, const WindowArgs& w) {
    const cplx num = std::conj(pair_amplitude(pair, nu_s, nu_r)) * pair_amplitude(pair, cplx{nu_s, w.gamma}, nu_r);
    return num * checked_pole(nu_s - cfg.omega_p.value, w.Omega);
}

cplx window_q11(const PhotonPair& pair, const ExperimentConfig& cfg, double nu_s, double nu_r, const WindowArgs& w) {
    const cplx fixed = cfg.omega_p.value + w.Omega - I * w.gamma;
    const cplx num = std::conj(pair_amplitude(pair, nu_s, nu_r)) * pair_amplitude(pair, fixed, nu_r);
    return num * checked_pole(nu_s - cfg.omega_p.value, w.Omega);
}

double fsrs_classical(const LorentzianEnvelope& probe, const ExperimentConfig& cfg, const TsjParams& m, double nu,
                      double T) {
    auto R = [&](const WindowArgs& w) { return window_classical(probe, cfg, nu, w); };
    const cplx gain = tsj_bracket(m, T, R, gain_resonance_a(m), gain_resonance_b(m));
    const cplx loss = tsj_bracket(m, T, R, loss_resonance_a(m), loss_resonance_b(m));
    return -(matter_scale(m, cfg) * (gain - loss)).imag();
}

double ifsrs(int ns, const PhotonPair& pair, const ExperimentConfig& cfg, const TsjParams& m, double nu_s, double T,
             const QuadSettings& quad) {
    const double scale = matter_scale(m, cfg);
    const double wr = cfg.omega_r_bar.value;
    switch (ns) {
        case 0: {
            auto R = [&](const WindowArgs& w) { return window_q01(pair, cfg, w, quad); };
            return (scale * tsj_bracket(m, T, R, gain_resonance_a(m), gain_resonance_b(m))).imag();
        }
        case 1: {
            auto R = [&](const WindowArgs& w) { return window_q11(pair, cfg, nu_s, wr, w); };
            return -(scale * tsj_bracket(m, T, R, loss_resonance_a(m), loss_resonance_b(m))).imag();
        }
        case 2: {
            auto R = [&](const WindowArgs& w) { return window_q21(pair, cfg, nu_s, wr, w); };
            return -(scale * tsj_bracket(m, T, R, gain_resonance_a(m), gain_resonance_b(m))).imag();
        }
        default:
            throw ConfigError("ifsrs: photon number ns must be 0, 1 or 2");
    }
}

double ifsrs11_background(const PhotonPair& pair, const ExperimentConfig& cfg, const TsjParams& m, double nu_s,
                          double T) {
    const double g = m.gamma_a.value, wr = cfg.omega_r_bar.value;
    const cplx phi = pair_amplitude(pair, nu_s, wr);
    const cplx shifted = pair_amplitude(pair, cplx{nu_s, 2.0 * g}, wr);
    const cplx v = std::conj(phi) / (2.0 * g) * (phi - std::exp(-2.0 * to_angular(g) * T) * shifted);
    return (matter_scale(m, cfg) * v).real();
}

double ifsrs21_two_freq(const PhotonPair& pair, const ExperimentConfig& cfg, const TsjParams& m, double nu_s1,
                        double nu_s2, double T) {
    const double g = m.gamma_a.value, k = m.k.value, wp = cfg.omega_p.value, wr = cfg.omega_r_bar.value;
    const cplx c = m.tunneling_weight();
    const cplx phi1 = pair_amplitude(pair, nu_s1, wr);
    const cplx phi2 = pair_amplitude(pair, nu_s2, wr);
    auto term = [&](double a, double b, cplx phia, cplx phib) {
        const cplx ma = 1.0 / (a - wp - m.omega_minus() + I * g);
        const cplx pa = 1.0 / (a - wp - m.omega_plus() + I * (g + k));
        const cplx mb = 1.0 / (b - wp - m.omega_minus() + I * g);
        const cplx pb = 1.0 / (b - wp - m.omega_plus() + I * (g + k));
        const cplx stationary = phia * (mb / (2.0 * g) - c / (k + 2.0 * g) * (mb - pb));
        const cplx interference =
            I * phib * std::polar(1.0, to_angular(b - a) * T) *
            (ma / (b - a - 2.0 * I * g) - c / (b - a - I * (2.0 * g + k)) * (ma - pa));
        return std::conj(phia) * (stationary + interference);
    };
    const cplx sum = term(nu_s1, nu_s2, phi1, phi2) + term(nu_s2, nu_s1, phi2, phi1);
    return (matter_scale(m, cfg) * sum).imag();
}

TimeGated11 ifsrs_time_11_terms(const TwinParams& p, const ExperimentConfig& cfg, const TsjParams& m, double t_s,
                                double T, const QuadSettings& quad) {
    if (t_s < T) return {};
    const double wr = cfg.omega_r_bar.value, wp = cfg.omega_p.value;
    const double g = m.gamma_a.value, k = m.k.value;
    const double ga = to_angular(g), ka = to_angular(k);
    const double tau = t_s - T;
    const cplx phi_t = twin_amplitude_time(p, tau, wr, quad);
    const cplx c = m.tunneling_weight();

    auto phase = [&](double w_res, double rate) {
        return std::exp((I * to_angular(w_res - wp) + rate) * tau);
    };
    const cplx lead = twin_amplitude(p, cplx{wp - m.omega_plus(), g}, wr) * phase(m.omega_plus(), ga);
    const cplx tunnel = twin_amplitude(p, cplx{wp - m.omega_plus(), g + k}, wr) * phase(m.omega_plus(), ka + ga) -
                        twin_amplitude(p, cplx{wp - m.omega_minus(), g}, wr) * phase(m.omega_minus(), ga);
    const cplx a = std::conj(phi_t) * std::exp(-2.0 * ga * t_s) * (lead - c * std::exp(-ka * t_s) * tunnel);

    const double scale = matter_scale(m, cfg);
    TimeGated11 out;
    out.a = scale * a.real();
    out.b = scale * std::norm(phi_t) * (1.0 - std::exp(-2.0 * ga * t_s)) / (2.0 * ga);
    return out;
}

double ifsrs_time_11(const TwinParams& p, const ExperimentConfig& cfg, const TsjParams& m, double t_s, double T,
                     bool include_background, const QuadSettings& quad) {
    const TimeGated11 r = ifsrs_time_11_terms(p, cfg, m, t_s, T, quad);
    return include_background ? r.a + r.b : r.a;
}

double ifsrs_time_21(const TwinParams& p, const ExperimentConfig& cfg, const TsjParams& m, double t_s1, double t_s2,
                     double T, const QuadSettings& quad) {
    const double wr = cfg.omega_r_bar.value;
    const double wp = to_angular(cfg.omega_p.value);
    const double t[2] = {t_s1, t_s2};
    cplx phi[2];
    for (int i = 0; i < 2; ++i) phi[i] = t[i] >= T ? twin_amplitude_time(p, t[i] - T, wr, quad) : cplx{};
    cplx sum{0.0, 0.0};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double dt = t[j] - t[i];
            sum += std::conj(phi[i]) * phi[j] * std::polar(1.0, -wp * dt) * f_i(m, dt, t[i], cfg.prefactor);
        }
    return sum.imag();
}

double ifsrs_sep(int ns, SeparableState state, const TwinParams& twin, const UncorrelatedPair& envs,
                 const ExperimentConfig& cfg, const TsjParams& m, double nu_s, double nu_r, const QuadSettings& quad) {
    auto weight = [&](double ws, double wr) {
        if (state == SeparableState::correlated) return correlated_weight(twin, ws, wr);
        return std::norm(envs.s(ws)) * std::norm(envs.r(wr));
    };
    const double scale = matter_scale(m, cfg);
    const double wp = cfg.omega_p.value;
    const double wpl = m.omega_plus(), wmi = m.omega_minus();
    switch (ns) {
        case 0: {
            const double wr = cfg.omega_r_bar.value;
            const PhotonPair pair = state == SeparableState::correlated ? PhotonPair{twin} : PhotonPair{envs};
            const double c = pair_slice_center(pair, wr);
            const double half = quad.window_sigmas * pair_slice_width(pair);
            auto f = [&](double w) {
                const double x = w - wp;
                return weight(w, wr) * separable_bracket(m, x - wmi, x - wpl);
            };
            const QuadResult r = integrate_gk(f, c - half, c + half, quad, {c, wp + wmi, wp + wpl});
            return -(scale * r.value / (2.0 * std::numbers::pi)).imag();
        }
        case 1: {
            const double x = nu_s - wp;
            return (scale * weight(nu_s, nu_r) * separable_bracket(m, x + wpl, x + wmi)).imag();
        }
        case 2: {
            const double x = nu_s - wp;
            return -(scale * weight(nu_s, nu_r) * separable_bracket(m, x - wmi, x - wpl)).imag();
        }
        default:
            throw ConfigError("ifsrs_sep: photon number ns must be 0, 1 or 2");
    }
}

std::string to_string(SignalKind k) {
    switch (k) {
        case SignalKind::fsrs: return "fsrs";
        case SignalKind::ifsrs01: return "ifsrs01";
        case SignalKind::ifsrs11: return "ifsrs11";
        case SignalKind::ifsrs21: return "ifsrs21";
        case SignalKind::sep_correlated_01: return "sep-correlated-01";
        case SignalKind::sep_correlated_11: return "sep-correlated-11";
        case SignalKind::sep_correlated_21: return "sep-correlated-21";
        case SignalKind::sep_uncorrelated_01: return "sep-uncorrelated-01";
        case SignalKind::sep_uncorrelated_11: return "sep-uncorrelated-11";
        case SignalKind::sep_uncorrelated_21: return "sep-uncorrelated-21";
        case SignalKind::absorption: return "absorption";
    }
    return "unknown";
}

SignalKind signal_kind_from_string(const std::string& s) {
    for (int i = 0; i <= static_cast<int>(SignalKind::absorption); ++i) {
        const auto k = static_cast<SignalKind>(i);
        if (to_string(k) == s) return k;
    }
    throw ConfigError("unknown signal kind '" + s + "'");
}

double signal_value(SignalKind kind, const SignalModel& md, double nu, double T) {
    const double abs_nu = md.experiment.omega_p.value + nu;
    const double wr = md.experiment.omega_r_bar.value;
    const PhotonPair twin{md.twin};
    switch (kind) {
        case SignalKind::fsrs: return fsrs_classical(md.probe, md.experiment, md.matter, abs_nu, T);
        case SignalKind::ifsrs01: return ifsrs(0, twin, md.experiment, md.matter, abs_nu, T, md.quad);
        case SignalKind::ifsrs11: {
            double v = ifsrs(1, twin, md.experiment, md.matter, abs_nu, T, md.quad);
            if (md.include_background) v += ifsrs11_background(twin, md.experiment, md.matter, abs_nu, T);
            return v;
        }
        case SignalKind::ifsrs21: return ifsrs(2, twin, md.experiment, md.matter, abs_nu, T, md.quad);
        case SignalKind::sep_correlated_01:
        case SignalKind::sep_correlated_11:
        case SignalKind::sep_correlated_21:
        case SignalKind::sep_uncorrelated_01:
        case SignalKind::sep_uncorrelated_11:
        case SignalKind::sep_uncorrelated_21: {
            const int idx = static_cast<int>(kind) - static_cast<int>(SignalKind::sep_correlated_01);
            const int ns = idx % 3;
            const auto state = idx < 3 ? SeparableState::correlated : SeparableState::uncorrelated;
            return ifsrs_sep(ns, state, md.twin, md.uncorrelated, md.experiment, md.matter, abs_nu, wr, md.quad);
        }
        case SignalKind::absorption: return absorption(md.matter, abs_nu, md.experiment.prefactor);
    }
    throw ConfigError("unknown signal kind");
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SignalMap scan2d(SignalKind kind, const SignalModel& model, const Grid1D& nu_axis, const Grid1D& T_axis,
                 unsigned threads) {
    // Signals constant along an axis are evaluated once along it and broadcast.
    const bool varies_nu = kind != SignalKind::ifsrs01 && kind != SignalKind::sep_correlated_01 &&
                           kind != SignalKind::sep_uncorrelated_01;
    const bool varies_T = kind == SignalKind::fsrs || kind == SignalKind::ifsrs01 || kind == SignalKind::ifsrs11 ||
                          kind == SignalKind::ifsrs21;
    const std::size_t nn = varies_nu ? nu_axis.size() : 1, nt = varies_T ? T_axis.size() : 1;
    SignalMap out{nu_axis, T_axis, Eigen::MatrixXd(nu_axis.size(), T_axis.size()), kind};
    std::vector<std::string> failures(nn);

    // Each worker owns rows i ≡ w (mod n); every cell is written exactly once,
    // so the result is independent of the thread count.
    auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t i = first; i < nn; i += stride) {
            try {
                for (std::size_t j = 0; j < nt; ++j)
                    out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                        signal_value(kind, model, nu_axis[i], T_axis[j]);
            } catch (const std::exception& e) {
                failures[i] = e.what();
            }
        }
    };
    const std::size_t n_workers = std::min<std::size_t>(resolve_threads(threads), nn);
    if (n_workers <= 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(work, w, n_workers);
        for (auto& t : pool) t.join();
    }

    std::size_t n_failed = 0;
    std::string first;
    for (std::size_t i = 0; i < nn; ++i)
        if (!failures[i].empty()) {
            if (n_failed == 0) first = failures[i];
            ++n_failed;
        }
    if (n_failed > 0) {
        std::ostringstream msg;
        msg << "scan2d: " << n_failed << " row(s) failed; first error: " << first;
        throw Error(msg.str());
    }
    for (Eigen::Index i = 0; i < out.values.rows(); ++i)
        for (Eigen::Index j = 0; j < out.values.cols(); ++j)
            out.values(i, j) = out.values(varies_nu ? i : 0, varies_T ? j : 0);
    return out;
}

}  // namespace ramansim
