#include "ramansim/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"
#include "ramansim/entanglement.hpp"
#include "ramansim/error.hpp"
#include "ramansim/oracle.hpp"
#include "ramansim/signals.hpp"
#include "ramansim/spectrogram.hpp"

namespace ramansim {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string csv_text(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_double(row[i]);
        }
        out += '\n';
    }
    return out;
}

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {"absorption", "fsrs",    "ifsrs01", "ifsrs11",
                                                   "ifsrs21",    "ifsrs21-2freq", "ifsrs-time", "sep",
                                                   "schmidt",    "wigner",  "scan2d"};
    return names;
}

namespace {

struct Output {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    json results = json::object();
};

std::vector<std::vector<double>> spectrum(const Grid1D& g, const std::function<double(double)>& f) {
    std::vector<std::vector<double>> rows;
    rows.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) rows.push_back({g[i], f(g[i])});
    return rows;
}

json widths_json(const Spectrogram& s) {
    try {
        const MarginalWidths w = marginal_widths(s);
        return {{"delta_nu_cm", w.delta_nu},
                {"delta_t_ps", w.delta_t},
                {"product_ps_cm", w.product},
                {"nu_resolution_limited", w.nu_resolution_limited},
                {"t_resolution_limited", w.t_resolution_limited},
                {"dominant_fraction", w.dominant_fraction}};
    } catch (const MultiModalError& e) {
        return {{"error", e.what()}};
    }
}

Output run_schmidt(const RunConfig& c) {
    const double w0 = c.twin.omega0.value;
    const Grid1D ax = make_grid(w0 + c.grids.schmidt.start(), w0 + c.grids.schmidt.stop(), c.grids.schmidt.size());
    const TwinParams& tw = c.twin;
    const AmplitudeMatrix m = sample_amplitude([&](double s, double r) { return twin_amplitude(tw, s, r); }, ax, ax);
    const SchmidtResult r = schmidt_decompose(m);
    Output o;
    o.header = {"n", "lambda_n"};
    for (std::size_t n = 0; n < r.lambdas.size(); ++n) o.rows.push_back({static_cast<double>(n + 1), r.lambdas[n]});
    double sum = 0.0;
    for (double l : r.lambdas) sum += l;
    o.results = {{"r_p", r.r_p}, {"reconstruction_error", r.reconstruction_error}, {"lambda_sum", sum}};
    return o;
}

Output run_wigner(const RunConfig& c) {
    const double wr = c.experiment.omega_r_bar.value;
    const Grid1D& off = c.grids.wigner_nu;
    const double cc = c.probe.center.value, ct = c.twin.slice_center(wr);
    const Grid1D nu_c = make_grid(cc + off.start(), cc + off.stop(), off.size());
    const Grid1D nu_t = make_grid(ct + off.start(), ct + off.stop(), off.size());
    const Spectrogram wc = wigner_classical(c.probe, c.grids.wigner_t, nu_c, c.wigner);
    const Spectrogram wt = wigner_twin(c.twin, wr, c.grids.wigner_t, nu_t, c.wigner);
    Output o;
    o.header = {"t", "dnu", "classical", "twin"};
    for (std::size_t i = 0; i < c.grids.wigner_t.size(); ++i)
        for (std::size_t j = 0; j < off.size(); ++j) {
            const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
            o.rows.push_back({c.grids.wigner_t[i], off[j], wc.values(ii, jj), wt.values(ii, jj)});
        }
    o.results = {{"classical", widths_json(wc)},
                 {"twin", widths_json(wt)},
                 {"classical_center_cm", cc},
                 {"twin_center_cm", ct},
                 {"width_metric", "FWHM of the time and frequency marginals"}};
    return o;
}

Output run(const std::string& cmd, const RunConfig& c) {
    const SignalModel md = c.signal_model();
    const double T = c.experiment.delay_T;
    const double wp = c.experiment.omega_p.value;
    Output o;
    if (cmd == "absorption" || cmd == "fsrs" || cmd == "ifsrs11" || cmd == "ifsrs21") {
        const SignalKind kind = signal_kind_from_string(cmd == "absorption" ? "absorption" : cmd);
        o.header = {"nu", "value"};
        o.rows = spectrum(c.grids.nu, [&](double nu) { return signal_value(kind, md, nu, T); });
    } else if (cmd == "ifsrs01") {
        o.header = {"T", "value"};
        o.rows = spectrum(c.grids.T, [&](double t) { return signal_value(SignalKind::ifsrs01, md, 0.0, t); });
    } else if (cmd == "ifsrs21-2freq") {
        o.header = {"nu1", "nu2", "value"};
        for (std::size_t i = 0; i < c.grids.nu.size(); ++i)
            for (std::size_t j = 0; j < c.grids.nu2.size(); ++j)
                o.rows.push_back({c.grids.nu[i], c.grids.nu2[j],
                                  ifsrs21_two_freq(PhotonPair{c.twin}, c.experiment, c.matter, wp + c.grids.nu[i],
                                                   wp + c.grids.nu2[j], T)});
    } else if (cmd == "ifsrs-time") {
        o.header = {"t", "s11", "s11_background", "s21_diagonal"};
        for (std::size_t i = 0; i < c.grids.t.size(); ++i) {
            const double t = c.grids.t[i];
            const TimeGated11 s11 = ifsrs_time_11_terms(c.twin, c.experiment, c.matter, t, T, c.quad);
            const double s21 = ifsrs_time_21(c.twin, c.experiment, c.matter, t, t, T, c.quad);
            o.rows.push_back({t, s11.a, s11.b, s21});
        }
        o.results = {{"time_origin", "detector times measured from the actinic pulse; photon wave packet referenced to T"}};
    } else if (cmd == "sep") {
        o.header = {"nu", "correlated01", "correlated11", "correlated21", "uncorrelated01", "uncorrelated11",
                    "uncorrelated21"};
        const double v0c = signal_value(SignalKind::sep_correlated_01, md, 0.0, T);
        const double v0u = signal_value(SignalKind::sep_uncorrelated_01, md, 0.0, T);
        for (std::size_t i = 0; i < c.grids.nu.size(); ++i) {
            const double nu = c.grids.nu[i];
            o.rows.push_back({nu, v0c, signal_value(SignalKind::sep_correlated_11, md, nu, T),
                              signal_value(SignalKind::sep_correlated_21, md, nu, T), v0u,
                              signal_value(SignalKind::sep_uncorrelated_11, md, nu, T),
                              signal_value(SignalKind::sep_uncorrelated_21, md, nu, T)});
        }
    } else if (cmd == "schmidt") {
        o = run_schmidt(c);
    } else if (cmd == "wigner") {
        o = run_wigner(c);
    } else if (cmd == "scan2d") {
        const SignalKind kind = signal_kind_from_string(c.scan_kind);
        const SignalMap map = scan2d(kind, md, c.grids.nu, c.grids.T);
        o.header = {"nu", "T", "value"};
        for (std::size_t i = 0; i < c.grids.nu.size(); ++i)
            for (std::size_t j = 0; j < c.grids.T.size(); ++j)
                o.rows.push_back({c.grids.nu[i], c.grids.T[j],
                                  map.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))});
        o.results = {{"kind", c.scan_kind}};
    } else {
        throw ConfigError("unknown command '" + cmd + "'");
    }
    return o;
}

json units_json() {
    return {{"frequency", "cm^-1"},
            {"nu", "detuning from omega_p, cm^-1"},
            {"T", "fs"},
            {"t", "fs"},
            {"dnu", "offset from the field center, cm^-1"},
            {"signal", "arbitrary units"},
            {"wigner_widths", "delta_nu in cm^-1, delta_t in ps, product in ps*cm^-1"}};
}

json conventions_json(const RunConfig& c) {
    return {{"pump_envelope_center", "2*omega0"},
            {"schmidt_grid", "offsets from omega0 on both photon axes"},
            {"include_background", c.include_background},
            {"separable_delta0", 1.0},
            {"imaginary_unit_in_matter_correlations", "kept"}};
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open '" + p.string() + "' for writing");
    f << text;
    if (!f) throw Error("write failed for '" + p.string() + "'");
}

}  // namespace

int run_command(const std::string& cmd, const LoadedConfig& loaded, const std::filesystem::path& out_base,
                std::ostream& err) {
    try {
        const RunConfig& c = loaded.config;
        if (std::find(command_names().begin(), command_names().end(), cmd) == command_names().end())
            throw ConfigError("unknown command '" + cmd + "'");
        Output o = run(cmd, c);

        json side;
        side["command"] = cmd;
        side["version"] = kLibraryVersion;
        side["config"] = emit_config(c);
        side["provenance"] = loaded.provenance;
        side["units"] = units_json();
        side["conventions"] = conventions_json(c);
        side["results"] = o.results;
        if (c.verify) {
            json checks = json::array();
            bool all = true;
            for (const auto& r : oracle::run_verification(c.twin, c.probe, c.experiment.omega_p.value,
                                                          c.experiment.omega_r_bar.value, c.matter.gamma_a.value,
                                                          c.matter.omega_minus())) {
                checks.push_back({{"name", r.name}, {"deviation", r.deviation}, {"tolerance", r.tolerance},
                                  {"passed", r.passed}});
                all = all && r.passed;
            }
            side["verification"] = {{"checks", checks}, {"all_passed", all}};
            if (!all) err << "verification: at least one oracle check failed\n";
        }

        std::filesystem::path csv = out_base, js = out_base;
        csv += ".csv";
        js += ".json";
        write_file(csv, csv_text(o.header, o.rows));
        write_file(js, side.dump(2) + "\n");
        return 0;
    } catch (const std::exception& e) {
        err << "raman-sim " << cmd << ": " << e.what() << "\n";
        return 1;
    }
}

}  // namespace ramansim
