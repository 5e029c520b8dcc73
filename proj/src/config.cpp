#include "ramansim/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ramansim/error.hpp"

namespace ramansim {

using nlohmann::json;

namespace {

// Walks one JSON object, recording which keys were consumed so that leftovers
// can be reported as unknown.
class Reader {
public:
    Reader(const json& obj, std::string path, Provenance& prov) : obj_(obj), path_(std::move(path)), prov_(prov) {
        if (!obj_.is_object()) throw ConfigError(where() + " must be a JSON object");
    }

    bool has(const std::string& key) const { return obj_.contains(key); }

    void number(const std::string& key, double& out) {
        if (!take(key)) return;
        const json& v = obj_.at(key);
        if (!v.is_number()) throw ConfigError(full(key) + " must be a number");
        out = v.get<double>();
    }
    void wavenumber(const std::string& key, Wavenumber& out) { number(key, out.value); }
    void count(const std::string& key, std::size_t& out) {
        if (!take(key)) return;
        const json& v = obj_.at(key);
        if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError(full(key) + " must be a non-negative integer");
        out = v.get<std::size_t>();
    }
    void integer(const std::string& key, int& out) {
        if (!take(key)) return;
        const json& v = obj_.at(key);
        if (!v.is_number_integer()) throw ConfigError(full(key) + " must be an integer");
        out = v.get<int>();
    }
    void boolean(const std::string& key, bool& out) {
        if (!take(key)) return;
        const json& v = obj_.at(key);
        if (!v.is_boolean()) throw ConfigError(full(key) + " must be true or false");
        out = v.get<bool>();
    }
    void string(const std::string& key, std::string& out) {
        if (!take(key)) return;
        const json& v = obj_.at(key);
        if (!v.is_string()) throw ConfigError(full(key) + " must be a string");
        out = v.get<std::string>();
    }
    std::optional<Reader> child(const std::string& key) {
        if (!obj_.contains(key)) return std::nullopt;
        seen_.insert(key);
        return Reader(obj_.at(key), full(key), prov_);
    }
    void grid(const std::string& key, Grid1D& g) {
        auto sub = child(key);
        if (!sub) return;
        double start = g.start(), stop = g.stop();
        std::size_t n = g.size();
        sub->number("start", start);
        sub->number("stop", stop);
        sub->count("n", n);
        sub->finish();
        try {
            g = make_grid(start, stop, n);
        } catch (const ConfigError& e) {
            throw ConfigError(full(key) + ": " + e.what());
        }
    }
    void finish() const {
        for (auto it = obj_.begin(); it != obj_.end(); ++it)
            if (!seen_.count(it.key())) throw ConfigError("unknown config key '" + full(it.key()) + "'");
    }

private:
    bool take(const std::string& key) {
        if (!obj_.contains(key)) return false;
        seen_.insert(key);
        prov_[full(key)] = "config";
        return true;
    }
    std::string full(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
    std::string where() const { return path_.empty() ? "config" : "'" + path_ + "'"; }

    const json& obj_;
    std::string path_;
    Provenance& prov_;
    std::set<std::string> seen_;
};

void read_envelope(Reader& r, LorentzianEnvelope& env) {
    r.number("amplitude", env.amplitude);
    r.wavenumber("center", env.center);
    r.wavenumber("hwhm", env.hwhm);
    r.finish();
}

json envelope_json(const LorentzianEnvelope& e) {
    return {{"amplitude", e.amplitude}, {"center", e.center.value}, {"hwhm", e.hwhm.value}};
}

json grid_json(const Grid1D& g) { return {{"start", g.start()}, {"stop", g.stop()}, {"n", g.size()}}; }

// Default provenance for every leaf emitted by emit_config.
void mark_defaults(const json& j, const std::string& path, Provenance& prov) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string key = path.empty() ? it.key() : path + "." + it.key();
        if (it->is_object())
            mark_defaults(*it, key, prov);
        else
            prov[key] = "default";
    }
}

std::string line_info(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    std::ostringstream s;
    s << "line " << line << ", column " << col;
    return s.str();
}

}  // namespace

void RunConfig::validate() const {
    if (preset != "slow" && preset != "fast") throw ConfigError("preset must be \"slow\" or \"fast\"");
    matter.validate();
    twin.validate();
    probe.validate();
    uncorrelated.s.validate();
    uncorrelated.r.validate();
    experiment.validate();
    quad.validate();
    if (!(wigner.delta_halfwidth_sigmas >= 10.0))
        throw ConfigError("wigner: difference-frequency window must be at least 20 sigma wide");
    signal_kind_from_string(scan_kind);
}

SignalModel RunConfig::signal_model() const {
    return SignalModel{matter, twin, uncorrelated, probe, experiment, quad, include_background};
}

LoadedConfig parse_config(const std::string& text, const std::optional<std::string>& preset_override) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error at " + line_info(text, e.byte) + ": " + e.what());
    }

    LoadedConfig out;
    RunConfig& c = out.config;
    mark_defaults(emit_config(c), "", out.provenance);
    Provenance& prov = out.provenance;

    Reader top(root, "", prov);
    top.string("preset", c.preset);
    if (preset_override) {
        c.preset = *preset_override;
        prov["preset"] = "config";
    }
    if (c.preset == "fast") {
        c.matter = TsjParams::fast();
    } else if (c.preset != "slow") {
        throw ConfigError("preset must be \"slow\" or \"fast\", got \"" + c.preset + "\"");
    }
    prov["matter.k"] = prov["matter.gamma_a"] = "preset";

    bool omega_a_given = false;
    if (auto r = top.child("matter")) {
        r->wavenumber("omega_ac", c.matter.omega_ac);
        r->wavenumber("delta", c.matter.delta);
        r->wavenumber("k", c.matter.k);
        r->wavenumber("gamma_a", c.matter.gamma_a);
        omega_a_given = r->has("omega_a");
        r->wavenumber("omega_a", c.matter.omega_a);
        r->number("mu_ag", c.matter.mu_ag);
        r->number("alpha_ac", c.matter.alpha_ac);
        r->finish();
    }
    if (auto r = top.child("twin")) {
        double omega0 = c.twin.omega0.value, sigma0 = c.twin.sigma0(), A0 = c.twin.pump.amplitude;
        r->number("omega0", omega0);
        r->number("sigma0", sigma0);
        r->number("A0", A0);
        r->number("T1", c.twin.T1);
        r->number("T2", c.twin.T2);
        r->finish();
        c.twin = TwinParams::make(omega0, sigma0, A0, c.twin.T1, c.twin.T2);
    }
    if (auto r = top.child("probe")) read_envelope(*r, c.probe);
    if (auto r = top.child("uncorrelated")) {
        if (auto s = r->child("s")) read_envelope(*s, c.uncorrelated.s);
        if (auto s = r->child("r")) read_envelope(*s, c.uncorrelated.r);
        r->finish();
    }
    if (auto r = top.child("experiment")) {
        r->wavenumber("omega_p", c.experiment.omega_p);
        r->wavenumber("omega_r_bar", c.experiment.omega_r_bar);
        r->number("delay_T", c.experiment.delay_T);
        r->number("prefactor", c.experiment.prefactor);
        r->finish();
    }
    if (!omega_a_given) {
        c.matter.omega_a = Wavenumber{c.experiment.omega_p.value + c.matter.omega_ac.value};
        prov["matter.omega_a"] = "derived";
    }
    if (auto r = top.child("grids")) {
        r->grid("nu", c.grids.nu);
        r->grid("nu2", c.grids.nu2);
        r->grid("T", c.grids.T);
        r->grid("t", c.grids.t);
        r->grid("schmidt", c.grids.schmidt);
        r->grid("wigner_t", c.grids.wigner_t);
        r->grid("wigner_nu", c.grids.wigner_nu);
        r->finish();
    }
    if (auto r = top.child("quad")) {
        r->number("rel_tol", c.quad.rel_tol);
        r->number("abs_tol", c.quad.abs_tol);
        r->number("window_sigmas", c.quad.window_sigmas);
        r->integer("max_intervals", c.quad.max_intervals);
        r->finish();
    }
    if (auto r = top.child("wigner")) {
        r->number("delta_halfwidth_sigmas", c.wigner.delta_halfwidth_sigmas);
        r->finish();
    }
    if (auto r = top.child("scan")) {
        r->string("kind", c.scan_kind);
        r->finish();
    }
    top.boolean("verify", c.verify);
    top.boolean("include_background", c.include_background);
    top.finish();

    c.validate();
    return out;
}

LoadedConfig load_config(const std::filesystem::path& path, const std::optional<std::string>& preset_override) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), preset_override);
}

json emit_config(const RunConfig& c) {
    json j;
    j["preset"] = c.preset;
    j["matter"] = {{"omega_ac", c.matter.omega_ac.value}, {"delta", c.matter.delta.value},
                   {"k", c.matter.k.value},             {"gamma_a", c.matter.gamma_a.value},
                   {"omega_a", c.matter.omega_a.value}, {"mu_ag", c.matter.mu_ag},
                   {"alpha_ac", c.matter.alpha_ac}};
    j["twin"] = {{"omega0", c.twin.omega0.value}, {"sigma0", c.twin.sigma0()}, {"A0", c.twin.pump.amplitude},
                 {"T1", c.twin.T1},               {"T2", c.twin.T2}};
    j["probe"] = envelope_json(c.probe);
    j["uncorrelated"] = {{"s", envelope_json(c.uncorrelated.s)}, {"r", envelope_json(c.uncorrelated.r)}};
    j["experiment"] = {{"omega_p", c.experiment.omega_p.value}, {"omega_r_bar", c.experiment.omega_r_bar.value},
                       {"delay_T", c.experiment.delay_T},       {"prefactor", c.experiment.prefactor}};
    j["grids"] = {{"nu", grid_json(c.grids.nu)},           {"nu2", grid_json(c.grids.nu2)},
                  {"T", grid_json(c.grids.T)},             {"t", grid_json(c.grids.t)},
                  {"schmidt", grid_json(c.grids.schmidt)}, {"wigner_t", grid_json(c.grids.wigner_t)},
                  {"wigner_nu", grid_json(c.grids.wigner_nu)}};
    j["quad"] = {{"rel_tol", c.quad.rel_tol},
                 {"abs_tol", c.quad.abs_tol},
                 {"window_sigmas", c.quad.window_sigmas},
                 {"max_intervals", c.quad.max_intervals}};
    j["wigner"] = {{"delta_halfwidth_sigmas", c.wigner.delta_halfwidth_sigmas}};
    j["scan"] = {{"kind", c.scan_kind}};
    j["verify"] = c.verify;
    j["include_background"] = c.include_background;
    return j;
}

}  // namespace ramansim
