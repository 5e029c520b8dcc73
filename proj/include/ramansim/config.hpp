#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"

#include "ramansim/fields.hpp"
#include "ramansim/quadrature.hpp"
#include "ramansim/signals.hpp"
#include "ramansim/spectrogram.hpp"
#include "ramansim/tsj.hpp"
#include "ramansim/units.hpp"

namespace ramansim {

struct RunGrids {
    Grid1D nu = make_grid(-1000.0, 1000.0, 401);       // ν − ω_p, cm⁻¹
    Grid1D nu2 = make_grid(-1000.0, 1000.0, 201);      // second s detector, ν − ω_p
    Grid1D T = make_grid(0.0, 1300.0, 66);             // actinic delay, fs
    Grid1D t = make_grid(0.0, 400.0, 201);             // detector time, fs
    Grid1D schmidt = make_grid(-30000.0, 30000.0, 512);  // offsets from ω₀, both photons
    Grid1D wigner_t = make_grid(-50.0, 250.0, 601);    // fs
    Grid1D wigner_nu = make_grid(-10000.0, 10000.0, 401);  // offsets from each field's center
    friend bool operator==(const RunGrids&, const RunGrids&) = default;
};

struct RunConfig {
    std::string preset = "slow";
    TsjParams matter;
    TwinParams twin;
    LorentzianEnvelope probe;
    UncorrelatedPair uncorrelated{LorentzianEnvelope{}, LorentzianEnvelope{}};
    ExperimentConfig experiment;
    RunGrids grids;
    QuadSettings quad;
    WignerSettings wigner;
    std::string scan_kind = "ifsrs21";
    bool verify = false;
    bool include_background = false;

    void validate() const;
    SignalModel signal_model() const;
    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Where each leaf value came from: "default", "preset", "derived" or "config".
using Provenance = std::map<std::string, std::string>;

struct LoadedConfig {
    RunConfig config;
    Provenance provenance;
};

/// Strict parse: unknown keys and wrong types are ConfigErrors; JSON syntax errors
/// report line and column. A preset override replaces the file's "preset" key.
LoadedConfig parse_config(const std::string& text, const std::optional<std::string>& preset_override = {});
LoadedConfig load_config(const std::filesystem::path& path,
                         const std::optional<std::string>& preset_override = {});

/// Fully resolved config as JSON; parse_config(emit_config(c).dump()) reproduces c.
nlohmann::json emit_config(const RunConfig& c);

}  // namespace ramansim
