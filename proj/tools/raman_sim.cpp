#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ramansim/cli.hpp"
#include "ramansim/config.hpp"
#include "ramansim/error.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Raman spectra of a two-state-jump vibration probed by classical and two-photon light"};
    app.set_version_flag("--version", std::string(ramansim::kLibraryVersion));

    std::string command, config_path, preset, out;
    bool verify = false, background = false;
    app.add_option("command", command, "Command to run")
        ->required()
        ->check(CLI::IsMember(ramansim::command_names()));
    app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--preset", preset, "Matter preset")->check(CLI::IsMember({"slow", "fast"}));
    app.add_option("--out", out, "Output path without extension (default: the command name)");
    app.add_flag("--verify", verify, "Run the oracle cross-checks and record them in the JSON sidecar");
    app.add_flag("--include-background", background, "Add the non-resonant (1,1) background term");
    CLI11_PARSE(app, argc, argv);

    try {
        const std::optional<std::string> preset_override =
            preset.empty() ? std::nullopt : std::optional<std::string>(preset);
        ramansim::LoadedConfig cfg = config_path.empty() ? ramansim::parse_config("{}", preset_override)
                                                         : ramansim::load_config(config_path, preset_override);
        if (verify) {
            cfg.config.verify = true;
            cfg.provenance["verify"] = "config";
        }
        if (background) {
            cfg.config.include_background = true;
            cfg.provenance["include_background"] = "config";
        }
        return ramansim::run_command(command, cfg, out.empty() ? command : out, std::cerr);
    } catch (const ramansim::Error& e) {
        std::cerr << "raman-sim: " << e.what() << "\n";
        return 2;
    }
}
