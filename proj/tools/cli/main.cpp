#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    using namespace dppln::cli;
    CLI::App app{"Design tool for dual-periodically poled LiNbO3 polarization-entangled photon sources"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::optional<double> temperature;
    std::optional<double> length_mm;
    bool dump = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", config_path, "JSON configuration file (defaults when omitted)");
        sub->add_option("-o,--out", out_dir, "Directory for output files");
        sub->add_option("-T,--temperature", temperature, "Crystal temperature in C (overrides config)");
        sub->add_option("-L,--length-mm", length_mm, "Interaction length in mm (overrides config)");
        sub->add_flag("--dump-config", dump, "Print the effective configuration and exit");
    };
    auto* design = app.add_subcommand("design", "Solve modes and grating for one waveguide; prints JSON");
    auto* sweep = app.add_subcommand("sweep", "Scan waveguide geometries; prints CSV");
    auto* spectrum = app.add_subcommand("spectrum", "Signal spectra of both processes; prints CSV");
    auto* grating = app.add_subcommand("grating", "Poling pattern and its Fourier check");
    for (auto* s : {design, sweep, spectrum, grating}) add_common(s);

    CLI11_PARSE(app, argc, argv);

    return guarded(std::cerr, [&] {
        DesignConfig config = config_path.empty() ? parse_config("{}") : load_config(config_path);
        if (temperature) config.interaction.temperature_c = *temperature;
        if (length_mm) config.interaction.length_mm = *length_mm;
        if (!out_dir.empty()) config.output_directory = out_dir;
        config.validate();
        if (dump) {
            std::cout << dump_config(config);
            return;
        }
        if (design->parsed()) run_design(config, std::cout);
        if (sweep->parsed()) run_sweep(config, std::cout);
        if (spectrum->parsed()) run_spectrum(config, std::cout);
        if (grating->parsed()) run_grating(config, std::cout);
    });
}
