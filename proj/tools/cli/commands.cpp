#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dppln/io.hpp"
#include "dppln/parallel.hpp"

namespace dppln::cli {

namespace {

std::ofstream open_output(const DesignConfig& c, const std::string& name) {
    std::filesystem::create_directories(*c.output_directory);
    const auto path = *c.output_directory / name;
    std::ofstream f(path);
    if (!f) throw InvalidInput("cannot write " + path.string());
    return f;
}

// Writes `text` to stdout and, if configured, to a file.
void emit(const DesignConfig& c, std::ostream& out, const std::string& name, const std::string& text) {
    out << text;
    if (c.output_directory) open_output(c, name) << text;
}

bool all_bound(const spdc::ModeSet& m) {
    return m.pump_o.bound && m.signal_o.bound && m.signal_e.bound && m.idler_o.bound && m.idler_e.bound;
}

std::string spectrum_method_name(spdc::SpectrumMethod m) {
    return m == spdc::SpectrumMethod::exact ? "exact" : "taylor";
}

}  // namespace

spdc::SourceModel make_model(const DesignConfig& config, double depth_um, double width_um) {
    dispersion::WaveguideGeometry geom;
    geom.width_um = width_um;
    geom.depth_um = depth_um;
    geom.cover_index = config.geometry.cover_index;
    const auto spec = config.interaction.to_spec();
    modesolver::Waveguide wg(config.material.load(), geom, spec.temperature_c, config.solver);
    return spdc::SourceModel(std::move(wg), spec);
}

void run_design(const DesignConfig& config, std::ostream& out) {
    if (config.is_sweep()) throw ConfigError("design needs a single geometry; use 'sweep' for ranges");
    const auto model = make_model(config, *config.geometry.depth_um, *config.geometry.width_um);
    const auto report = spdc::analyze(model);
    emit(config, out, "design.json", io::report_to_json(report) + "\n");
    if (config.output_directory) {
        const auto& m = report.modes;
        const std::pair<const char*, const modesolver::ModalSolution*> maps[] = {
            {"field_pump_o.csv", &m.pump_o},   {"field_signal_o.csv", &m.signal_o}, {"field_signal_e.csv", &m.signal_e},
            {"field_idler_o.csv", &m.idler_o}, {"field_idler_e.csv", &m.idler_e}};
        for (const auto& [name, mode] : maps) {
            auto f = open_output(config, name);
            io::write_field_map_csv(f, mode->field);
        }
    }
}

void run_sweep(const DesignConfig& config, std::ostream& out) {
    const auto points = config.geometries();
    std::vector<std::string> rows(points.size());
    spdc::ReportOptions opts;
    opts.numeric_fwhm = false;
    parallel_for(points.size(), [&](std::size_t i) {
        const auto [d, w] = points[i];
        std::string row = io::format_sig(d) + ',' + io::format_sig(w) + ',';
        try {
            const auto r = spdc::analyze(make_model(config, d, w), opts);
            row += io::format_sig(r.gamma) + ',' + io::format_sig(r.grating.Lambda1) + ',' +
                   io::format_sig(r.grating.Lambda2) + ',' + (all_bound(r.modes) ? "ok" : "ok_leaky");
        } catch (const NoGuidedMode&) {
            row += ",,,no_guided_mode";
        } catch (const Infeasible&) {
            row += ",,,infeasible";
        } catch (const UndefinedGamma&) {
            row += ",,,undefined_gamma";
        }
        rows[i] = std::move(row);
    });
    std::ostringstream csv;
    csv << "depth_um,width_um,gamma,Lambda1_um,Lambda2_um,status\n";
    for (const auto& r : rows) csv << r << '\n';
    emit(config, out, "sweep.csv", csv.str());
}

void run_spectrum(const DesignConfig& config, std::ostream& out) {
    if (config.is_sweep()) throw ConfigError("spectrum needs a single geometry");
    const auto model = make_model(config, *config.geometry.depth_um, *config.geometry.width_um);
    spdc::ReportOptions opts;
    opts.numeric_fwhm = false;
    opts.spectra = spdc::SpectrumRange{config.spectrum.lambda_min_nm, config.spectrum.lambda_max_nm,
                                       config.spectrum.samples};
    opts.method = config.spectrum.method;
    const auto r = spdc::analyze(model, opts);
    const double fwhm_oe = spdc::sampled_fwhm(*r.spectrum_oe);
    const double fwhm_eo = spdc::sampled_fwhm(*r.spectrum_eo);
    const auto& s = r.spec;
    std::map<std::string, std::string> header{
        {"lambda_p_nm", io::format_sig(s.lambda_p_nm, 10)},
        {"lambda_s_nm", io::format_sig(s.lambda_s_nm, 10)},
        {"lambda_i_nm", io::format_sig(s.lambda_i_nm, 10)},
        {"temperature_c", io::format_sig(s.temperature_c)},
        {"length_mm", io::format_sig(s.length_mm)},
        {"width_um", io::format_sig(r.geometry.width_um)},
        {"depth_um", io::format_sig(r.geometry.depth_um)},
        {"method", spectrum_method_name(config.spectrum.method)},
        {"fwhm_oe_nm", io::format_sig(fwhm_oe)},
        {"fwhm_eo_nm", io::format_sig(fwhm_eo)},
        {"fwhm_ratio", io::format_sig(fwhm_eo / fwhm_oe)},
        {"bandwidth_approx_oe_nm", io::format_sig(r.bandwidth.oe_nm)},
        {"bandwidth_approx_eo_nm", io::format_sig(r.bandwidth.eo_nm)},
        {"gamma", io::format_sig(r.gamma)},
    };
    std::ostringstream csv;
    io::write_spectrum_csv(csv, *r.spectrum_oe, *r.spectrum_eo, header);
    emit(config, out, "spectrum.csv", csv.str());
}

void run_grating(const DesignConfig& config, std::ostream& out) {
    if (config.is_sweep()) throw ConfigError("grating needs a single geometry");
    const auto model = make_model(config, *config.geometry.depth_um, *config.geometry.width_um);
    const auto design = model.grating();
    const auto spec = model.design_point();
    const auto pattern = qpm::synthesize_pattern(design, spec.length_mm);

    // The Fourier check runs on the longest whole number of modulation periods
    // that fits in the device, where the +-4/pi^2 sidebands are exact.
    const double L_um = spec.length_mm * 1000.0;
    const long periods = static_cast<long>(std::floor(L_um / design.Lambdap));
    if (periods < 1) throw Infeasible("device shorter than one modulation period");
    const double check_mm = periods * design.Lambdap / 1000.0;
    const auto check = qpm::synthesize_pattern(design, check_mm);
    const auto c1 = qpm::fourier_component(check, design.K1);
    const auto c2 = qpm::fourier_component(check, design.K2);
    const double target = 4.0 / (std::numbers::pi * std::numbers::pi);

    nlohmann::json j{{"Lambda0_um", design.Lambda0},
                     {"Lambdap_um", design.Lambdap},
                     {"Lambda1_um", design.Lambda1},
                     {"Lambda2_um", design.Lambda2},
                     {"K1", design.K1},
                     {"K2", design.K2},
                     {"pattern_length_um", L_um},
                     {"pattern_boundaries", pattern.boundaries_um().size()},
                     {"check_length_um", check.length_um()},
                     {"check_modulation_periods", periods},
                     {"c_K1", {c1.real(), c1.imag()}},
                     {"c_K2", {c2.real(), c2.imag()}},
                     {"abs_c_K1", std::abs(c1)},
                     {"abs_c_K2", std::abs(c2)},
                     {"target_abs_c", target},
                     {"rel_deviation_K1", std::abs(std::abs(c1) - target) / target},
                     {"rel_deviation_K2", std::abs(std::abs(c2) - target) / target}};
    emit(config, out, "fourier.json", j.dump(2) + "\n");
    if (config.output_directory) {
        auto f = open_output(config, "pattern.csv");
        io::write_pattern_csv(f, pattern, design);
    }
}

int guarded(std::ostream& err, const std::function<void()>& body) {
    try {
        body();
        return ExitCode::ok;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::invalid_input;
    } catch (const Infeasible& e) {
        err << "infeasible: " << e.what() << '\n';
        return ExitCode::infeasible;
    } catch (const Error& e) {
        err << "failed: " << e.what() << '\n';
        return ExitCode::infeasible;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::invalid_input;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::invalid_input;
    }
}

}  // namespace dppln::cli
