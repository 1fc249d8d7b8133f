#include "dppln/io.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

#include "dppln/errors.hpp"

namespace dppln::io {

std::string format_sig(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return buf;
}

void write_field_map_csv(std::ostream& out, const modesolver::TrialField& field, int points) {
    if (points < 2) throw InvalidInput("field map needs at least two points per axis");
    out << "# alpha_y=" << format_sig(field.alpha_y, 10) << "\n# alpha_z=" << format_sig(field.alpha_z, 10)
        << "\n# width_um=" << format_sig(field.width_um) << "\n# depth_um=" << format_sig(field.depth_um) << '\n';
    out << "y_um,z_um,psi\n";
    const double y0 = -3.0 * field.width_um;
    const double dy = 6.0 * field.width_um / (points - 1);
    const double z0 = -4.0 * field.depth_um;
    const double dz = 4.0 * field.depth_um / (points - 1);
    for (int i = 0; i < points; ++i) {
        const double y = y0 + dy * i;
        for (int j = 0; j < points; ++j) {
            const double z = z0 + dz * j;
            out << format_sig(y) << ',' << format_sig(z) << ',' << format_sig(field.value(y, z)) << '\n';
        }
    }
}

void write_pattern_csv(std::ostream& out, const qpm::PolingPattern& pattern, const qpm::GratingDesign& design) {
    out << "# Lambda0_um=" << format_sig(design.Lambda0, 10) << "\n# Lambdap_um=" << format_sig(design.Lambdap, 10)
        << "\n# L_um=" << format_sig(pattern.length_um(), 10) << "\n# initial_sign=" << pattern.initial_sign() << '\n';
    out << "boundary_index,x_um,sign_after_boundary\n";
    const auto b = pattern.boundaries_um();
    char buf[64];
    for (std::size_t i = 0; i < b.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.6f", b[i]);
        out << i << ',' << buf << ',' << pattern.sign_after(i) << '\n';
    }
}

void write_spectrum_csv(std::ostream& out, const spdc::SampledSpectrum& oe, const spdc::SampledSpectrum& eo,
                        const std::map<std::string, std::string>& header) {
    if (oe.lambda_s_nm != eo.lambda_s_nm || oe.intensity.size() != oe.lambda_s_nm.size() ||
        eo.intensity.size() != eo.lambda_s_nm.size()) {
        throw InvalidInput("spectra must share one wavelength grid");
    }
    for (const auto& [k, v] : header) out << "# " << k << '=' << v << '\n';
    out << "lambda_s_nm,intensity_oe,intensity_eo\n";
    for (std::size_t i = 0; i < oe.lambda_s_nm.size(); ++i) {
        out << format_sig(oe.lambda_s_nm[i]) << ',' << format_sig(oe.intensity[i]) << ','
            << format_sig(eo.intensity[i]) << '\n';
    }
}

namespace {

nlohmann::json mode_json(const char* slot, const modesolver::ModalSolution& m) {
    nlohmann::json j{{"slot", slot},
                     {"wavelength_nm", m.wavelength_nm},
                     {"polarization", std::string(to_string(m.polarization))},
                     {"n_eff", m.n_eff},
                     {"n_bulk", m.n_bulk},
                     {"dn", m.dn},
                     {"alpha_y", m.field.alpha_y},
                     {"alpha_z", m.field.alpha_z},
                     {"bound", m.bound}};
    j["group_index"] = m.group_index ? nlohmann::json(*m.group_index) : nlohmann::json(nullptr);
    return j;
}

}  // namespace

std::string report_to_json(const spdc::EntanglementReport& r, int indent) {
    using nlohmann::json;
    json j;
    j["units"] = {{"wavelength", "nm"}, {"period", "um"}, {"spatial_frequency", "rad/um"},
                  {"geometry", "um"},   {"length", "mm"}, {"temperature", "C"},
                  {"overlap", "um^-1"}, {"bandwidth", "nm"}};
    j["interaction"] = {{"lambda_p_nm", r.spec.lambda_p_nm}, {"lambda_s_nm", r.spec.lambda_s_nm},
                        {"lambda_i_nm", r.spec.lambda_i_nm}, {"temperature_c", r.spec.temperature_c},
                        {"length_mm", r.spec.length_mm}};
    j["geometry"] = {{"width_um", r.geometry.width_um},
                     {"depth_um", r.geometry.depth_um},
                     {"cover_index", r.geometry.cover_index}};
    j["gamma"] = r.gamma;
    j["amplitude_ratio_oe_over_eo"] = r.amplitude_ratio;
    j["amplitudes"] = {{"I_oe", r.amplitudes.I_oe},
                       {"I_eo", r.amplitudes.I_eo},
                       {"C_oe_rel", {r.amplitudes.C_oe.real(), r.amplitudes.C_oe.imag()}},
                       {"C_eo_rel", {r.amplitudes.C_eo.real(), r.amplitudes.C_eo.imag()}},
                       {"dk_oe", r.amplitudes.dk_oe},
                       {"dk_eo", r.amplitudes.dk_eo},
                       {"absolute_scale", r.amplitudes.absolute_scale}};
    j["grating"] = {{"K1", r.grating.K1},         {"K2", r.grating.K2},           {"K0", r.grating.K0()},
                    {"Kp", r.grating.Kp()},       {"Lambda1_um", r.grating.Lambda1}, {"Lambda2_um", r.grating.Lambda2},
                    {"Lambda0_um", r.grating.Lambda0}, {"Lambdap_um", r.grating.Lambdap}};
    j["group_indices"] = {{"N_so", r.group_indices.N_so},
                          {"N_se", r.group_indices.N_se},
                          {"N_io", r.group_indices.N_io},
                          {"N_ie", r.group_indices.N_ie}};
    j["bandwidth_oe_nm"] = r.bandwidth.oe_nm;
    j["bandwidth_eo_nm"] = r.bandwidth.eo_nm;
    j["bandwidth_ratio"] = r.bandwidth.ratio();
    if (r.fwhm) {
        j["fwhm_oe_nm"] = r.fwhm->oe_nm;
        j["fwhm_eo_nm"] = r.fwhm->eo_nm;
        j["fwhm_ratio"] = r.fwhm->ratio();
    }
    j["modes"] = json::array({mode_json("pump_o", r.modes.pump_o), mode_json("signal_o", r.modes.signal_o),
                              mode_json("signal_e", r.modes.signal_e), mode_json("idler_o", r.modes.idler_o),
                              mode_json("idler_e", r.modes.idler_e)});
    return j.dump(indent);
}

}  // namespace dppln::io
