#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace dppln::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const char* section, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ConfigError(std::string("config: '") + section + "' must be an object");
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [k, v] : obj.items()) {
        if (!keys.contains(k)) throw ConfigError(std::string("config: unknown key '") + section + "." + k + "'");
    }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
    if (obj.contains(key) && !obj.at(key).is_null()) out = obj.at(key).get<T>();
}

template <typename T>
void read(const json& obj, const char* key, std::optional<T>& out) {
    if (!obj.contains(key)) return;
    if (obj.at(key).is_null()) {
        out.reset();
    } else {
        out = obj.at(key).get<T>();
    }
}

std::vector<double> number_list(const json& j, const char* what) {
    // Either an explicit list or {"start", "stop", "count"}.
    if (j.is_array()) return j.get<std::vector<double>>();
    if (j.is_object()) {
        reject_unknown(j, what, {"start", "stop", "count"});
        const double a = j.at("start").get<double>();
        const double b = j.at("stop").get<double>();
        const int n = j.at("count").get<int>();
        if (n < 1) throw ConfigError(std::string("config: ") + what + ".count must be >= 1");
        std::vector<double> v;
        for (int i = 0; i < n; ++i) v.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
        return v;
    }
    throw ConfigError(std::string("config: ") + what + " must be a list or a {start, stop, count} range");
}

std::string_view method_name(spdc::SpectrumMethod m) { return m == spdc::SpectrumMethod::exact ? "exact" : "taylor"; }

}  // namespace

qpm::InteractionSpec InteractionConfig::to_spec() const {
    qpm::InteractionSpec s;
    s.lambda_p_nm = lambda_p_nm;
    s.lambda_s_nm = lambda_s_nm;
    s.temperature_c = temperature_c;
    s.length_mm = length_mm;
    if (lambda_i_nm) {
        s.lambda_i_nm = *lambda_i_nm;
    } else {
        if (!(lambda_p_nm > 0.0 && lambda_s_nm > lambda_p_nm)) {
            throw ConfigError("config: need 0 < lambda_p < lambda_s");
        }
        s.lambda_i_nm = qpm::InteractionSpec::idler_for(lambda_p_nm, lambda_s_nm);
    }
    try {
        s.validate();
    } catch (const InvalidInput& e) {
        throw ConfigError(std::string("config: interaction: ") + e.what());
    }
    return s;
}

dispersion::Material MaterialConfig::load() const {
    dispersion::Material m;
    if (sellmeier_file) m.sellmeier = dispersion::load_sellmeier_file(*sellmeier_file);
    m.increments = dispersion::IndexIncrementTable(index_increments, extrapolation_margin_nm);
    return m;
}

std::vector<std::pair<double, double>> DesignConfig::geometries() const {
    std::vector<std::pair<double, double>> out;
    if (!geometry.sweep) {
        out.emplace_back(geometry.depth_um.value_or(0.0), geometry.width_um.value_or(0.0));
        return out;
    }
    const auto& s = *geometry.sweep;
    if (s.pairing == SweepConfig::Pairing::zip) {
        for (std::size_t i = 0; i < s.depths_um.size(); ++i) out.emplace_back(s.depths_um[i], s.widths_um[i]);
    } else {
        for (double d : s.depths_um)
            for (double w : s.widths_um) out.emplace_back(d, w);
    }
    return out;
}

void DesignConfig::validate() const {
    (void)interaction.to_spec();
    const bool single = geometry.width_um.has_value() || geometry.depth_um.has_value();
    if (single == geometry.sweep.has_value()) {
        throw ConfigError("config: geometry needs exactly one of {width_um + depth_um} or {sweep}");
    }
    if (single && !(geometry.width_um && geometry.depth_um)) {
        throw ConfigError("config: single geometry needs both width_um and depth_um");
    }
    if (geometry.sweep) {
        const auto& s = *geometry.sweep;
        if (s.depths_um.empty() || s.widths_um.empty()) throw ConfigError("config: sweep ranges must be non-empty");
        if (s.pairing == SweepConfig::Pairing::zip && s.depths_um.size() != s.widths_um.size()) {
            throw ConfigError("config: zip sweep needs equally long depth and width lists");
        }
    }
    for (const auto& [d, w] : geometries()) {
        if (!(d > 0.0 && w > 0.0)) throw ConfigError("config: waveguide depth and width must be positive");
    }
    if (!(geometry.cover_index >= 1.0)) throw ConfigError("config: cover_index must be >= 1");
    if (!(interaction.temperature_c >= -273.15)) throw ConfigError("config: temperature below absolute zero");
    if (spectrum.samples < 3 || !(spectrum.lambda_max_nm > spectrum.lambda_min_nm)) {
        throw ConfigError("config: spectrum needs lambda_max_nm > lambda_min_nm and samples >= 3");
    }
    if (material.sellmeier_file && !std::filesystem::exists(*material.sellmeier_file)) {
        throw ConfigError("config: Sellmeier file not found: " + material.sellmeier_file->string());
    }
    try {
        (void)material.load();
    } catch (const InvalidInput& e) {
        throw ConfigError(std::string("config: material: ") + e.what());
    }
}

DesignConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
    DesignConfig c;
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    try {
        reject_unknown(doc, "<root>", {"interaction", "geometry", "material", "solver", "spectrum", "output"});
        if (doc.contains("interaction")) {
            const auto& j = doc["interaction"];
            reject_unknown(j, "interaction", {"lambda_p_nm", "lambda_s_nm", "lambda_i_nm", "temperature_c", "length_mm"});
            read(j, "lambda_p_nm", c.interaction.lambda_p_nm);
            read(j, "lambda_s_nm", c.interaction.lambda_s_nm);
            read(j, "lambda_i_nm", c.interaction.lambda_i_nm);
            read(j, "temperature_c", c.interaction.temperature_c);
            read(j, "length_mm", c.interaction.length_mm);
        }
        if (doc.contains("geometry")) {
            const auto& j = doc["geometry"];
            reject_unknown(j, "geometry", {"width_um", "depth_um", "sweep", "cover_index"});
            if (j.contains("sweep") && !j["sweep"].is_null()) {
                // A sweep replaces the default single geometry unless one is given explicitly.
                c.geometry.width_um.reset();
                c.geometry.depth_um.reset();
                const auto& s = j["sweep"];
                reject_unknown(s, "geometry.sweep", {"depths_um", "widths_um", "pairing"});
                SweepConfig sweep;
                sweep.depths_um = number_list(s.at("depths_um"), "geometry.sweep.depths_um");
                sweep.widths_um = number_list(s.at("widths_um"), "geometry.sweep.widths_um");
                const auto pairing = s.value("pairing", std::string("grid"));
                if (pairing == "zip") {
                    sweep.pairing = SweepConfig::Pairing::zip;
                } else if (pairing != "grid") {
                    throw ConfigError("config: geometry.sweep.pairing must be \"grid\" or \"zip\"");
                }
                c.geometry.sweep = sweep;
            }
            read(j, "width_um", c.geometry.width_um);
            read(j, "depth_um", c.geometry.depth_um);
            read(j, "cover_index", c.geometry.cover_index);
        }
        if (doc.contains("material")) {
            const auto& j = doc["material"];
            reject_unknown(j, "material", {"sellmeier_file", "index_increments", "extrapolation_margin_nm"});
            if (j.contains("sellmeier_file") && !j["sellmeier_file"].is_null()) {
                std::filesystem::path p = j["sellmeier_file"].get<std::string>();
                c.material.sellmeier_file = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
            }
            if (j.contains("index_increments")) {
                c.material.index_increments.clear();
                for (const auto& row : j["index_increments"]) {
                    reject_unknown(row, "material.index_increments[]", {"wavelength_nm", "dn_o", "dn_e"});
                    c.material.index_increments.push_back(
                        {row.at("wavelength_nm").get<double>(), row.at("dn_o").get<double>(), row.at("dn_e").get<double>()});
                }
            }
            read(j, "extrapolation_margin_nm", c.material.extrapolation_margin_nm);
        }
        if (doc.contains("solver")) {
            const auto& j = doc["solver"];
            reject_unknown(j, "solver",
                           {"grid_size", "alpha_min", "alpha_max", "seeds", "simplex_tolerance", "collapse_alpha",
                            "bound_margin", "accept_leaky", "group_index_step_nm"});
            auto& s = c.solver;
            read(j, "grid_size", s.grid_size);
            read(j, "alpha_min", s.alpha_min);
            read(j, "alpha_max", s.alpha_max);
            read(j, "seeds", s.seeds);
            read(j, "simplex_tolerance", s.simplex_tolerance);
            read(j, "collapse_alpha", s.collapse_alpha);
            read(j, "bound_margin", s.bound_margin);
            read(j, "accept_leaky", s.accept_leaky);
            read(j, "group_index_step_nm", s.group_index_step_nm);
        }
        if (doc.contains("spectrum")) {
            const auto& j = doc["spectrum"];
            reject_unknown(j, "spectrum", {"lambda_min_nm", "lambda_max_nm", "samples", "method"});
            read(j, "lambda_min_nm", c.spectrum.lambda_min_nm);
            read(j, "lambda_max_nm", c.spectrum.lambda_max_nm);
            read(j, "samples", c.spectrum.samples);
            const auto method = j.value("method", std::string("exact"));
            if (method == "taylor") {
                c.spectrum.method = spdc::SpectrumMethod::taylor;
            } else if (method != "exact") {
                throw ConfigError("config: spectrum.method must be \"exact\" or \"taylor\"");
            }
        }
        if (doc.contains("output")) {
            const auto& j = doc["output"];
            reject_unknown(j, "output", {"directory"});
            if (j.contains("directory") && !j["directory"].is_null()) {
                c.output_directory = j["directory"].get<std::string>();
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

DesignConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path.parent_path());
}

std::string dump_config(const DesignConfig& c) {
    json j;
    j["interaction"] = {{"lambda_p_nm", c.interaction.lambda_p_nm},
                        {"lambda_s_nm", c.interaction.lambda_s_nm},
                        {"lambda_i_nm", c.interaction.lambda_i_nm ? json(*c.interaction.lambda_i_nm) : json(nullptr)},
                        {"temperature_c", c.interaction.temperature_c},
                        {"length_mm", c.interaction.length_mm}};
    json g{{"cover_index", c.geometry.cover_index}};
    if (c.geometry.sweep) {
        g["sweep"] = {{"depths_um", c.geometry.sweep->depths_um},
                      {"widths_um", c.geometry.sweep->widths_um},
                      {"pairing", c.geometry.sweep->pairing == SweepConfig::Pairing::zip ? "zip" : "grid"}};
    } else {
        g["width_um"] = *c.geometry.width_um;
        g["depth_um"] = *c.geometry.depth_um;
    }
    j["geometry"] = g;
    json rows = json::array();
    for (const auto& r : c.material.index_increments) {
        rows.push_back({{"wavelength_nm", r.wavelength_nm}, {"dn_o", r.dn_ordinary}, {"dn_e", r.dn_extraordinary}});
    }
    j["material"] = {{"sellmeier_file", c.material.sellmeier_file ? json(std::filesystem::absolute(*c.material.sellmeier_file).string()) : json(nullptr)},
                     {"index_increments", rows},
                     {"extrapolation_margin_nm", c.material.extrapolation_margin_nm}};
    const auto& s = c.solver;
    j["solver"] = {{"grid_size", s.grid_size},
                   {"alpha_min", s.alpha_min},
                   {"alpha_max", s.alpha_max},
                   {"seeds", s.seeds},
                   {"simplex_tolerance", s.simplex_tolerance},
                   {"collapse_alpha", s.collapse_alpha},
                   {"bound_margin", s.bound_margin},
                   {"accept_leaky", s.accept_leaky},
                   {"group_index_step_nm", s.group_index_step_nm}};
    j["spectrum"] = {{"lambda_min_nm", c.spectrum.lambda_min_nm},
                     {"lambda_max_nm", c.spectrum.lambda_max_nm},
                     {"samples", c.spectrum.samples},
                     {"method", std::string(method_name(c.spectrum.method))}};
    j["output"] = {{"directory", c.output_directory ? json(c.output_directory->string()) : json(nullptr)}};
    return j.dump(2) + "\n";
}

}  // namespace dppln::cli
