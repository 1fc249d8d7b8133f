#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dppln/dispersion.hpp"
#include "dppln/errors.hpp"
#include "dppln/modesolver.hpp"
#include "dppln/qpm.hpp"
#include "dppln/spdc.hpp"

namespace dppln::cli {

/// Malformed or inconsistent configuration; exit code 1.
class ConfigError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

struct InteractionConfig {
    double lambda_p_nm = 519.0;
    double lambda_s_nm = 780.0;
    /// Derived from energy conservation when absent.
    std::optional<double> lambda_i_nm;
    double temperature_c = 25.0;
    double length_mm = 10.0;

    qpm::InteractionSpec to_spec() const;
};

struct SweepConfig {
    enum class Pairing { zip, grid };
    std::vector<double> depths_um;
    std::vector<double> widths_um;
    Pairing pairing = Pairing::grid;
};

struct GeometryConfig {
    std::optional<double> width_um = 10.0;
    std::optional<double> depth_um = 10.0;
    std::optional<SweepConfig> sweep;
    double cover_index = 1.0;
};

struct MaterialConfig {
    std::optional<std::filesystem::path> sellmeier_file;
    std::vector<dispersion::IndexIncrement> index_increments{
        {519.0, 0.0038, 0.0037}, {780.0, 0.0034, 0.0030}, {1550.0, 0.0025, 0.0025}};
    double extrapolation_margin_nm = 50.0;

    dispersion::Material load() const;
};

struct SpectrumConfig {
    double lambda_min_nm = 770.0;
    double lambda_max_nm = 790.0;
    int samples = 2001;
    spdc::SpectrumMethod method = spdc::SpectrumMethod::exact;
};

struct DesignConfig {
    InteractionConfig interaction;
    GeometryConfig geometry;
    MaterialConfig material;
    modesolver::SolverOptions solver;
    SpectrumConfig spectrum;
    std::optional<std::filesystem::path> output_directory;

    bool is_sweep() const noexcept { return geometry.sweep.has_value(); }
    /// (depth, width) pairs in depth-major, width-minor order.
    std::vector<std::pair<double, double>> geometries() const;

    /// Checks cross-field invariants (exactly one geometry form, energy
    /// conservation, ranges). Throws ConfigError.
    void validate() const;
};

/// Parses a JSON config; unknown keys are rejected. Relative paths inside
/// the config resolve against `base_dir`.
DesignConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
DesignConfig load_config(const std::filesystem::path& path);
/// Fully populated JSON form; parse_config(dump_config(c)) == c.
std::string dump_config(const DesignConfig& config);

}  // namespace dppln::cli
