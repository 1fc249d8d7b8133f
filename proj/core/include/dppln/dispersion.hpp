#pragma once

// Bulk and waveguide refractive indices of titanium in-diffused lithium niobate.
//
// Units at this interface: wavelengths in nm, temperatures in degrees C,
// transverse coordinates and waveguide dimensions in um.

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dppln {

enum class Polarization { ordinary, extraordinary };

std::string_view to_string(Polarization p) noexcept;
/// Accepts "o", "e", "ordinary", "extraordinary".
Polarization parse_polarization(std::string_view text);

namespace dispersion {

struct Domain {
    double wavelength_min_nm = 400.0;
    double wavelength_max_nm = 2000.0;
    double temperature_min_c = 20.0;
    double temperature_max_c = 200.0;
};

/// Temperature term of the Edwards-Lawrence form:
/// F = (T - T_ref)(T + T_ref + offset), entering via B1, B2, B3.
struct TemperatureModel {
    double reference_c = 24.5;
    double offset_c = 546.0;
    std::array<double, 3> coefficients{};  // B1, B2, B3
};

/// One polarization of a temperature-dependent Sellmeier set:
///   n^2 = A1 + (A2 + B1 F) / (lambda^2 - (A3 + B2 F)^2) + B3 F - A4 lambda^2
/// with lambda in um.
class SellmeierSet {
public:
    SellmeierSet(Polarization polarization, std::array<double, 4> coefficients,
                 TemperatureModel temperature_model, Domain domain = {});

    Polarization polarization() const noexcept { return polarization_; }
    const std::array<double, 4>& coefficients() const noexcept { return coefficients_; }
    const TemperatureModel& temperature_model() const noexcept { return temperature_model_; }
    const Domain& domain() const noexcept { return domain_; }

    /// Unchecked evaluation; callers go through bulk_index().
    double evaluate(double wavelength_nm, double temperature_c) const noexcept;

private:
    Polarization polarization_;
    std::array<double, 4> coefficients_;
    TemperatureModel temperature_model_;
    Domain domain_;
};

/// Ordinary + extraordinary sets loaded together from one data file.
struct SellmeierPair {
    std::string source;
    SellmeierSet ordinary;
    SellmeierSet extraordinary;

    const SellmeierSet& operator[](Polarization p) const noexcept {
        return p == Polarization::ordinary ? ordinary : extraordinary;
    }
};

/// Parses the JSON Sellmeier data format (see core/data/).
SellmeierPair parse_sellmeier_json(std::string_view json_text);
SellmeierPair load_sellmeier_file(const std::filesystem::path& path);
/// The congruent LiNbO3 set compiled into the library.
const SellmeierPair& builtin_lithium_niobate();
std::string_view builtin_lithium_niobate_json() noexcept;

/// Throws OutOfRange outside the set's validated (lambda, T) domain.
double bulk_index(const SellmeierSet& set, double wavelength_nm, double temperature_c);

struct IndexIncrement {
    double wavelength_nm;
    double dn_ordinary;
    double dn_extraordinary;
};

/// Titanium in-diffusion surface index increments, linearly interpolated.
///
/// Queries up to `extrapolation_margin_nm` beyond either end use the
/// straight-line continuation of the end segment; beyond that OutOfRange.
class IndexIncrementTable {
public:
    explicit IndexIncrementTable(std::vector<IndexIncrement> entries,
                                 double extrapolation_margin_nm = 50.0);

    std::span<const IndexIncrement> entries() const noexcept { return entries_; }
    double extrapolation_margin_nm() const noexcept { return margin_nm_; }

    /// Measured increments at 519, 780 and 1550 nm for Ti:LiNbO3 channel guides.
    static IndexIncrementTable reference();

private:
    std::vector<IndexIncrement> entries_;
    double margin_nm_;
};

double index_increment(const IndexIncrementTable& table, Polarization polarization,
                       double wavelength_nm);

struct WaveguideGeometry {
    double width_um = 10.0;
    double depth_um = 10.0;
    double cover_index = 1.0;

    /// Checks positivity and 1 <= n_c; the n_c < n_b check needs a material.
    void validate() const;
};

/// n^2(y, z): Gaussian in-diffused profile for z < 0, cover for z >= 0.
double index_profile(const WaveguideGeometry& geom, double n_bulk, double dn, double y_um,
                     double z_um) noexcept;

/// Everything needed to evaluate n_b and dn at any (pol, lambda, T).
struct Material {
    SellmeierPair sellmeier = builtin_lithium_niobate();
    IndexIncrementTable increments = IndexIncrementTable::reference();

    double bulk(Polarization p, double wavelength_nm, double temperature_c) const {
        return bulk_index(sellmeier[p], wavelength_nm, temperature_c);
    }
    double increment(Polarization p, double wavelength_nm) const {
        return index_increment(increments, p, wavelength_nm);
    }
};

}  // namespace dispersion
}  // namespace dppln
