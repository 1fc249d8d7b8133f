#include "dppln/modesolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "dppln/errors.hpp"
#include "dppln/simplex.hpp"

namespace dppln::modesolver {

namespace {

double wavenumber_per_um(double wavelength_nm) noexcept {
    return 2.0 * std::numbers::pi / (wavelength_nm * 1e-3);
}

}  // namespace

double TrialField::amplitude() const noexcept {
    return std::sqrt(16.0 * alpha_y * alpha_z / (std::numbers::pi * width_um * depth_um));
}

double TrialField::value(double y_um, double z_um) const noexcept {
    if (z_um >= 0.0) return 0.0;
    const double sy = alpha_y * y_um / width_um;
    const double sz = alpha_z * z_um / depth_um;
    return amplitude() * alpha_z * (-z_um / depth_um) * std::exp(-sy * sy - sz * sz);
}

std::pair<double, double> TrialField::gradient(double y_um, double z_um) const noexcept {
    if (z_um >= 0.0) return {0.0, 0.0};
    const double a = alpha_y * alpha_y / (width_um * width_um);
    const double b = alpha_z * alpha_z / (depth_um * depth_um);
    const double envelope = amplitude() * alpha_z * std::exp(-a * y_um * y_um - b * z_um * z_um);
    const double psi = envelope * (-z_um / depth_um);
    return {-2.0 * a * y_um * psi, envelope * (2.0 * b * z_um * z_um - 1.0) / depth_um};
}

double neff_excess(const TrialField& f, double n_bulk, double dn, double wavelength_nm) noexcept {
    const double k0 = wavenumber_per_um(wavelength_nm);
    const double ay2 = f.alpha_y * f.alpha_y;
    const double az2 = f.alpha_z * f.alpha_z;
    const double w2 = f.width_um * f.width_um;
    const double h2 = f.depth_um * f.depth_um;
    const double kinetic = (ay2 * h2 + 3.0 * w2 * az2) / (k0 * k0 * w2 * h2);
    const double guiding = 8.0 * n_bulk * dn * f.alpha_y * az2 * f.alpha_z /
                           (std::pow(2.0 * az2 + 1.0, 1.5) * std::sqrt(2.0 * ay2 + 1.0));
    return guiding - kinetic;
}

double neff_closed_form(const TrialField& field, double n_bulk, double dn, double wavelength_nm) noexcept {
    return n_bulk * n_bulk + neff_excess(field, n_bulk, dn, wavelength_nm);
}

double neff_quadrature(const TrialField& field, const IndexProfile& profile, double wavelength_nm,
                       double absolute_tolerance, const quadrature::Options& options) {
    const double k0 = wavenumber_per_um(wavelength_nm);
    const double y_scale = field.width_um / field.alpha_y;
    const double z_scale = field.depth_um / field.alpha_z;
    auto integrand = [&](double y, double z) {
        const auto [gy, gz] = field.gradient(y, z);
        const double psi = field.value(y, z);
        return -(gy * gy + gz * gz) / (k0 * k0) + profile(y, z) * psi * psi;
    };
    return quadrature::integrate_half_plane(integrand, y_scale, z_scale, absolute_tolerance, options).value;
}

ModalSolution solve_mode(const dispersion::WaveguideGeometry& geom, double n_bulk, double dn,
                         double wavelength_nm, const SolverOptions& options, Polarization polarization) {
    geom.validate();
    if (!(n_bulk > 1.0)) throw InvalidInput("bulk index must exceed 1");
    if (!(dn >= 0.0)) throw InvalidInput("index increment must be >= 0");
    if (!(wavelength_nm > 0.0)) throw InvalidInput("wavelength must be positive");
    if (options.grid_size < 2 || options.seeds < 1 || !(options.alpha_min > 0.0) ||
        !(options.alpha_max > options.alpha_min)) {
        throw InvalidInput("invalid mode-solver grid settings");
    }

    auto excess = [&](const optim::Point2& a) {
        if (!(a[0] > 0.0 && a[1] > 0.0)) return -std::numeric_limits<double>::infinity();
        return neff_excess({a[0], a[1], geom.width_um, geom.depth_um}, n_bulk, dn, wavelength_nm);
    };

    const int n = options.grid_size;
    const double spacing = (options.alpha_max - options.alpha_min) / (n - 1);
    struct Seed {
        optim::Point2 x;
        double f;
    };
    std::vector<Seed> grid;
    grid.reserve(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const optim::Point2 x{options.alpha_min + i * spacing, options.alpha_min + j * spacing};
            grid.push_back({x, excess(x)});
        }
    }
    const auto top = std::min<std::size_t>(static_cast<std::size_t>(options.seeds), grid.size());
    std::partial_sort(grid.begin(), grid.begin() + static_cast<std::ptrdiff_t>(top), grid.end(),
                      [](const Seed& a, const Seed& b) { return a.f > b.f; });

    const optim::SimplexOptions simplex{options.simplex_tolerance, 20000};
    std::optional<optim::SimplexResult> best;
    for (std::size_t k = 0; k < top; ++k) {
        auto r = optim::maximize_simplex(excess, grid[k].x, 0.5 * spacing, simplex);
        if (std::min(r.argmax[0], r.argmax[1]) < options.collapse_alpha) continue;
        if (!best || r.value > best->value) best = r;
    }

    const std::string pol{to_string(polarization)};
    if (!best) {
        throw NoGuidedMode(wavelength_nm, pol,
                           "effective-index functional has no interior maximum (field spreads without bound)");
    }
    ModalSolution sol;
    sol.wavelength_nm = wavelength_nm;
    sol.polarization = polarization;
    sol.n_bulk = n_bulk;
    sol.dn = dn;
    sol.field = {best->argmax[0], best->argmax[1], geom.width_um, geom.depth_um};
    sol.n_eff = std::sqrt(n_bulk * n_bulk + best->value);
    sol.bound = sol.n_eff > n_bulk + options.bound_margin;
    if (!sol.bound && !options.accept_leaky) {
        std::ostringstream msg;
        msg << "best variational n_eff " << sol.n_eff << " does not exceed n_b " << n_bulk;
        throw NoGuidedMode(wavelength_nm, pol, msg.str());
    }
    return sol;
}

Waveguide::Waveguide(dispersion::Material material, dispersion::WaveguideGeometry geometry,
                     double temperature_c, SolverOptions options)
    : material_(std::move(material)),
      geometry_(geometry),
      temperature_c_(temperature_c),
      options_(options) {
    geometry_.validate();
    if (!(options_.group_index_step_nm > 0.0)) throw InvalidInput("group-index step must be positive");
}

ModalSolution Waveguide::solve(Polarization p, double wavelength_nm) const {
    const double nb = material_.bulk(p, wavelength_nm, temperature_c_);
    if (!(geometry_.cover_index < nb)) {
        throw InvalidInput("cover index must be below the substrate index");
    }
    return solve_mode(geometry_, nb, material_.increment(p, wavelength_nm), wavelength_nm, options_, p);
}

double Waveguide::group_index(Polarization p, double wavelength_nm) const {
    const double step = options_.group_index_step_nm;
    const double center = solve(p, wavelength_nm).n_eff;
    const double slope = (solve(p, wavelength_nm + step).n_eff - solve(p, wavelength_nm - step).n_eff) /
                         (2.0 * step);
    return center - wavelength_nm * slope;
}

ModalSolution Waveguide::solve_with_group_index(Polarization p, double wavelength_nm) const {
    auto sol = solve(p, wavelength_nm);
    sol.group_index = group_index(p, wavelength_nm);
    return sol;
}

}  // namespace dppln::modesolver
