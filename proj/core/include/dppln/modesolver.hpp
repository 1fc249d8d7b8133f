#pragma once

// Variational solver for the fundamental mode of a Ti-diffused channel guide.
//
// The trial family is a first-order Hermite-Gauss function in depth times a
// Gaussian in width,
//
//   psi(y, z) = sqrt(16 ay az / (pi w h)) * az * (-z/h) * exp(-ay^2 y^2 / w^2) * exp(-az^2 z^2 / h^2)
//
// for z < 0 and zero in the cover. It is normalized to one over the half
// plane for every (ay, az). The effective index squared is the Rayleigh
// quotient of the scalar wave operator, maximized over (ay, az).

#include <functional>
#include <optional>
#include <utility>

#include "dppln/dispersion.hpp"
#include "dppln/quadrature.hpp"

namespace dppln::modesolver {

struct TrialField {
    double alpha_y = 1.0;
    double alpha_z = 1.0;
    double width_um = 10.0;
    double depth_um = 10.0;

    double amplitude() const noexcept;
    /// psi(y, z); positive inside the guide, zero for z >= 0.
    double value(double y_um, double z_um) const noexcept;
    /// (d psi/dy, d psi/dz) in um^-2.
    std::pair<double, double> gradient(double y_um, double z_um) const noexcept;
};

/// n_eff^2 - n_b^2 for the trial field; the quantity the optimizer climbs.
double neff_excess(const TrialField& field, double n_bulk, double dn, double wavelength_nm) noexcept;

/// Closed-form n_eff^2 of the trial field with k0 = 2 pi / lambda.
double neff_closed_form(const TrialField& field, double n_bulk, double dn, double wavelength_nm) noexcept;

using IndexProfile = std::function<double(double y_um, double z_um)>;

/// n_eff^2 from the variational functional by 2-D adaptive quadrature
/// (kinetic term from the analytic field gradient). Oracle for
/// neff_closed_form; absolute tolerance on n_eff^2 defaults to 1e-10.
double neff_quadrature(const TrialField& field, const IndexProfile& profile, double wavelength_nm,
                       double absolute_tolerance = 1e-10, const quadrature::Options& options = {});

struct SolverOptions {
    int grid_size = 16;
    double alpha_min = 0.2;
    double alpha_max = 8.0;
    /// Simplex runs are started from this many best grid points.
    int seeds = 6;
    double simplex_tolerance = 1e-7;
    /// Runs ending with min(alpha) below this have spread out to infinity.
    double collapse_alpha = 1e-3;
    /// A mode is bound when n_eff > n_b + bound_margin.
    double bound_margin = 1e-9;
    /// Accept the best interior local maximum even when it is not bound
    /// (n_eff <= n_b). Such solutions are flagged `bound == false`.
    bool accept_leaky = false;
    /// Central-difference step for group indices.
    double group_index_step_nm = 0.1;
};

struct ModalSolution {
    double wavelength_nm = 0.0;
    Polarization polarization = Polarization::ordinary;
    double n_eff = 0.0;
    double n_bulk = 0.0;
    double dn = 0.0;
    TrialField field;
    bool bound = true;
    std::optional<double> group_index;
};

/// Maximizes the effective index over (alpha_y, alpha_z).
/// Throws NoGuidedMode when no admissible maximum exists.
ModalSolution solve_mode(const dispersion::WaveguideGeometry& geom, double n_bulk, double dn,
                         double wavelength_nm, const SolverOptions& options = {},
                         Polarization polarization = Polarization::ordinary);

/// A concrete waveguide at one temperature: looks up n_b and dn, then solves.
class Waveguide {
public:
    Waveguide(dispersion::Material material, dispersion::WaveguideGeometry geometry,
              double temperature_c, SolverOptions options = {});

    const dispersion::Material& material() const noexcept { return material_; }
    const dispersion::WaveguideGeometry& geometry() const noexcept { return geometry_; }
    double temperature_c() const noexcept { return temperature_c_; }
    const SolverOptions& options() const noexcept { return options_; }

    ModalSolution solve(Polarization p, double wavelength_nm) const;
    /// N = n_eff - lambda dn_eff/dlambda, re-solving the mode at lambda +/- step.
    double group_index(Polarization p, double wavelength_nm) const;
    /// solve() with group_index filled in.
    ModalSolution solve_with_group_index(Polarization p, double wavelength_nm) const;

private:
    dispersion::Material material_;
    dispersion::WaveguideGeometry geometry_;
    double temperature_c_;
    SolverOptions options_;
};

}  // namespace dppln::modesolver
