#pragma once

// Artifact writers. CSV numbers use 6 significant digits (domain positions
// use fixed 1e-6 um resolution); JSON keeps full double precision.

#include <map>
#include <ostream>
#include <string>

#include "dppln/qpm.hpp"
#include "dppln/spdc.hpp"

namespace dppln::io {

/// printf-style "%.<digits>g", locale independent.
std::string format_sig(double value, int digits = 6);

/// psi(y, z) on a 201 x 201 grid over [-3w, 3w] x [-4h, 0]; columns y_um,z_um,psi.
void write_field_map_csv(std::ostream& out, const modesolver::TrialField& field, int points = 201);

/// Columns boundary_index,x_um,sign_after_boundary; header records Lambda0, Lambdap, L.
void write_pattern_csv(std::ostream& out, const qpm::PolingPattern& pattern, const qpm::GratingDesign& design);

/// Columns lambda_s_nm,intensity_oe,intensity_eo. `header` lines are written
/// first as "# key=value". Both spectra must share their wavelength grid.
void write_spectrum_csv(std::ostream& out, const spdc::SampledSpectrum& oe, const spdc::SampledSpectrum& eo,
                        const std::map<std::string, std::string>& header = {});

/// JSON mirror of the report (spectra omitted; they go to CSV).
std::string report_to_json(const spdc::EntanglementReport& report, int indent = 2);

}  // namespace dppln::io
