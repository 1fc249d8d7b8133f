#pragma once

// Two-process type-II SPDC in a dual-period grating: overlap integrals,
// relative amplitudes, degree of entanglement, bandwidths and spectra.
//
// Amplitudes are relative: the common prefactor 4 d24 E_p0 hbar sqrt(ws wi) / pi^2
// (and the interaction time) is dropped, so only ratios between the two
// processes and normalized spectra carry physical meaning.

#include <complex>
#include <optional>
#include <vector>

#include "dppln/modesolver.hpp"
#include "dppln/qpm.hpp"

namespace dppln::spdc {

using modesolver::ModalSolution;
using modesolver::TrialField;
using qpm::Process;

/// The five modes of one operating point (pump ordinary).
struct ModeSet {
    qpm::InteractionSpec spec;
    ModalSolution pump_o;
    ModalSolution signal_o;
    ModalSolution signal_e;
    ModalSolution idler_o;
    ModalSolution idler_e;

    qpm::EffectiveIndices indices() const noexcept;
};

/// integral over z < 0 of e_p e_a e_b, closed form for the trial family (um^-1).
double overlap_integral(const TrialField& pump, const TrialField& a, const TrialField& b);
/// The same integral by adaptive quadrature; test oracle.
double overlap_quadrature(const TrialField& pump, const TrialField& a, const TrialField& b,
                          double absolute_tolerance = 1e-12);

struct ProcessAmplitudes {
    double I_oe = 0.0;  ///< um^-1
    double I_eo = 0.0;
    std::complex<double> C_oe;  ///< I_oe / (n_so n_ie) * sinc(dk L/2) * exp(-i dk L/2)
    std::complex<double> C_eo;
    double dk_oe = 0.0;  ///< rad/um
    double dk_eo = 0.0;
    /// Always false: the shared prefactor is omitted, only ratios are physical.
    bool absolute_scale = false;
};

/// sin(x)/x with sinc(0) = 1.
double sinc(double x) noexcept;

ProcessAmplitudes relative_amplitudes(const ModeSet& modes, const qpm::GratingDesign& design);

/// C_oe / C_eo at zero mismatch directly from the variational parameters and
/// effective indices of the five modes.
double amplitude_ratio_closed_form(const ModeSet& modes);

/// min(|C_oe|, |C_eo|) / max(|C_oe|, |C_eo|); throws UndefinedGamma if both vanish.
double gamma(const ProcessAmplitudes& amplitudes);

struct GroupIndices {
    double N_so = 0.0;
    double N_se = 0.0;
    double N_io = 0.0;
    double N_ie = 0.0;
};

struct Bandwidths {
    double oe_nm = 0.0;
    double eo_nm = 0.0;
    double ratio() const noexcept { return eo_nm / oe_nm; }
};

/// lambda_s^2 / (L |N_i - N_s|) per process. Throws DegenerateGroupIndices
/// when a difference is below 1e-6.
Bandwidths bandwidth_approx(const GroupIndices& n, double lambda_s_nm, double length_mm);

struct SampledSpectrum {
    std::vector<double> lambda_s_nm;
    std::vector<double> intensity;
};

enum class SpectrumMethod {
    exact,   ///< modes re-solved at every sample
    taylor,  ///< first-order expansion of dk through group indices
};

struct SpectrumRange {
    double lambda_min_nm = 770.0;
    double lambda_max_nm = 790.0;
    int samples = 2001;
};

/// Numeric full width at half maximum of a sampled single-peaked curve, with
/// linear interpolation of the two half-maximum crossings around the peak.
/// Throws InvalidInput if the curve does not fall below half on both sides.
double sampled_fwhm(const SampledSpectrum& spectrum);

/// Device + operating point: everything needed to re-solve the five modes at
/// any signal wavelength (idler slaved by energy conservation, pump fixed).
class SourceModel {
public:
    SourceModel(modesolver::Waveguide waveguide, qpm::InteractionSpec design_point);

    const modesolver::Waveguide& waveguide() const noexcept { return waveguide_; }
    const qpm::InteractionSpec& design_point() const noexcept { return spec_; }

    ModeSet modes_at(double lambda_s_nm) const;
    const ModeSet& design_modes() const noexcept { return design_modes_; }
    qpm::GratingDesign grating() const;
    GroupIndices group_indices() const;

    /// Delta k of one process at a detuned signal wavelength for a fixed grating.
    double phase_mismatch(const qpm::GratingDesign& design, Process which, double lambda_s_nm) const;
    /// sinc^2(dk L / 2) at one signal wavelength.
    double intensity(const qpm::GratingDesign& design, Process which, double lambda_s_nm) const;

    SampledSpectrum spectrum(const qpm::GratingDesign& design, Process which, const SpectrumRange& range,
                             SpectrumMethod method = SpectrumMethod::exact) const;

    /// FWHM of sinc^2 located by root bracketing on the exact spectrum.
    double fwhm(const qpm::GratingDesign& design, Process which) const;

private:
    modesolver::Waveguide waveguide_;
    qpm::InteractionSpec spec_;
    ModeSet design_modes_;
};

struct EntanglementReport {
    qpm::InteractionSpec spec;
    dispersion::WaveguideGeometry geometry;
    ModeSet modes;
    GroupIndices group_indices;
    ProcessAmplitudes amplitudes;
    double gamma = 0.0;
    double amplitude_ratio = 0.0;  ///< C_oe / C_eo
    Bandwidths bandwidth;          ///< first-order estimate
    std::optional<Bandwidths> fwhm;  ///< numeric sinc^2 widths
    qpm::GratingDesign grating;
    std::optional<SampledSpectrum> spectrum_oe;
    std::optional<SampledSpectrum> spectrum_eo;
};

struct ReportOptions {
    bool numeric_fwhm = true;
    std::optional<SpectrumRange> spectra;
    SpectrumMethod method = SpectrumMethod::exact;
};

EntanglementReport analyze(const SourceModel& model, const ReportOptions& options = {});

/// Which photon the bandpass filter sits on. Either way the passband is
/// centered on the design pair; an idler-arm filter of width W maps to a
/// signal-wavelength window W (lambda_s / lambda_i)^2.
enum class FilterArm { signal, idler };

/// gamma recomputed from amplitudes averaged over a rectangular passband.
/// Needs report spectra covering the passband; throws FilterTooWide if the
/// signal-equivalent width is not below min(bandwidth_oe, bandwidth_eo).
double filtered_gamma(const EntanglementReport& report, double filter_fwhm_nm,
                      FilterArm arm = FilterArm::signal);

/// Efficiency of the compound grating over two half-length single-period
/// sections: ((4/pi^2) L)^2 / ((2/pi) (L/2))^2 = (4/pi)^2.
double grating_scheme_efficiency_ratio() noexcept;

}  // namespace dppln::spdc
