#include "dppln/spdc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/tools/roots.hpp>

#include "dppln/errors.hpp"
#include "dppln/parallel.hpp"
#include "dppln/quadrature.hpp"

namespace dppln::spdc {

namespace {

constexpr double kPi = std::numbers::pi;

void require_same_geometry(const TrialField& p, const TrialField& a, const TrialField& b) {
    if (p.width_um != a.width_um || p.width_um != b.width_um || p.depth_um != a.depth_um ||
        p.depth_um != b.depth_um) {
        throw InvalidInput("overlap integral needs all three fields on the same waveguide geometry");
    }
}

double length_um(const qpm::InteractionSpec& spec) noexcept { return spec.length_mm * 1e3; }

}  // namespace

qpm::EffectiveIndices ModeSet::indices() const noexcept {
    return {pump_o.n_eff, signal_o.n_eff, signal_e.n_eff, idler_o.n_eff, idler_e.n_eff};
}

double overlap_integral(const TrialField& p, const TrialField& a, const TrialField& b) {
    require_same_geometry(p, a, b);
    const double w = p.width_um;
    const double h = p.depth_um;
    const double sum_y = p.alpha_y * p.alpha_y + a.alpha_y * a.alpha_y + b.alpha_y * b.alpha_y;
    const double sum_z = p.alpha_z * p.alpha_z + a.alpha_z * a.alpha_z + b.alpha_z * b.alpha_z;
    // Each field contributes A_j az_j / h; the y-integral is a Gaussian and
    // the z-integral is int_{-inf}^0 (-z)^3 exp(-S z^2 / h^2) dz = h^4 / (2 S^2).
    double weight = 1.0;
    for (const TrialField* f : {&p, &a, &b}) weight *= f->amplitude() * f->alpha_z / h;
    return weight * std::sqrt(kPi) * w / std::sqrt(sum_y) * std::pow(h, 4) / (2.0 * sum_z * sum_z);
}

double overlap_quadrature(const TrialField& p, const TrialField& a, const TrialField& b,
                          double absolute_tolerance) {
    require_same_geometry(p, a, b);
    const double sum_y = p.alpha_y * p.alpha_y + a.alpha_y * a.alpha_y + b.alpha_y * b.alpha_y;
    const double sum_z = p.alpha_z * p.alpha_z + a.alpha_z * a.alpha_z + b.alpha_z * b.alpha_z;
    auto integrand = [&](double y, double z) { return p.value(y, z) * a.value(y, z) * b.value(y, z); };
    return quadrature::integrate_half_plane(integrand, p.width_um / std::sqrt(sum_y), p.depth_um / std::sqrt(sum_z),
                                            absolute_tolerance)
        .value;
}

double sinc(double x) noexcept {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

ProcessAmplitudes relative_amplitudes(const ModeSet& m, const qpm::GratingDesign& design) {
    const auto n = m.indices();
    const double L = length_um(m.spec);
    ProcessAmplitudes out;
    out.I_oe = overlap_integral(m.pump_o.field, m.signal_o.field, m.idler_e.field);
    out.I_eo = overlap_integral(m.pump_o.field, m.signal_e.field, m.idler_o.field);
    out.dk_oe = qpm::phase_mismatch(m.spec, n, design, Process::oe);
    out.dk_eo = qpm::phase_mismatch(m.spec, n, design, Process::eo);
    auto amplitude = [L](double overlap, double n_s, double n_i, double dk) {
        const double half = 0.5 * dk * L;
        return (overlap / (n_s * n_i)) * sinc(half) * std::polar(1.0, -half);
    };
    out.C_oe = amplitude(out.I_oe, n.n_so, n.n_ie, out.dk_oe);
    out.C_eo = amplitude(out.I_eo, n.n_se, n.n_io, out.dk_eo);
    return out;
}

double amplitude_ratio_closed_form(const ModeSet& m) {
    const auto& po = m.pump_o.field;
    const auto& so = m.signal_o.field;
    const auto& se = m.signal_e.field;
    const auto& io = m.idler_o.field;
    const auto& ie = m.idler_e.field;
    auto sq = [](double x) { return x * x; };
    auto weight = [](const TrialField& f) { return std::sqrt(f.alpha_y) * std::pow(f.alpha_z, 1.5); };

    const double num = weight(so) * weight(ie) * std::sqrt(sq(po.alpha_y) + sq(se.alpha_y) + sq(io.alpha_y)) *
                       sq(sq(po.alpha_z) + sq(se.alpha_z) + sq(io.alpha_z)) * m.signal_e.n_eff * m.idler_o.n_eff;
    const double den = weight(se) * weight(io) * std::sqrt(sq(po.alpha_y) + sq(so.alpha_y) + sq(ie.alpha_y)) *
                       sq(sq(po.alpha_z) + sq(so.alpha_z) + sq(ie.alpha_z)) * m.signal_o.n_eff * m.idler_e.n_eff;
    return num / den;
}

double gamma(const ProcessAmplitudes& a) {
    const double x = std::abs(a.C_oe);
    const double y = std::abs(a.C_eo);
    const double hi = std::max(x, y);
    if (!(hi > 0.0)) throw UndefinedGamma("gamma undefined: both process amplitudes vanish");
    return std::min(x, y) / hi;
}

Bandwidths bandwidth_approx(const GroupIndices& n, double lambda_s_nm, double length_mm) {
    if (!(length_mm > 0.0)) throw InvalidInput("interaction length must be positive");
    const double d_oe = std::abs(n.N_ie - n.N_so);
    const double d_eo = std::abs(n.N_io - n.N_se);
    if (d_oe < 1e-6 || d_eo < 1e-6) {
        std::ostringstream msg;
        msg << "group-index difference below 1e-6 (|N_ie-N_so|=" << d_oe << ", |N_io-N_se|=" << d_eo
            << "): first-order bandwidth is unbounded";
        throw DegenerateGroupIndices(msg.str());
    }
    const double length_nm = length_mm * 1e6;
    const double l2 = lambda_s_nm * lambda_s_nm;
    return {l2 / (length_nm * d_oe), l2 / (length_nm * d_eo)};
}

double sampled_fwhm(const SampledSpectrum& s) {
    const auto& x = s.lambda_s_nm;
    const auto& y = s.intensity;
    if (x.size() != y.size() || x.size() < 3) throw InvalidInput("spectrum needs at least three samples");
    const std::size_t peak = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
    const double half = 0.5 * y[peak];
    auto crossing = [&](std::size_t inside, std::size_t outside) {
        const double t = (y[inside] - half) / (y[inside] - y[outside]);
        return x[inside] + t * (x[outside] - x[inside]);
    };
    std::size_t r = peak;
    while (r + 1 < y.size() && y[r + 1] >= half) ++r;
    std::size_t l = peak;
    while (l > 0 && y[l - 1] >= half) --l;
    if (r + 1 >= y.size() || l == 0) {
        throw InvalidInput("spectrum range does not bracket both half-maximum points");
    }
    return crossing(r, r + 1) - crossing(l, l - 1);
}

SourceModel::SourceModel(modesolver::Waveguide waveguide, qpm::InteractionSpec design_point)
    : waveguide_(std::move(waveguide)), spec_(design_point) {
    spec_.validate();
    design_modes_.pump_o = waveguide_.solve(Polarization::ordinary, spec_.lambda_p_nm);
    design_modes_ = modes_at(spec_.lambda_s_nm);
    design_modes_.spec = spec_;
}

ModeSet SourceModel::modes_at(double lambda_s_nm) const {
    ModeSet m;
    m.spec = spec_.with_signal(lambda_s_nm);
    m.pump_o = design_modes_.pump_o;
    m.signal_o = waveguide_.solve(Polarization::ordinary, m.spec.lambda_s_nm);
    m.signal_e = waveguide_.solve(Polarization::extraordinary, m.spec.lambda_s_nm);
    m.idler_o = waveguide_.solve(Polarization::ordinary, m.spec.lambda_i_nm);
    m.idler_e = waveguide_.solve(Polarization::extraordinary, m.spec.lambda_i_nm);
    return m;
}

qpm::GratingDesign SourceModel::grating() const {
    const auto k = qpm::required_frequencies(spec_, design_modes_.indices());
    return qpm::periods_from_frequencies(k.K1, k.K2);
}

GroupIndices SourceModel::group_indices() const {
    const double ls = spec_.lambda_s_nm;
    const double li = spec_.lambda_i_nm;
    return {waveguide_.group_index(Polarization::ordinary, ls), waveguide_.group_index(Polarization::extraordinary, ls),
            waveguide_.group_index(Polarization::ordinary, li), waveguide_.group_index(Polarization::extraordinary, li)};
}

double SourceModel::phase_mismatch(const qpm::GratingDesign& design, Process which, double lambda_s_nm) const {
    const auto spec = spec_.with_signal(lambda_s_nm);
    qpm::EffectiveIndices n{};
    n.n_po = design_modes_.pump_o.n_eff;
    if (which == Process::oe) {
        n.n_so = waveguide_.solve(Polarization::ordinary, spec.lambda_s_nm).n_eff;
        n.n_ie = waveguide_.solve(Polarization::extraordinary, spec.lambda_i_nm).n_eff;
    } else {
        n.n_se = waveguide_.solve(Polarization::extraordinary, spec.lambda_s_nm).n_eff;
        n.n_io = waveguide_.solve(Polarization::ordinary, spec.lambda_i_nm).n_eff;
    }
    return qpm::phase_mismatch(spec, n, design, which);
}

double SourceModel::intensity(const qpm::GratingDesign& design, Process which, double lambda_s_nm) const {
    const double s = sinc(0.5 * phase_mismatch(design, which, lambda_s_nm) * length_um(spec_));
    return s * s;
}

SampledSpectrum SourceModel::spectrum(const qpm::GratingDesign& design, Process which, const SpectrumRange& range,
                                      SpectrumMethod method) const {
    if (range.samples < 2 || !(range.lambda_max_nm > range.lambda_min_nm)) {
        throw InvalidInput("spectrum range needs lambda_max > lambda_min and at least two samples");
    }
    if (!(range.lambda_min_nm <= spec_.lambda_s_nm && spec_.lambda_s_nm <= range.lambda_max_nm)) {
        throw InvalidInput("spectrum range must bracket the design signal wavelength");
    }
    const auto n = static_cast<std::size_t>(range.samples);
    SampledSpectrum out;
    out.lambda_s_nm.resize(n);
    out.intensity.resize(n);
    const double step = (range.lambda_max_nm - range.lambda_min_nm) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) out.lambda_s_nm[i] = range.lambda_min_nm + step * static_cast<double>(i);

    if (method == SpectrumMethod::exact) {
        parallel_for(n, [&](std::size_t i) { out.intensity[i] = intensity(design, which, out.lambda_s_nm[i]); });
        return out;
    }
    // d(dk)/d(lambda_s) = 2 pi (N_i - N_s) / lambda_s^2 with lambda in um.
    const auto N = group_indices();
    const double dN = which == Process::oe ? N.N_ie - N.N_so : N.N_io - N.N_se;
    const double l0 = spec_.lambda_s_nm * 1e-3;
    const double dk0 = qpm::phase_mismatch(spec_, design_modes_.indices(), design, which);
    for (std::size_t i = 0; i < n; ++i) {
        const double delta = (out.lambda_s_nm[i] - spec_.lambda_s_nm) * 1e-3;
        const double dk = dk0 + 2.0 * kPi * dN * delta / (l0 * l0);
        const double s = sinc(0.5 * dk * length_um(spec_));
        out.intensity[i] = s * s;
    }
    return out;
}

double SourceModel::fwhm(const qpm::GratingDesign& design, Process which) const {
    const double center = spec_.lambda_s_nm;
    auto half_width = [&](double direction) {
        auto excess = [&](double d) { return intensity(design, which, center + direction * d) - 0.5; };
        double lo = 0.0;
        double hi = 0.005;
        // sinc^2 side lobes stay below 0.05, so the first sample under 0.5
        // brackets the main-lobe crossing.
        while (excess(hi) > 0.0) {
            lo = hi;
            hi *= 2.0;
            if (hi > 200.0) throw InvalidInput("spectrum does not fall to half maximum within 200 nm");
        }
        std::uintmax_t iterations = 200;
        const auto root = boost::math::tools::toms748_solve(excess, lo, hi, 0.5, excess(hi),
                                                            boost::math::tools::eps_tolerance<double>(40),
                                                            iterations);
        return 0.5 * (root.first + root.second);
    };
    return half_width(+1.0) + half_width(-1.0);
}

EntanglementReport analyze(const SourceModel& model, const ReportOptions& options) {
    EntanglementReport r;
    r.spec = model.design_point();
    r.geometry = model.waveguide().geometry();
    r.modes = model.design_modes();
    r.grating = model.grating();
    r.amplitudes = relative_amplitudes(r.modes, r.grating);
    r.gamma = gamma(r.amplitudes);
    r.amplitude_ratio = std::abs(r.amplitudes.C_oe) / std::abs(r.amplitudes.C_eo);
    r.group_indices = model.group_indices();
    r.modes.signal_o.group_index = r.group_indices.N_so;
    r.modes.signal_e.group_index = r.group_indices.N_se;
    r.modes.idler_o.group_index = r.group_indices.N_io;
    r.modes.idler_e.group_index = r.group_indices.N_ie;
    r.bandwidth = bandwidth_approx(r.group_indices, r.spec.lambda_s_nm, r.spec.length_mm);
    if (options.numeric_fwhm) {
        r.fwhm = Bandwidths{model.fwhm(r.grating, Process::oe), model.fwhm(r.grating, Process::eo)};
    }
    if (options.spectra) {
        r.spectrum_oe = model.spectrum(r.grating, Process::oe, *options.spectra, options.method);
        r.spectrum_eo = model.spectrum(r.grating, Process::eo, *options.spectra, options.method);
    }
    return r;
}

namespace {

// Mean of |sinc| = sqrt(intensity) over [a, b]: cubic B-spline through the
// uniformly spaced report samples, then a fine trapezoid. Linear interpolation
// would bias the mean of the concave peak low by O(h^2).
double mean_amplitude(const SampledSpectrum& s, double a, double b) {
    const auto& x = s.lambda_s_nm;
    if (x.size() < 4 || a < x.front() || b > x.back()) {
        throw InvalidInput("report spectra do not cover the filter passband");
    }
    std::vector<double> amp(s.intensity.size());
    std::transform(s.intensity.begin(), s.intensity.end(), amp.begin(),
                   [](double v) { return std::sqrt(std::max(0.0, v)); });
    const double h = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
    const boost::math::interpolators::cardinal_cubic_b_spline<double> spline(amp.begin(), amp.end(), x.front(), h);
    constexpr int kPanels = 400;
    const double dx = (b - a) / kPanels;
    double acc = 0.5 * (spline(a) + spline(b));
    for (int k = 1; k < kPanels; ++k) acc += spline(a + dx * k);
    return acc * dx / (b - a);
}

}  // namespace

double filtered_gamma(const EntanglementReport& report, double filter_fwhm_nm, FilterArm arm) {
    if (!(filter_fwhm_nm >= 0.0)) throw InvalidInput("filter width must be >= 0");
    const double ratio = report.spec.lambda_s_nm / report.spec.lambda_i_nm;
    const double width = arm == FilterArm::signal ? filter_fwhm_nm : filter_fwhm_nm * ratio * ratio;
    const double limit = std::min(report.bandwidth.oe_nm, report.bandwidth.eo_nm);
    if (!(width < limit)) {
        std::ostringstream msg;
        msg << "filter passband " << width << " nm (signal wavelength) is not narrower than the narrowest process "
            << "bandwidth " << limit << " nm";
        throw FilterTooWide(msg.str());
    }
    if (width == 0.0) return report.gamma;
    if (!report.spectrum_oe || !report.spectrum_eo) {
        throw InvalidInput("filtered gamma needs a report with sampled spectra");
    }
    const double a = report.spec.lambda_s_nm - 0.5 * width;
    const double b = report.spec.lambda_s_nm + 0.5 * width;
    const double c_oe = std::abs(report.amplitudes.C_oe) * mean_amplitude(*report.spectrum_oe, a, b);
    const double c_eo = std::abs(report.amplitudes.C_eo) * mean_amplitude(*report.spectrum_eo, a, b);
    return std::min(c_oe, c_eo) / std::max(c_oe, c_eo);
}

double grating_scheme_efficiency_ratio() noexcept {
    // ((4/pi^2) L)^2 / ((2/pi) (L/2))^2, simplified so the value is exact to
    // one rounding.
    return 16.0 / (kPi * kPi);
}

}  // namespace dppln::spdc
