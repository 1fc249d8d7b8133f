// Acceptance suite: one PASS/FAIL line per criterion, tolerances fixed here.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "dppln/errors.hpp"
#include "dppln/modesolver.hpp"
#include "dppln/quadrature.hpp"
#include "dppln/spdc.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace dppln;
using std::numbers::pi;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

spdc::SourceModel model(double depth, double width, double length_mm = 10.0) {
    modesolver::SolverOptions opts;
    // The 6.5 x 6 um guide supports its extraordinary idler only as the
    // best interior maximum just below the substrate index.
    opts.accept_leaky = true;
    modesolver::Waveguide wg(dispersion::Material{}, {width, depth, 1.0}, 25.0, opts);
    return spdc::SourceModel(std::move(wg), qpm::InteractionSpec::from_pump_signal(519.0, 780.0, 25.0, length_mm));
}

struct Row {
    double depth, width, gamma, lambda1, lambda2;
};
const Row kReference[] = {
    {6.5, 6.0, 0.9294, 4.574, 3.650},
    {8.0, 8.0, 0.9884, 4.577, 3.651},
    {10.0, 10.0, 0.9957, 4.580, 3.653},
    {12.0, 12.0, 0.9982, 4.583, 3.655},
};

std::vector<spdc::EntanglementReport> reference_reports() {
    std::vector<spdc::EntanglementReport> out;
    for (const auto& r : kReference) out.push_back(spdc::analyze(model(r.depth, r.width), {false, {}, {}}));
    return out;
}

Outcome criterion1(const std::vector<spdc::EntanglementReport>& reports) {
    constexpr double tol = 0.02;
    bool ok = true;
    std::string d;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const double g = reports[i].gamma;
        ok &= std::abs(g - kReference[i].gamma) <= tol;
        d += fmt("%g/%g: %.4f (reference %.4f)  ", kReference[i].depth, kReference[i].width, g, kReference[i].gamma);
    }
    return {ok, d + fmt("tol %.2f", tol)};
}

Outcome criterion2(const std::vector<spdc::EntanglementReport>& reports) {
    constexpr double rel = 0.02;
    bool ok = true;
    std::string d;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const double l1 = reports[i].grating.Lambda1;
        const double l2 = reports[i].grating.Lambda2;
        ok &= l1 >= 4.574 * (1 - rel) && l1 <= 4.583 * (1 + rel);
        ok &= l2 >= 3.650 * (1 - rel) && l2 <= 3.655 * (1 + rel);
        d += fmt("L1=%.4f L2=%.4f  ", l1, l2);
    }
    const double trend = reports.back().grating.Lambda1 - reports.front().grating.Lambda1;
    ok &= trend > 0.0;
    return {ok, d + fmt("L1 trend %+.4f um (reference +0.009)", trend)};
}

Outcome criterion3() {
    const auto m = model(10.0, 10.0);
    spdc::ReportOptions o;
    o.spectra = spdc::SpectrumRange{770.0, 790.0, 2001};
    const auto r = spdc::analyze(m, o);
    const double oe = spdc::sampled_fwhm(*r.spectrum_oe);
    const double eo = spdc::sampled_fwhm(*r.spectrum_eo);
    const double ratio = eo / oe;
    const bool ok = oe >= 0.22 && oe <= 0.36 && eo >= 4.8 && eo <= 7.9 && ratio >= 17 && ratio <= 27;
    return {ok, fmt("FWHM oe %.4f nm in [0.22,0.36], eo %.3f nm in [4.8,7.9], ratio %.2f in [17,27]", oe, eo, ratio)};
}

struct LabelledGrating {
    std::string label;
    qpm::GratingDesign grating;
};

// The computed design point plus the published reference periods.
std::vector<LabelledGrating> fourier_gratings(const qpm::GratingDesign& design) {
    std::vector<LabelledGrating> out{{"design 10/10", design}};
    for (const auto& r : kReference) {
        out.push_back({fmt("reference %g/%g", r.depth, r.width),
                       qpm::periods_from_frequencies(2 * pi / r.lambda1, 2 * pi / r.lambda2)});
    }
    return out;
}

Outcome criterion4(const std::vector<LabelledGrating>& gratings) {
    const double target = 4.0 / (pi * pi);
    bool ok = true;
    std::string d;
    for (const auto& [label, g] : gratings) {
        const auto p = qpm::synthesize_pattern(g, 100 * g.Lambdap * 1e-3);
        const auto c1 = qpm::fourier_component(p, g.K1);
        const auto c2 = qpm::fourier_component(p, g.K2);
        const double dev = std::max(std::abs(std::abs(c1) - target), std::abs(std::abs(c2) - target)) / target;
        const double fft = std::max(std::abs(testing::fft_component(p, g.K1) - c1) / std::abs(c1),
                                    std::abs(testing::fft_component(p, g.K2) - c2) / std::abs(c2));
        ok &= dev <= 1e-3 && fft <= 1e-3;
        d += fmt("%s: |c|-4/pi^2 %.1e, FFT %.1e; ", label.c_str(), dev, fft);
    }
    return {ok, d + "tol 1e-3 relative, L = 100 Lambda_p"};
}

Outcome criterion5() {
    const dispersion::Material mat;
    const struct {
        double w, h;
        Polarization p;
        double lambda;
    } cases[] = {
        {10, 10, Polarization::ordinary, 780.0},       {8, 8, Polarization::ordinary, 519.0},
        {12, 12, Polarization::extraordinary, 1551.03}, {6, 6.5, Polarization::extraordinary, 780.0},
        {9, 7, Polarization::ordinary, 1000.0},
    };
    double worst_opt = 0.0;
    for (const auto& c : cases) {
        const dispersion::WaveguideGeometry g{c.w, c.h, 1.0};
        const double nb = mat.bulk(c.p, c.lambda, 25.0);
        const double dn = mat.increment(c.p, c.lambda);
        const auto sol = modesolver::solve_mode(g, nb, dn, c.lambda, {}, c.p);
        worst_opt = std::max(worst_opt, std::abs(sol.n_eff - testing::grid_oracle(g, nb, dn, c.lambda).n_eff));
    }
    testing::Gen gen(2024);
    double worst_quad = 0.0;
    double worst_norm = 0.0;
    for (int i = 0; i < 20; ++i) {
        const auto f = gen.field();
        const double nb = gen.bulk_index();
        const double dn = gen.increment();
        const double lambda = gen.wavelength_nm();
        const dispersion::WaveguideGeometry g{f.width_um, f.depth_um, 1.0};
        const double closed = modesolver::neff_closed_form(f, nb, dn, lambda);
        const double quad = modesolver::neff_quadrature(
            f, [&](double y, double z) { return dispersion::index_profile(g, nb, dn, y, z); }, lambda);
        worst_quad = std::max(worst_quad, std::abs(quad - closed) / std::abs(closed));
        const double norm = quadrature::integrate_half_plane(
                                [&](double y, double z) { return std::pow(f.value(y, z), 2); },
                                f.width_um / f.alpha_y, f.depth_um / f.alpha_z, 1e-10)
                                .value;
        worst_norm = std::max(worst_norm, std::abs(norm - 1.0));
    }
    const bool ok = worst_opt < 1e-9 && worst_quad < 1e-6 && worst_norm < 1e-8;
    return {ok, fmt("optimizer vs 400x400 grid %.1e (<1e-9), closed vs quadrature %.1e (<1e-6), norm %.1e (<1e-8)",
                    worst_opt, worst_quad, worst_norm)};
}

Outcome criterion6(const std::vector<LabelledGrating>& gratings) {
    const double analytic = spdc::grating_scheme_efficiency_ratio();
    const bool exact = std::abs(analytic - 16.0 / (pi * pi)) <= 1e-15 * analytic;
    bool ok = exact;
    std::string d = fmt("analytic %.6f (== 16/pi^2: %s); ", analytic, exact ? "yes" : "no");
    for (const auto& [label, g] : gratings) {
        // Compound grating over L against a single-period grating over L/2,
        // both measured from their domain patterns and normalized to L.
        const double L_mm = 100 * g.Lambdap * 1e-3;
        const double compound = std::abs(qpm::fourier_component(qpm::synthesize_pattern(g, L_mm), g.K1));
        const long periods = std::lround(0.5 * L_mm * 1e3 / g.Lambda1);
        std::vector<double> b;
        for (long k = 1; k < 2 * periods; ++k) b.push_back(k * 0.5 * g.Lambda1);
        const qpm::PolingPattern single(periods * g.Lambda1, b);
        const double separate = 0.5 * std::abs(qpm::fourier_component(single, g.K1));
        const double measured = std::pow(compound / separate, 2);
        const double dev = std::abs(measured - analytic) / analytic;
        ok &= dev <= 1e-3;
        d += fmt("%s: %.5f (%.1e); ", label.c_str(), measured, dev);
    }
    return {ok, d + "tol 1e-3 relative"};
}

Outcome criterion7(const spdc::SourceModel& design) {
    testing::Gen gen(77);
    bool gamma_range = true;
    double worst_sym = 0.0;
    double worst_paths = 0.0;
    double worst_dk = 0.0;
    for (int i = 0; i < 500; ++i) {
        spdc::ModeSet m;
        m.spec = qpm::InteractionSpec::from_pump_signal(519.0, 780.0, 25.0, gen.uniform(1, 30));
        const double w = gen.uniform(4, 14);
        const double h = gen.uniform(4, 14);
        for (auto* s : {&m.pump_o, &m.signal_o, &m.signal_e, &m.idler_o, &m.idler_e}) {
            s->field = {gen.log_uniform(0.3, 4), gen.log_uniform(0.3, 4), w, h};
            s->n_eff = gen.uniform(2.1, 2.2);
        }
        m.pump_o.n_eff = gen.uniform(2.25, 2.3);
        const auto k = qpm::required_frequencies(m.spec, m.indices());
        if (k.K1 == k.K2) continue;
        auto grating = qpm::periods_from_frequencies(k.K1, k.K2);
        const auto amp = spdc::relative_amplitudes(m, grating);
        worst_dk = std::max({worst_dk, std::abs(amp.dk_oe), std::abs(amp.dk_eo)});
        const double path = std::abs(amp.C_oe) / std::abs(amp.C_eo);
        worst_paths = std::max(worst_paths, std::abs(spdc::amplitude_ratio_closed_form(m) - path) / path);
        // Random detuning for the range check.
        grating.K1 += gen.uniform(-0.01, 0.01);
        const double g = spdc::gamma(spdc::relative_amplitudes(m, grating));
        gamma_range &= g >= 0.0 && g <= 1.0;
        m.signal_e = m.signal_o;
        m.idler_o = m.idler_e;
        const auto sk = qpm::required_frequencies(m.spec, m.indices());
        const double gs = spdc::gamma(spdc::relative_amplitudes(m, {sk.K1, sk.K2, 0, 0, 0, 0}));
        worst_sym = std::max(worst_sym, std::abs(gs - 1.0));
    }
    const auto g = design.grating();
    for (auto p : {qpm::Process::oe, qpm::Process::eo}) {
        worst_dk = std::max(worst_dk, std::abs(design.phase_mismatch(g, p, 780.0)));
    }
    const auto n = design.group_indices();
    const double r10 = spdc::bandwidth_approx(n, 780.0, 10.0).ratio();
    double worst_L = 0.0;
    for (double L : {5.0, 20.0}) worst_L = std::max(worst_L, std::abs(spdc::bandwidth_approx(n, 780.0, L).ratio() - r10) / r10);
    const bool ok = gamma_range && worst_sym < 1e-12 && worst_paths < 1e-10 && worst_dk < 1e-10 && worst_L < 1e-6;
    return {ok, fmt("gamma in [0,1]: %s; symmetric gamma dev %.1e; closed vs overlap path %.1e (<1e-10); "
                    "design dk %.1e rad/um (<1e-10); ratio vs L %.1e (<1e-6)",
                    gamma_range ? "yes" : "no", worst_sym, worst_paths, worst_dk, worst_L)};
}

}  // namespace

int main() {
    int failures = 0;
    auto report = [&](int id, const char* title, const std::function<Outcome()>& check) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("[%s] AC%d %s: %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
        std::fflush(stdout);
    };

    std::vector<spdc::EntanglementReport> reports;
    try {
        reports = reference_reports();
    } catch (const std::exception& e) {
        std::printf("table rows failed: %s\n", e.what());
    }
    const auto design = model(10.0, 10.0);
    const auto grating = design.grating();

    report(1, "Entanglement quality", [&] { return criterion1(reports); });
    report(2, "Poling periods", [&] { return criterion2(reports); });
    report(3, "Spectral bandwidths", criterion3);
    report(4, "Fourier sidebands", [&] { return criterion4(fourier_gratings(grating)); });
    report(5, "Variational solver", criterion5);
    report(6, "Efficiency ratio", [&] { return criterion6(fourier_gratings(grating)); });
    report(7, "Property suite", [&] { return criterion7(design); });
    std::printf("[N/A ] AC8 Absolute brightness and measured visibilities: not computed\n");
    return failures;
}
