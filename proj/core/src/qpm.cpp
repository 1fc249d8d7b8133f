#include "dppln/qpm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dppln/errors.hpp"

namespace dppln::qpm {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEnergyTolerance = 1e-9;
}  // namespace

std::string_view to_string(Process p) noexcept { return p == Process::oe ? "oe" : "eo"; }

double InteractionSpec::idler_for(double lambda_p_nm, double lambda_s_nm) {
    if (!(lambda_p_nm > 0.0 && lambda_s_nm > lambda_p_nm)) {
        throw InvalidInput("need 0 < lambda_p < lambda_s to derive the idler");
    }
    return 1.0 / (1.0 / lambda_p_nm - 1.0 / lambda_s_nm);
}

InteractionSpec InteractionSpec::from_pump_signal(double lambda_p_nm, double lambda_s_nm, double temperature_c,
                                                  double length_mm) {
    InteractionSpec s{lambda_p_nm, lambda_s_nm, idler_for(lambda_p_nm, lambda_s_nm), temperature_c, length_mm};
    s.validate();
    return s;
}

InteractionSpec InteractionSpec::with_signal(double lambda_s_nm) const {
    InteractionSpec s = *this;
    s.lambda_s_nm = lambda_s_nm;
    s.lambda_i_nm = idler_for(lambda_p_nm, lambda_s_nm);
    return s;
}

void InteractionSpec::validate() const {
    if (!(lambda_p_nm > 0.0 && lambda_s_nm > 0.0 && lambda_i_nm > 0.0)) {
        throw InvalidInput("wavelengths must be positive");
    }
    if (!(lambda_p_nm < lambda_s_nm && lambda_s_nm < lambda_i_nm)) {
        throw InvalidInput("wavelengths must satisfy lambda_p < lambda_s < lambda_i");
    }
    if (!(length_mm > 0.0)) throw InvalidInput("interaction length must be positive");
    const double lhs = 1.0 / lambda_p_nm;
    const double rhs = 1.0 / lambda_s_nm + 1.0 / lambda_i_nm;
    if (std::abs(lhs - rhs) > kEnergyTolerance * lhs) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "energy conservation violated: 1/lambda_p - 1/lambda_s - 1/lambda_i = " << (lhs - rhs)
            << " nm^-1 (relative " << (lhs - rhs) / lhs << ", tolerance 1e-9); lambda_i should be "
            << idler_for(lambda_p_nm, lambda_s_nm) << " nm";
        throw InvalidInput(msg.str());
    }
}

double process_frequency(const InteractionSpec& spec, const EffectiveIndices& n, Process which) noexcept {
    // nm -> um so that K comes out in rad/um.
    const double lp = spec.lambda_p_nm * 1e-3;
    const double ls = spec.lambda_s_nm * 1e-3;
    const double li = spec.lambda_i_nm * 1e-3;
    const double n_s = which == Process::oe ? n.n_so : n.n_se;
    const double n_i = which == Process::oe ? n.n_ie : n.n_io;
    return kTwoPi * (n.n_po / lp - n_s / ls - n_i / li);
}

FrequencyPair required_frequencies(const InteractionSpec& spec, const EffectiveIndices& n) {
    const FrequencyPair k{process_frequency(spec, n, Process::oe), process_frequency(spec, n, Process::eo)};
    if (!(k.K1 > 0.0) || !(k.K2 > 0.0)) {
        std::ostringstream msg;
        msg << "required QPM frequencies K1=" << k.K1 << ", K2=" << k.K2
            << " rad/um; first-order QPM needs both positive";
        throw NonPositiveFrequency(msg.str());
    }
    return k;
}

GratingDesign periods_from_frequencies(double K1, double K2) {
    if (!(K1 > 0.0) || !(K2 > 0.0)) throw InvalidInput("spatial frequencies must be positive");
    if (K1 == K2) {
        throw DegenerateModulation("K1 == K2: modulation period is infinite, a single-period grating suffices");
    }
    GratingDesign g;
    g.K1 = K1;
    g.K2 = K2;
    g.Lambda1 = kTwoPi / K1;
    g.Lambda2 = kTwoPi / K2;
    g.Lambda0 = kTwoPi / g.K0();
    g.Lambdap = kTwoPi / std::abs(g.Kp());
    return g;
}

PolingPattern::PolingPattern(double length_um, std::vector<double> boundaries_um, int initial_sign)
    : length_um_(length_um), boundaries_(std::move(boundaries_um)), initial_sign_(initial_sign) {
    if (!(length_um_ > 0.0)) throw InvalidInput("pattern length must be positive");
    if (initial_sign_ != 1 && initial_sign_ != -1) throw InvalidInput("initial sign must be +1 or -1");
    for (std::size_t i = 0; i < boundaries_.size(); ++i) {
        const double x = boundaries_[i];
        if (!(x >= 0.0 && x <= length_um_) || (i > 0 && !(x > boundaries_[i - 1]))) {
            throw InvalidInput("domain boundaries must be strictly increasing inside [0, L]");
        }
    }
}

int PolingPattern::sign_after(std::size_t index) const noexcept {
    return (index % 2 == 0) ? -initial_sign_ : initial_sign_;
}

int PolingPattern::sign_at(double x_um) const noexcept {
    const auto flips = std::upper_bound(boundaries_.begin(), boundaries_.end(), x_um) - boundaries_.begin();
    return (flips % 2 == 0) ? initial_sign_ : -initial_sign_;
}

PolingPattern synthesize_pattern(const GratingDesign& design, double length_mm) {
    const double length_um = length_mm * 1e3;
    if (!(design.Lambda0 > 0.0 && design.Lambdap > design.Lambda0)) {
        throw InvalidInput("grating design needs Lambda_p > Lambda_0 > 0");
    }
    if (!(length_um > design.Lambdap)) {
        throw InvalidInput("interaction length must span at least one modulation period");
    }
    const double half0 = 0.5 * design.Lambda0;
    const double halfp = 0.5 * design.Lambdap;
    // Positions are k * half computed from integers, so equal flips compare
    // equal up to rounding; anything closer than this is one coincident flip.
    const double merge_tol = 1e-9 * std::max(1.0, length_um);

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(length_um / half0) + static_cast<std::size_t>(length_um / halfp) + 2);
    long k0 = 1, kp = 1;
    double x0 = half0, xp = halfp;
    while (x0 < length_um || xp < length_um) {
        if (std::abs(x0 - xp) <= merge_tol) {
            // Both squares flip together: the product keeps its sign.
            x0 = half0 * static_cast<double>(++k0);
            xp = halfp * static_cast<double>(++kp);
        } else if (x0 < xp) {
            if (x0 < length_um) out.push_back(x0);
            x0 = half0 * static_cast<double>(++k0);
        } else {
            if (xp < length_um) out.push_back(xp);
            xp = halfp * static_cast<double>(++kp);
        }
    }
    return PolingPattern(length_um, std::move(out), +1);
}

std::complex<double> fourier_component(const PolingPattern& pattern, double K) noexcept {
    const auto bounds = pattern.boundaries_um();
    const double L = pattern.length_um();
    if (K == 0.0) {
        double acc = 0.0, a = 0.0;
        int s = pattern.initial_sign();
        for (double b : bounds) {
            acc += s * (b - a);
            a = b;
            s = -s;
        }
        acc += s * (L - a);
        return acc / L;
    }
    // integral_a^b exp(-iKx) dx = (exp(-iKa) - exp(-iKb)) / (iK); telescoping
    // over domains leaves a sum of boundary phases with weights 2 s.
    const std::complex<double> i{0.0, 1.0};
    std::complex<double> acc = static_cast<double>(pattern.initial_sign());  // exp(-iK*0)
    int s = pattern.initial_sign();
    for (double b : bounds) {
        acc -= 2.0 * s * std::polar(1.0, -K * b);
        s = -s;
    }
    acc -= static_cast<double>(s) * std::polar(1.0, -K * L);
    return acc / (i * K * L);
}

double phase_mismatch(const InteractionSpec& spec, const EffectiveIndices& n, const GratingDesign& design,
                      Process which) noexcept {
    const double grating = which == Process::oe ? design.K1 : design.K2;
    return grating - process_frequency(spec, n, which);
}

}  // namespace dppln::qpm
