#pragma once

// Dual-period quasi-phase-matching: spatial frequencies required by the two
// type-II processes, the carrier/modulation periods that supply them, and the
// resulting f1(x) f2(x) domain pattern.
//
// Spatial frequencies are in rad/um, periods and positions in um,
// wavelengths in nm, interaction lengths in mm.

#include <complex>
#include <span>
#include <string_view>
#include <vector>

namespace dppln::qpm {

/// The two simultaneously phase-matched processes, named by (signal, idler) polarization.
enum class Process { oe, eo };

std::string_view to_string(Process p) noexcept;

struct InteractionSpec {
    double lambda_p_nm = 519.0;
    double lambda_s_nm = 780.0;
    double lambda_i_nm = 0.0;
    double temperature_c = 25.0;
    double length_mm = 10.0;

    /// Idler from energy conservation 1/lp = 1/ls + 1/li.
    static double idler_for(double lambda_p_nm, double lambda_s_nm);
    static InteractionSpec from_pump_signal(double lambda_p_nm, double lambda_s_nm, double temperature_c,
                                            double length_mm);

    /// Same pump, signal moved to `lambda_s_nm`, idler slaved by energy conservation.
    InteractionSpec with_signal(double lambda_s_nm) const;

    /// Throws InvalidInput on ordering, positivity or energy-conservation violations.
    void validate() const;
};

/// Effective indices of the five interacting modes (pump is ordinary).
struct EffectiveIndices {
    double n_po = 0.0;
    double n_so = 0.0;
    double n_se = 0.0;
    double n_io = 0.0;
    double n_ie = 0.0;
};

struct FrequencyPair {
    double K1 = 0.0;  ///< (signal o, idler e)
    double K2 = 0.0;  ///< (signal e, idler o)
};

/// K required by one process at the spec's wavelengths (may be <= 0).
double process_frequency(const InteractionSpec& spec, const EffectiveIndices& n, Process which) noexcept;

/// Throws NonPositiveFrequency if either component is <= 0.
FrequencyPair required_frequencies(const InteractionSpec& spec, const EffectiveIndices& n);

/// K1 = K0 + Kp, K2 = K0 - Kp. Kp keeps its sign (negative when K1 < K2);
/// the modulation period is Lambda_p = 2 pi / |Kp|.
struct GratingDesign {
    double K1 = 0.0;
    double K2 = 0.0;
    double Lambda1 = 0.0;
    double Lambda2 = 0.0;
    double Lambda0 = 0.0;
    double Lambdap = 0.0;

    double K0() const noexcept { return 0.5 * (K1 + K2); }
    double Kp() const noexcept { return 0.5 * (K1 - K2); }
};

/// Throws DegenerateModulation if K1 == K2 (a single period suffices),
/// InvalidInput if either frequency is not positive.
GratingDesign periods_from_frequencies(double K1, double K2);

/// Sign of d_eff along the crystal: +1 on (0, first boundary), flipping at
/// every boundary.
class PolingPattern {
public:
    PolingPattern(double length_um, std::vector<double> boundaries_um, int initial_sign = +1);

    double length_um() const noexcept { return length_um_; }
    int initial_sign() const noexcept { return initial_sign_; }
    std::span<const double> boundaries_um() const noexcept { return boundaries_; }

    /// Sign on the open domain following boundary `index`.
    int sign_after(std::size_t index) const noexcept;
    int sign_at(double x_um) const noexcept;

private:
    double length_um_;
    std::vector<double> boundaries_;
    int initial_sign_;
};

/// f1 (period Lambda0) times f2 (period Lambdap), both 50 % duty and +1 just
/// after x = 0, over [0, L]. Coincident flips cancel and are not recorded.
PolingPattern synthesize_pattern(const GratingDesign& design, double length_mm);

/// (1/L) integral_0^L sign(x) exp(-i K x) dx, exact domain by domain.
std::complex<double> fourier_component(const PolingPattern& pattern, double K) noexcept;

/// Delta k = K_grating - K_required(spec, n) for one process.
double phase_mismatch(const InteractionSpec& spec, const EffectiveIndices& n, const GratingDesign& design,
                      Process which) noexcept;

}  // namespace dppln::qpm
