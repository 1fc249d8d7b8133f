#pragma once

#include <functional>

namespace dppln::quadrature {

struct Options {
    /// Relative tolerance handed to each nested 1-D adaptive rule.
    double relative_tolerance = 1e-13;
    unsigned max_depth = 15;
};

struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

/// Integral of f(y, z) over y in (-inf, inf), z in (-inf, 0), by nested
/// adaptive Gauss-Kronrod. `y_scale` and `z_scale` are the characteristic
/// lengths of the integrand; they set the substitution of the infinite ranges.
/// Throws QuadratureFailure if the reported error exceeds `absolute_tolerance`.
Estimate integrate_half_plane(const std::function<double(double, double)>& f, double y_scale,
                              double z_scale, double absolute_tolerance, const Options& options = {});

}  // namespace dppln::quadrature
