#include "dppln/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dppln/errors.hpp"

namespace dppln::quadrature {

namespace {
using Rule = boost::math::quadrature::gauss_kronrod<double, 61>;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

Estimate integrate_half_plane(const std::function<double(double, double)>& f, double y_scale,
                              double z_scale, double absolute_tolerance, const Options& options) {
    double worst_inner_error = 0.0;
    auto inner = [&](double u) {
        const double y = u * y_scale;
        double err = 0.0;
        const double v = Rule::integrate([&](double t) { return f(y, t * z_scale); }, -kInf, 0.0,
                                         options.max_depth, options.relative_tolerance, &err);
        worst_inner_error = std::max(worst_inner_error, err);
        return v * z_scale;
    };
    double outer_error = 0.0;
    const double value =
        Rule::integrate(inner, -kInf, kInf, options.max_depth, options.relative_tolerance, &outer_error) *
        y_scale;

    // Inner errors are bounded per-abscissa; weight by the effective outer extent.
    Estimate est{value, outer_error * y_scale + worst_inner_error * z_scale * 2.0 * y_scale};
    if (!std::isfinite(est.value) || est.error > absolute_tolerance) {
        std::ostringstream msg;
        msg << "adaptive quadrature reached error estimate " << est.error << " above tolerance "
            << absolute_tolerance;
        throw QuadratureFailure(msg.str());
    }
    return est;
}

}  // namespace dppln::quadrature
