#pragma once

#include <array>
#include <functional>

namespace dppln::optim {

using Point2 = std::array<double, 2>;

struct SimplexOptions {
    /// Converged when the largest vertex distance from the best vertex drops below this.
    double diameter_tolerance = 1e-7;
    int max_iterations = 20000;
};

struct SimplexResult {
    Point2 argmax{};
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Nelder-Mead maximization in two dimensions, started from the simplex
/// {start, start + step*e_y, start + step*e_z}. Non-finite objective values
/// are treated as -infinity, which lets callers fence off invalid regions.
SimplexResult maximize_simplex(const std::function<double(const Point2&)>& objective,
                               const Point2& start, double step, const SimplexOptions& options = {});

}  // namespace dppln::optim
