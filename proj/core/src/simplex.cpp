#include "dppln/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dppln::optim {

namespace {

struct Vertex {
    Point2 x;
    double f;
};

Point2 affine(const Point2& a, const Point2& b, double t) {
    // a + t (b - a)
    return {a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
}

double distance(const Point2& a, const Point2& b) {
    return std::hypot(a[0] - b[0], a[1] - b[1]);
}

}  // namespace

SimplexResult maximize_simplex(const std::function<double(const Point2&)>& objective,
                               const Point2& start, double step, const SimplexOptions& options) {
    auto eval = [&](const Point2& x) {
        const double v = objective(x);
        return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
    };

    std::array<Vertex, 3> s{{{start, 0.0}, {{start[0] + step, start[1]}, 0.0}, {{start[0], start[1] + step}, 0.0}}};
    for (auto& v : s) v.f = eval(v.x);

    // Standard coefficients: reflection 1, expansion 2, contraction 1/2, shrink 1/2.
    SimplexResult result;
    for (int it = 0; it < options.max_iterations; ++it) {
        std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f > b.f; });
        result.iterations = it;
        const double diameter = std::max(distance(s[0].x, s[1].x), distance(s[0].x, s[2].x));
        if (diameter < options.diameter_tolerance) {
            result.converged = true;
            break;
        }

        const Point2 centroid{0.5 * (s[0].x[0] + s[1].x[0]), 0.5 * (s[0].x[1] + s[1].x[1])};
        const Vertex& worst = s[2];

        const Point2 xr = affine(centroid, worst.x, -1.0);
        const double fr = eval(xr);
        if (fr > s[0].f) {
            const Point2 xe = affine(centroid, worst.x, -2.0);
            const double fe = eval(xe);
            s[2] = fe > fr ? Vertex{xe, fe} : Vertex{xr, fr};
            continue;
        }
        if (fr > s[1].f) {
            s[2] = {xr, fr};
            continue;
        }
        if (fr > worst.f) {
            const Point2 xc = affine(centroid, xr, 0.5);
            const double fc = eval(xc);
            if (fc >= fr) {
                s[2] = {xc, fc};
                continue;
            }
        } else {
            const Point2 xc = affine(centroid, worst.x, 0.5);
            const double fc = eval(xc);
            if (fc > worst.f) {
                s[2] = {xc, fc};
                continue;
            }
        }
        for (int k = 1; k < 3; ++k) {
            s[k].x = affine(s[0].x, s[k].x, 0.5);
            s[k].f = eval(s[k].x);
        }
    }
    std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f > b.f; });
    result.argmax = s[0].x;
    result.value = s[0].f;
    return result;
}

}  // namespace dppln::optim
