#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

// Least squares line fits for decay-rate measurements.

namespace strichartz {

struct LineFit {
    double slope = 0, intercept = 0;
    std::vector<double> residuals;
    bool dropped_first = false;  // leading point discarded as a transient
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3)
        throw std::invalid_argument("line fit needs at least three points");
    auto solve = [](const std::vector<double>& xs, const std::vector<double>& ys) {
        double n = static_cast<double>(xs.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        double det = n * sxx - sx * sx;
        if (det == 0) throw std::invalid_argument("degenerate abscissae in line fit");
        LineFit f;
        f.slope = (n * sxy - sx * sy) / det;
        f.intercept = (sy * sxx - sx * sxy) / det;
        f.residuals.resize(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i)
            f.residuals[i] = ys[i] - (f.slope * xs[i] + f.intercept);
        return f;
    };
    LineFit f = solve(x, y);
    // a leading transient shows up as one residual dwarfing the rest; drop it
    // when enough points remain for a meaningful refit
    if (x.size() >= 4) {
        double rest = 0;
        for (std::size_t i = 1; i < f.residuals.size(); ++i)
            rest = std::max(rest, std::abs(f.residuals[i]));
        if (std::abs(f.residuals[0]) > 3 * rest) {
            LineFit g = solve({x.begin() + 1, x.end()}, {y.begin() + 1, y.end()});
            g.dropped_first = true;
            return g;
        }
    }
    return f;
}

inline LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0) || !(y[i] > 0))
            throw std::invalid_argument("log fit needs positive data");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    return fit_line(lx, ly);
}

}  // namespace strichartz
