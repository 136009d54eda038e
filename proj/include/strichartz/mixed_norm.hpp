#pragma once

#include "strichartz/grid.hpp"
#include "strichartz/rational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

// Space-time Lebesgue norms with either nesting order, on the Riemann
// weights of the sampling grid. Reciprocal exponent zero means a sup norm.

namespace strichartz {

enum class NormOrder { TimeOuter, SpaceOuter };

struct MixedNormSpec {
    Rat q_recip;  // time exponent 1/q
    Rat r_recip;  // space exponent 1/r
    NormOrder order = NormOrder::TimeOuter;
};

inline double space_norm(const std::vector<cplx>& values, const SpatialGrid& g,
                         const Rat& r_recip) {
    if (r_recip == 0) {
        double m = 0;
        for (const cplx& v : values) m = std::max(m, std::abs(v));
        return m;
    }
    double r = 1.0 / to_double(r_recip), sum = 0;
    for (const cplx& v : values) sum += std::pow(std::abs(v), r);
    return std::pow(sum * g.cell(), to_double(r_recip));
}

inline double mixed_norm(const SpaceTimeField& u, const MixedNormSpec& spec) {
    if (u.frames.empty()) return 0;
    if (!(u.dt > 0)) throw std::invalid_argument("mixed norm needs a positive time step");
    if (spec.order == NormOrder::TimeOuter) {
        std::vector<double> per_frame(u.frames.size());
        for (std::size_t k = 0; k < u.frames.size(); ++k)
            per_frame[k] = space_norm(u.frames[k], u.grid, spec.r_recip);
        if (spec.q_recip == 0) return *std::max_element(per_frame.begin(), per_frame.end());
        double q = 1.0 / to_double(spec.q_recip), sum = 0;
        for (double a : per_frame) sum += std::pow(a, q);
        return std::pow(sum * u.dt, to_double(spec.q_recip));
    }
    // space outer: time norm pointwise, then the spatial norm of those
    std::vector<cplx> per_point(u.grid.size());
    for (std::size_t i = 0; i < per_point.size(); ++i) {
        double acc = 0;
        if (spec.q_recip == 0) {
            for (const auto& frame : u.frames) acc = std::max(acc, std::abs(frame[i]));
        } else {
            double q = 1.0 / to_double(spec.q_recip);
            for (const auto& frame : u.frames) acc += std::pow(std::abs(frame[i]), q);
            acc = std::pow(acc * u.dt, to_double(spec.q_recip));
        }
        per_point[i] = acc;
    }
    return space_norm(per_point, u.grid, spec.r_recip);
}

}  // namespace strichartz
