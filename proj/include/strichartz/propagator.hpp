#pragma once

#include "strichartz/fit.hpp"
#include "strichartz/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

// Free propagator of the linear flow i u_t = -Delta u, as the Fourier
// multiplier exp(-i t |xi|^2). Two backends: a periodic spectral one on the
// sampling grid, and a free-space oscillatory kernel summed directly, which
// is slow but has no wrap-around and can evaluate on any output grid.

namespace strichartz {

enum class Backend { Spectral, Kernel };

inline void apply_multiplier(std::vector<cplx>& values, const SpatialGrid& g, double t) {
    fft_field(values, g, false);
    if (g.dim == 1) {
        for (int m = 0; m < g.n; ++m) {
            double w = g.freq(m);
            values[m] *= std::polar(1.0, -t * w * w);
        }
    } else {
        for (int mx = 0; mx < g.n; ++mx) {
            double wx = g.freq(mx);
            for (int my = 0; my < g.n; ++my) {
                double wy = g.freq(my);
                values[std::size_t(mx) * g.n + my] *= std::polar(1.0, -t * (wx * wx + wy * wy));
            }
        }
    }
    fft_field(values, g, true);
}

inline Field propagate_spectral(const Field& f, double t) {
    Field out = f;
    apply_multiplier(out.values, out.grid, t);
    return out;
}

// point sources with their coordinates, for kernel summation
struct SourceList {
    std::vector<double> x, y;  // y unused in one dimension
    std::vector<cplx> value;
};

inline SourceList nonzero_sources(const Field& f) {
    SourceList s;
    if (f.grid.dim == 1) {
        for (int i = 0; i < f.grid.n; ++i)
            if (f.values[i] != cplx(0)) {
                s.x.push_back(f.grid.coord(i));
                s.y.push_back(0);
                s.value.push_back(f.values[i]);
            }
    } else {
        for (int ix = 0; ix < f.grid.n; ++ix)
            for (int iy = 0; iy < f.grid.n; ++iy) {
                const cplx& v = f.values[std::size_t(ix) * f.grid.n + iy];
                if (v != cplx(0)) {
                    s.x.push_back(f.grid.coord(ix));
                    s.y.push_back(f.grid.coord(iy));
                    s.value.push_back(v);
                }
            }
    }
    return s;
}

namespace detail {

inline void kernel_accumulate(std::vector<cplx>& out, const SpatialGrid& og,
                              const SourceList& src, int dim, double t, double cell,
                              cplx weight) {
    if (src.value.empty()) return;
    double inv4t = 1.0 / (4.0 * t);
    double amp = std::pow(4.0 * pi * std::abs(t), -0.5 * dim);
    cplx c = weight * amp * std::polar(1.0, -pi * dim / 4.0 * (t > 0 ? 1.0 : -1.0)) * cell;
    if (dim == 1) {
        for (int i = 0; i < og.n; ++i) {
            double xi = og.coord(i);
            cplx sum = 0;
            for (std::size_t sjdx = 0; sjdx < src.value.size(); ++sjdx) {
                double d = xi - src.x[sjdx];
                sum += src.value[sjdx] * std::polar(1.0, d * d * inv4t);
            }
            out[i] += c * sum;
        }
    } else {
        for (int ix = 0; ix < og.n; ++ix) {
            double xi = og.coord(ix);
            for (int iy = 0; iy < og.n; ++iy) {
                double yi = og.coord(iy);
                cplx sum = 0;
                for (std::size_t sjdx = 0; sjdx < src.value.size(); ++sjdx) {
                    double dx = xi - src.x[sjdx], dy = yi - src.y[sjdx];
                    sum += src.value[sjdx] * std::polar(1.0, (dx * dx + dy * dy) * inv4t);
                }
                out[std::size_t(ix) * og.n + iy] += c * sum;
            }
        }
    }
}

}  // namespace detail

inline Field propagate_kernel(const Field& f, double t, const SpatialGrid& out_grid) {
    if (t == 0) throw std::invalid_argument("kernel backend is singular at t = 0");
    if (out_grid.dim != f.grid.dim) throw std::invalid_argument("kernel output dimension mismatch");
    Field out(out_grid);
    detail::kernel_accumulate(out.values, out_grid, nonzero_sources(f), f.grid.dim, t,
                              f.grid.cell(), cplx(1));
    return out;
}

inline Field propagate(const Field& f, double t, Backend backend = Backend::Spectral) {
    if (backend == Backend::Spectral) return propagate_spectral(f, t);
    return propagate_kernel(f, t, f.grid);
}

inline Field adjoint_propagate(const Field& f, double s, Backend backend = Backend::Spectral) {
    return propagate(f, -s, backend);
}

// retarded integral v(t_k) = dt sum_{j<k} U(t_k - s_j) F(s_j) on the frame
// grid of F, via one multiplier recurrence per step in Fourier space
inline SpaceTimeField duhamel_retarded(const SpaceTimeField& F) {
    const SpatialGrid& g = F.grid;
    SpaceTimeField v(g, F.t0, F.dt, F.frames.size());
    if (F.frames.empty()) return v;

    std::vector<double> omega(g.size());
    if (g.dim == 1) {
        for (int m = 0; m < g.n; ++m) omega[m] = g.freq(m) * g.freq(m);
    } else {
        for (int mx = 0; mx < g.n; ++mx)
            for (int my = 0; my < g.n; ++my)
                omega[std::size_t(mx) * g.n + my] =
                    g.freq(mx) * g.freq(mx) + g.freq(my) * g.freq(my);
    }
    std::vector<cplx> step(g.size());
    for (std::size_t m = 0; m < step.size(); ++m) step[m] = std::polar(1.0, -F.dt * omega[m]);

    std::vector<cplx> acc(g.size(), cplx(0)), fhat;
    for (std::size_t k = 0; k + 1 < F.frames.size(); ++k) {
        fhat = F.frames[k];
        fft_field(fhat, g, false);
        for (std::size_t m = 0; m < acc.size(); ++m) acc[m] = (acc[m] + F.dt * fhat[m]) * step[m];
        std::vector<cplx> frame = acc;
        fft_field(frame, g, true);
        v.frames[k + 1] = std::move(frame);
    }
    return v;
}

// continuum solution for a forcing constant in time on [0, t], for checking
// the quadrature order of the retarded sum
inline Field duhamel_static_exact(const Field& F0, double t) {
    const SpatialGrid& g = F0.grid;
    Field out = F0;
    fft_field(out.values, g, false);
    auto apply = [&](std::size_t idx, double w) {
        if (w == 0) {
            out.values[idx] *= t;
        } else {
            out.values[idx] *= (std::polar(1.0, -t * w) - cplx(1)) / cplx(0, -w);
        }
    };
    if (g.dim == 1) {
        for (int m = 0; m < g.n; ++m) apply(m, g.freq(m) * g.freq(m));
    } else {
        for (int mx = 0; mx < g.n; ++mx)
            for (int my = 0; my < g.n; ++my)
                apply(std::size_t(mx) * g.n + my,
                      g.freq(mx) * g.freq(mx) + g.freq(my) * g.freq(my));
    }
    fft_field(out.values, g, true);
    return out;
}

// retarded integral off the frame grid: midpoint sum over source frames,
// evaluated with the free-space kernel on an arbitrary output grid
inline SpaceTimeField duhamel_eval_kernel(const SpaceTimeField& F,
                                          const std::vector<double>& out_times,
                                          const SpatialGrid& out_grid) {
    if (out_grid.dim != F.grid.dim) throw std::invalid_argument("output dimension mismatch");
    SpaceTimeField v(out_grid, out_times.empty() ? 0.0 : out_times.front(),
                     out_times.size() > 1 ? out_times[1] - out_times[0] : 0.0, out_times.size());
    std::vector<SourceList> sources(F.frames.size());
    for (std::size_t j = 0; j < F.frames.size(); ++j)
        sources[j] = nonzero_sources(Field(F.grid, F.frames[j]));
    for (std::size_t k = 0; k < out_times.size(); ++k) {
        for (std::size_t j = 0; j < F.frames.size(); ++j) {
            double tau = out_times[k] - F.time(j);
            if (tau <= 0) continue;
            detail::kernel_accumulate(v.frames[k], out_grid, sources[j], F.grid.dim, tau,
                                      F.grid.cell(), cplx(F.dt));
        }
    }
    return v;
}

// largest time the periodic spectral flow resolves before the fastest mode
// wraps back into the box
inline double torus_horizon(const SpatialGrid& g) { return g.length * g.spacing() / (4 * pi); }

struct DispersionReport {
    std::vector<double> widths;
    std::vector<double> slopes;  // fitted decay of sup|u(t)| per width
    double mean_slope = 0;
    double constant = 0;  // max of sup|u(t)| t^(dim/2)
};

// decay of the sup norm for a battery of L1-normalized Gaussian bumps
inline DispersionReport dispersive_constant(int dim, std::vector<double> times,
                                            Backend backend = Backend::Spectral) {
    SpatialGrid g = dim == 1 ? SpatialGrid(1, 4096, 2048.0) : SpatialGrid(2, 2048, 1024.0);
    std::vector<double> widths = dim == 1 ? std::vector<double>{1.0, 2.0}
                                          : std::vector<double>{1.5, 2.0};
    if (times.empty()) times = dim == 1 ? std::vector<double>{16, 32, 64}
                                        : std::vector<double>{8, 16, 32};
    if (backend == Backend::Spectral) {
        double horizon = torus_horizon(g);
        for (double t : times)
            if (!(t > 0) || t > horizon)
                throw std::invalid_argument("time beyond the wrap horizon of the grid");
    }

    DispersionReport rep;
    rep.widths = widths;
    for (double w : widths) {
        Field u0(g);
        double mass = 0;
        if (dim == 1) {
            for (int i = 0; i < g.n; ++i) {
                double x = g.coord(i);
                u0.values[i] = std::exp(-x * x / (2 * w * w));
            }
        } else {
            for (int ix = 0; ix < g.n; ++ix)
                for (int iy = 0; iy < g.n; ++iy) {
                    double x = g.coord(ix), y = g.coord(iy);
                    u0.values[std::size_t(ix) * g.n + iy] =
                        std::exp(-(x * x + y * y) / (2 * w * w));
                }
        }
        for (const cplx& v : u0.values) mass += std::abs(v);
        mass *= g.cell();
        for (cplx& v : u0.values) v /= mass;

        std::vector<double> sups;
        for (double t : times) {
            Field u = propagate(u0, t, backend);
            double sup = 0;
            for (const cplx& v : u.values) sup = std::max(sup, std::abs(v));
            sups.push_back(sup);
            rep.constant = std::max(rep.constant, sup * std::pow(t, 0.5 * dim));
        }
        rep.slopes.push_back(fit_loglog(times, sups).slope);
    }
    for (double s : rep.slopes) rep.mean_slope += s;
    rep.mean_slope /= static_cast<double>(rep.slopes.size());
    return rep;
}

}  // namespace strichartz
