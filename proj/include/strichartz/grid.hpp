#pragma once

#include "strichartz/fft.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

// Uniform periodic grids on a centered box, one or two dimensional, with the
// sampling and frequency conventions every numerical module shares.

namespace strichartz {

constexpr double pi = 3.141592653589793238462643383279502884;

struct SpatialGrid {
    int dim;        // spatial dimension, 1 or 2
    int n;          // samples per axis, power of two
    double length;  // box side; the box is [-length/2, length/2)

    SpatialGrid(int dim_, int n_, double length_) : dim(dim_), n(n_), length(length_) {
        if (dim != 1 && dim != 2) throw std::invalid_argument("grid dimension must be 1 or 2");
        if (n < 8 || !is_pow2(n)) throw std::invalid_argument("grid needs a power of two >= 8");
        if (!(length > 0)) throw std::invalid_argument("grid length must be positive");
    }

    double spacing() const { return length / n; }
    // cell centers, so no sample sits on the periodic seam
    double coord(int i) const { return -length / 2 + (i + 0.5) * spacing(); }
    // standard wrapped frequency layout
    double freq(int m) const {
        int mm = m < n / 2 ? m : m - n;
        return 2 * pi * mm / length;
    }
    std::size_t size() const { return dim == 1 ? std::size_t(n) : std::size_t(n) * n; }
    double cell() const { return dim == 1 ? spacing() : spacing() * spacing(); }

    friend bool operator==(const SpatialGrid&, const SpatialGrid&) = default;
};

// complex samples over a grid; row-major (ix * n + iy) in two dimensions
struct Field {
    SpatialGrid grid;
    std::vector<cplx> values;

    explicit Field(const SpatialGrid& g) : grid(g), values(g.size(), cplx(0)) {}
    Field(const SpatialGrid& g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.size()) throw std::invalid_argument("field size mismatch");
    }
};

// frames sampled at t0 + k dt
struct SpaceTimeField {
    SpatialGrid grid;
    double t0 = 0, dt = 0;
    std::vector<std::vector<cplx>> frames;

    SpaceTimeField(const SpatialGrid& g, double t0_, double dt_, std::size_t nframes)
        : grid(g), t0(t0_), dt(dt_), frames(nframes, std::vector<cplx>(g.size(), cplx(0))) {}

    double time(std::size_t k) const { return t0 + static_cast<double>(k) * dt; }
};

inline void fft_field(std::vector<cplx>& values, const SpatialGrid& g, bool inverse) {
    if (g.dim == 1)
        fft_inplace(values, inverse);
    else
        fft_2d_inplace(values, g.n, g.n, inverse);
}

inline double l2_norm(const Field& f) {
    double sum = 0;
    for (const cplx& v : f.values) sum += std::norm(v);
    return std::sqrt(sum * f.grid.cell());
}

inline cplx l2_inner(const Field& a, const Field& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("inner product across grids");
    cplx sum = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i) sum += std::conj(a.values[i]) * b.values[i];
    return sum * a.grid.cell();
}

}  // namespace strichartz
