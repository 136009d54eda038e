#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

// Radix-2 FFT, enough for power-of-two grids with no external dependency.
// Twiddles come straight from std::polar per index, so rounding does not
// accumulate along the butterfly levels.

namespace strichartz {

using cplx = std::complex<double>;

inline bool is_pow2(long long v) { return v > 0 && (v & (v - 1)) == 0; }

namespace detail {

// roots exp(-i pi j / half) for j < half, cached per size
inline const std::vector<cplx>& twiddles(std::size_t half) {
    static std::map<std::size_t, std::vector<cplx>> cache;
    auto it = cache.find(half);
    if (it != cache.end()) return it->second;
    std::vector<cplx> tw(half);
    const double pi = 3.141592653589793238462643383279502884;
    for (std::size_t j = 0; j < half; ++j)
        tw[j] = std::polar(1.0, -pi * static_cast<double>(j) / static_cast<double>(half));
    return cache.emplace(half, std::move(tw)).first->second;
}

}  // namespace detail

// in place, forward = exp(-i x xi) weights; inverse applies 1/n
inline void fft_inplace(cplx* a, std::size_t n, bool inverse) {
    if (!is_pow2(static_cast<long long>(n)))
        throw std::invalid_argument("fft length must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::size_t half = len >> 1;
        const auto& tw = detail::twiddles(half);
        for (std::size_t base = 0; base < n; base += len)
            for (std::size_t j = 0; j < half; ++j) {
                cplx w = inverse ? std::conj(tw[j]) : tw[j];
                cplx u = a[base + j], v = a[base + j + half] * w;
                a[base + j] = u + v;
                a[base + j + half] = u - v;
            }
    }
    if (inverse) {
        double s = 1.0 / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) a[i] *= s;
    }
}

inline void fft_inplace(std::vector<cplx>& a, bool inverse) {
    fft_inplace(a.data(), a.size(), inverse);
}

// row-major rows x cols, transformed along both axes
inline void fft_2d_inplace(std::vector<cplx>& a, std::size_t rows, std::size_t cols,
                           bool inverse) {
    if (a.size() != rows * cols) throw std::invalid_argument("fft_2d size mismatch");
    for (std::size_t r = 0; r < rows; ++r) fft_inplace(a.data() + r * cols, cols, inverse);
    std::vector<cplx> col(rows);
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < rows; ++r) col[r] = a[r * cols + c];
        fft_inplace(col.data(), rows, inverse);
        for (std::size_t r = 0; r < rows; ++r) a[r * cols + c] = col[r];
    }
}

}  // namespace strichartz
