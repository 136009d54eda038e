#pragma once

#include "strichartz/rational.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

// Whitney decomposition of the region above the diagonal in the (s,t) plane
// into dyadic squares whose side is comparable to their distance from the
// diagonal. Geometry is exact; only the norm inequalities use doubles.

namespace strichartz {

inline long long floor_div2(long long v) { return v >= 0 ? v / 2 : (v - 1) / 2; }

// side 2^k, s in [i 2^k, (i+1) 2^k), t in [j 2^k, (j+1) 2^k)
struct DyadicSquare {
    int k = 0;
    long long i = 0, j = 0;

    Rat side() const { return pow2_rat(k); }
    Rat s_lo() const { return Rat(i) * side(); }
    Rat s_hi() const { return Rat(i + 1) * side(); }
    Rat t_lo() const { return Rat(j) * side(); }
    Rat t_hi() const { return Rat(j + 1) * side(); }

    bool contains(const Rat& s, const Rat& t) const {
        return s_lo() <= s && s < s_hi() && t_lo() <= t && t < t_hi();
    }
    // gap between the closed s- and t-intervals
    Rat separation() const { return Rat(j - i - 1) * side(); }

    friend bool operator==(const DyadicSquare&, const DyadicSquare&) = default;
    friend auto operator<=>(const DyadicSquare&, const DyadicSquare&) = default;
};

// a square enters the decomposition iff it is at least its own side above the
// diagonal while its parent square is not
inline bool select(int k, long long i, long long j) {
    (void)k;  // the predicate is scale invariant
    return j - i >= 2 && floor_div2(j) - floor_div2(i) <= 1;
}

// admissible t-indices pairing with a given s-index at one scale
inline std::vector<long long> partners(int k, long long i) {
    std::vector<long long> out;
    for (long long j = i + 2; j <= i + 3; ++j)
        if (select(k, i, j)) out.push_back(j);
    return out;
}

// half-open interval [lo, hi); the decomposition domain is its square
struct Window {
    Rat lo, hi;
    Window(Rat lo_, Rat hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
        if (!(lo < hi)) throw std::invalid_argument("window must have positive length");
    }
};

// all selected squares with side in [2^k_min, 2^k_max] meeting w x w,
// ordered by scale, then i, then j
inline std::vector<DyadicSquare> decompose(const Window& w, int k_min, int k_max) {
    if (k_min > k_max) throw std::invalid_argument("empty scale range");
    std::vector<DyadicSquare> out;
    for (int k = k_min; k <= k_max; ++k) {
        Rat lambda = pow2_rat(k);
        long long i0 = rat_floor(w.lo / lambda);
        for (long long i = i0; Rat(i) * lambda < w.hi; ++i) {
            for (long long j : partners(k, i)) {
                if (Rat(j + 1) * lambda <= w.lo || Rat(j) * lambda >= w.hi) continue;
                out.push_back({k, i, j});
            }
        }
    }
    return out;
}

inline double lp_norm(const std::vector<double>& a, const Rat& recip) {
    if (recip == 0) {
        double m = 0;
        for (double v : a) m = std::max(m, std::abs(v));
        return m;
    }
    double p = 1.0 / to_double(recip), sum = 0;
    for (double v : a) sum += std::pow(std::abs(v), p);
    return std::pow(sum, to_double(recip));
}

struct SumInequality {
    double lhs = 0, rhs = 0;
    double constant = 2;  // two partners per index
    bool hypothesis = false;
    bool holds = false;
};

// pairing of per-interval norms across the decomposition at one scale:
//   sum over selected (i,j) of f[i] g[j]  vs  |f|_{l^pt} |g|_{l^p}
// The sum has at most two terms per i, so the bound carries constant 2 and
// needs 1/p + 1/pt >= 1.
inline SumInequality sum_inequality(const std::map<long long, double>& f_norms,
                                    const std::map<long long, double>& g_norms, int k,
                                    const Rat& p_recip, const Rat& pt_recip) {
    SumInequality r;
    r.hypothesis = p_recip + pt_recip >= 1;
    for (const auto& [i, fv] : f_norms)
        for (long long j : partners(k, i)) {
            auto it = g_norms.find(j);
            if (it != g_norms.end()) r.lhs += fv * it->second;
        }
    std::vector<double> fs, gs;
    for (const auto& [i, v] : f_norms) fs.push_back(v);
    for (const auto& [j, v] : g_norms) gs.push_back(v);
    r.rhs = lp_norm(fs, pt_recip) * lp_norm(gs, p_recip);
    r.holds = r.lhs <= r.constant * r.rhs * (1 + 1e-12);
    return r;
}

struct PairInequality {
    double lhs = 0, rhs = 0;
    bool hypothesis = false;
    bool holds = false;
};

// termwise pairing with constant one:
//   sum_n A_n B_n <= |A|_{l^p} |B|_{l^pt}  whenever 1/p + 1/pt >= 1
inline PairInequality pair_inequality(const std::vector<double>& A, const std::vector<double>& B,
                                      const Rat& p_recip, const Rat& pt_recip) {
    PairInequality r;
    r.hypothesis = p_recip + pt_recip >= 1;
    size_t n = std::min(A.size(), B.size());
    for (size_t m = 0; m < n; ++m) r.lhs += std::abs(A[m]) * std::abs(B[m]);
    r.rhs = lp_norm(A, p_recip) * lp_norm(B, pt_recip);
    r.holds = r.lhs <= r.rhs * (1 + 1e-12);
    return r;
}

}  // namespace strichartz
