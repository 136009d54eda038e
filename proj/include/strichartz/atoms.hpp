#pragma once

#include "strichartz/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

// Decomposition of a sampled function into scaled indicator-like atoms: the
// samples are ranked by magnitude, cut into dyadic bands by cumulative
// measure, and each band is normalized so the atom at scale lambda has
// support measure at most lambda and sup at most lambda^(-1/p).

namespace strichartz {

// piecewise-constant function: values on cells of equal measure
struct SampledFunction {
    std::vector<double> values;
    Rat weight{1};  // measure of one cell

    SampledFunction(std::vector<double> v, Rat w) : values(std::move(v)), weight(std::move(w)) {
        if (weight <= 0) throw std::invalid_argument("cell weight must be positive");
    }
};

inline double lp_norm(const SampledFunction& f, const Rat& p_recip) {
    double w = to_double(f.weight);
    if (p_recip == 0) {
        double m = 0;
        for (double v : f.values) m = std::max(m, std::abs(v));
        return m;
    }
    double p = 1.0 / to_double(p_recip), sum = 0;
    for (double v : f.values) sum += std::pow(std::abs(v), p) * w;
    return std::pow(sum, to_double(p_recip));
}

struct Atom {
    int k = 0;        // scale lambda = 2^k
    Rat p_recip{1};   // normalization exponent the atom was built for
    Rat weight{1};    // cell measure inherited from the function
    std::map<std::size_t, double> values;

    Rat scale() const { return pow2_rat(k); }
    Rat support_measure() const { return Rat(static_cast<long long>(values.size())) * weight; }
    double sup() const {
        double m = 0;
        for (const auto& [idx, v] : values) m = std::max(m, std::abs(v));
        return m;
    }
};

struct AtomicDecomposition {
    Rat p_recip{1};
    std::vector<Atom> atoms;
    std::vector<double> coefficients;  // parallel to atoms
};

inline AtomicDecomposition atomic_decompose(const SampledFunction& f, const Rat& p_recip) {
    if (!(p_recip > 0 && p_recip <= 1))
        throw std::invalid_argument("1/p must lie in (0, 1]");
    AtomicDecomposition out;
    out.p_recip = p_recip;

    std::vector<std::size_t> order;
    for (std::size_t n = 0; n < f.values.size(); ++n)
        if (f.values[n] != 0.0) order.push_back(n);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        double ma = std::abs(f.values[a]), mb = std::abs(f.values[b]);
        return ma != mb ? ma > mb : a < b;
    });

    // rank m joins the band whose scale covers cumulative measure (m+1) w
    std::size_t m = 0;
    while (m < order.size()) {
        int k = ceil_log2_rat(Rat(static_cast<long long>(m) + 1) * f.weight);
        std::size_t end = m;
        while (end < order.size() &&
               ceil_log2_rat(Rat(static_cast<long long>(end) + 1) * f.weight) == k)
            ++end;
        double peak = std::abs(f.values[order[m]]);
        double coeff = std::pow(2.0, to_double(p_recip) * k) * peak;
        Atom atom;
        atom.k = k;
        atom.p_recip = p_recip;
        atom.weight = f.weight;
        for (std::size_t r = m; r < end; ++r)
            atom.values[order[r]] = f.values[order[r]] / coeff;
        out.atoms.push_back(std::move(atom));
        out.coefficients.push_back(coeff);
        m = end;
    }
    return out;
}

inline std::vector<double> reconstruct(const AtomicDecomposition& d, std::size_t size) {
    std::vector<double> out(size, 0.0);
    for (std::size_t a = 0; a < d.atoms.size(); ++a)
        for (const auto& [idx, v] : d.atoms[a].values) out[idx] += d.coefficients[a] * v;
    return out;
}

struct NormBound {
    double norm = 0, bound = 0;
    bool holds = false;
};

// |atom|_q <= lambda^(1/q - 1/p), any q, constant one
inline NormBound atom_norm_bound(const Atom& atom, const Rat& q_recip) {
    NormBound r;
    if (q_recip == 0) {
        r.norm = atom.sup();
    } else {
        double q = 1.0 / to_double(q_recip), sum = 0;
        for (const auto& [idx, v] : atom.values)
            sum += std::pow(std::abs(v), q) * to_double(atom.weight);
        r.norm = std::pow(sum, to_double(q_recip));
    }
    r.bound = std::pow(2.0, to_double(q_recip - atom.p_recip) * atom.k);
    r.holds = r.norm <= r.bound * (1 + 1e-12);
    return r;
}

// max(l, 1/l), the symmetric distortion of a positive ratio
inline Rat bracket(const Rat& l) {
    if (l <= 0) throw std::domain_error("bracket needs a positive ratio");
    return std::max(l, Rat(1) / l);
}

// sum over |k| <= k_max of (1 + |k| log 2) 2^(-eps |k|)
inline double c_lambda_tail(double eps, int k_max) {
    if (!(eps > 0) || k_max < 0) throw std::domain_error("need eps > 0 and k_max >= 0");
    double total = 1.0;
    for (int k = 1; k <= k_max; ++k)
        total += 2.0 * (1.0 + k * std::log(2.0)) * std::pow(2.0, -eps * k);
    return total;
}

struct YoungInequality {
    double lhs = 0, rhs = 0;
    bool hypothesis = false;
    bool holds = false;
};

// sum_{n,k} A_n B_k C_{n-k} <= |A|_p |B|_q |C|_r when 1/p + 1/q + 1/r >= 2;
// C is indexed from zero and vanishes outside its range
inline YoungInequality young_sequences(const std::vector<double>& A, const std::vector<double>& B,
                                       const std::vector<double>& C, const Rat& p_recip,
                                       const Rat& q_recip, const Rat& r_recip) {
    YoungInequality y;
    y.hypothesis = p_recip + q_recip + r_recip >= 2;
    for (std::size_t n = 0; n < A.size(); ++n)
        for (std::size_t k = 0; k < B.size(); ++k) {
            if (k > n || n - k >= C.size()) continue;
            y.lhs += std::abs(A[n]) * std::abs(B[k]) * std::abs(C[n - k]);
        }
    auto norm = [](const std::vector<double>& v, const Rat& recip) {
        if (recip == 0) {
            double m = 0;
            for (double x : v) m = std::max(m, std::abs(x));
            return m;
        }
        double p = 1.0 / to_double(recip), sum = 0;
        for (double x : v) sum += std::pow(std::abs(x), p);
        return std::pow(sum, to_double(recip));
    };
    y.rhs = norm(A, p_recip) * norm(B, q_recip) * norm(C, r_recip);
    y.holds = y.lhs <= y.rhs * (1 + 1e-12);
    return y;
}

}  // namespace strichartz
