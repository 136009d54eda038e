#pragma once

#include "strichartz/rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Exact membership tests for the exponent regions of space-time estimates.
// All quantities are reciprocals: a value x stands for 1/r, so r = 2 is 1/2
// and r = inf is 0. No floating point is used anywhere in this header.

namespace strichartz {

// reciprocal exponent 1/q; valid range [0,1], enforced at the type boundaries
using Recip = Rat;

inline bool valid_recip(const Rat& v) { return v >= 0 && v <= 1; }

// (1/q, 1/r)
struct Pair {
    Recip q, r;
    Pair(Recip q_, Recip r_) : q(std::move(q_)), r(std::move(r_)) {
        if (!valid_recip(q) || !valid_recip(r))
            throw std::domain_error("reciprocal exponent outside [0,1]");
    }
};

// (1/q, 1/r; 1/qt, 1/rt)
struct Quad {
    Pair qr, qtrt;
    Quad(Pair a, Pair b) : qr(std::move(a)), qtrt(std::move(b)) {}
    Quad swapped() const { return Quad(qtrt, qr); }
};

// decay rate of the dispersive bound; sigma = n/2 for the Schrodinger flow
struct Sigma {
    Rat v;
    explicit Sigma(Rat value) : v(std::move(value)) {
        if (v <= 0) throw std::domain_error("sigma must be positive");
    }
};

enum class Branch { NonSharp, Sharp, NotApplicable };

struct Verdict {
    bool member = false;
    std::vector<std::string> failed;  // stable condition tags
    Branch branch = Branch::NotApplicable;

    void require(bool ok, const char* tag) {
        if (!ok) failed.emplace_back(tag);
    }
    void seal() { member = failed.empty(); }
};

inline const char* branch_name(Branch b) {
    switch (b) {
        case Branch::NonSharp: return "non-sharp";
        case Branch::Sharp: return "sharp";
        default: return "not-applicable";
    }
}

// ---------------------------------------------------------------------------
// pair-level regions

inline Verdict sharp_admissible_verdict(const Pair& p, const Sigma& s) {
    Verdict v;
    v.require(p.q <= Rat(1, 2), "range-q");
    v.require(p.r <= Rat(1, 2), "range-r");
    v.require(p.q == s.v * (Rat(1, 2) - p.r), "scaling");
    v.require(!(p.q == Rat(1, 2) && p.r == 0 && s.v == 1), "excluded-(2,inf,1)");
    v.seal();
    return v;
}

inline bool is_sharp_admissible(const Pair& p, const Sigma& s) {
    return sharp_admissible_verdict(p, s).member;
}

inline Verdict acceptable_verdict(const Pair& p, const Sigma& s) {
    Verdict v;
    bool vertex = p.q == 0 && p.r == Rat(1, 2);
    v.require(p.q < 2 * s.v * (Rat(1, 2) - p.r) || vertex, "acceptable");
    v.seal();
    return v;
}

inline bool is_acceptable(const Pair& p, const Sigma& s) {
    return acceptable_verdict(p, s).member;
}

// scaling exponent; zero on the scale-invariant hyperplane
inline Rat beta(const Quad& x, const Sigma& s) {
    return x.qr.q + x.qtrt.q - s.v * (1 - x.qr.r - x.qtrt.r);
}

// ---------------------------------------------------------------------------
// quad-level regions

// region where the estimate holds for forcings and observations separated by
// a unit time gap
inline Verdict satisfies_local(const Quad& X, const Sigma& s) {
    const Rat &a = X.qr.q, &x = X.qr.r, &at = X.qtrt.q, &xt = X.qtrt.r;
    Verdict v;
    v.require(x <= Rat(1, 2), "range-r");
    v.require(xt <= Rat(1, 2), "range-rt");
    v.require((s.v - 1) * x <= s.v * xt, "ratio-r-rt");
    v.require((s.v - 1) * xt <= s.v * x, "ratio-rt-r");
    v.require(a >= s.v * (xt - x), "gap-q");
    v.require(at >= s.v * (x - xt), "gap-qt");
    if (s.v == 1) {
        // point deletion at sigma = 1: both space exponents must be finite
        v.require(x > 0, "finite-r");
        v.require(xt > 0, "finite-rt");
    }
    v.seal();
    return v;
}

// Independent implementation path for the same region: membership is the
// feasibility of an auxiliary interpolation weight theta in [0,1]. The
// construction brackets 1/theta between five lower and two upper bounds;
// rewriting each bound reciprocally (theta-side) keeps every quantity a
// finite rational, including the corner where all four exponents are inf.
inline bool local_region_oracle(const Quad& X, const Sigma& s) {
    const Rat &a = X.qr.q, &x = X.qr.r, &at = X.qtrt.q, &xt = X.qtrt.r;
    if (s.v == 1 && !(x > 0 && xt > 0)) return false;
    Rat lo = std::max({Rat(0), 2 * x, 2 * xt});
    Rat hi = std::min({Rat(1), 2 * a / s.v + 2 * x, 2 * at / s.v + 2 * xt});
    if (s.v > 1) {
        hi = std::min({hi, 2 * s.v * x / (s.v - 1), 2 * s.v * xt / (s.v - 1)});
    }
    return lo <= hi;
}

// region where the unwindowed estimate holds; scale invariance forces an
// exact equality plus branch conditions at sigma > 1
inline Verdict satisfies_global(const Quad& X, const Sigma& s) {
    const Rat &a = X.qr.q, &x = X.qr.r, &at = X.qtrt.q, &xt = X.qtrt.r;
    Verdict v;
    v.require(is_acceptable(X.qr, s), "acceptable-qr");
    v.require(is_acceptable(X.qtrt, s), "acceptable-qtrt");
    v.require(beta(X, s) == 0, "scaling");
    if (s.v == 1) {
        v.require(x > 0, "finite-r");
        v.require(xt > 0, "finite-rt");
    } else if (s.v > 1) {
        Rat sum = a + at;
        if (sum < 1) {
            v.branch = Branch::NonSharp;
            v.require((s.v - 1) * x <= s.v * xt, "ratio-r-rt");
            v.require((s.v - 1) * xt <= s.v * x, "ratio-rt-r");
        } else if (sum == 1) {
            v.branch = Branch::Sharp;
            v.require((s.v - 1) * x < s.v * xt, "ratio-strict-r-rt");
            v.require((s.v - 1) * xt < s.v * x, "ratio-strict-rt-r");
            v.require(x <= a, "sharp-q-le-r");
            v.require(xt <= at, "sharp-qt-le-rt");
        } else {
            v.require(false, "sum-q-qt");
        }
    }
    v.seal();
    return v;
}

// ---------------------------------------------------------------------------
// necessary conditions for the Schrodinger flow in dimension n (sigma = n/2)

inline Verdict schrodinger_local_necessary(const Quad& X, int n) {
    if (n < 1) throw std::domain_error("dimension must be >= 1");
    const Rat &a = X.qr.q, &x = X.qr.r, &at = X.qtrt.q, &xt = X.qtrt.r;
    Verdict v;
    v.require(x + xt <= 1, "sum-r-rt");
    v.require(abs(x - xt) <= Rat(1, n), "diff-r-rt");
    v.require((n - 2) * x - 2 * a <= n * xt, "slope-r");
    v.require((n - 2) * xt - 2 * at <= n * x, "slope-rt");
    v.require(a >= Rat(n, 2) * (xt - x), "gap-q");
    v.require(at >= Rat(n, 2) * (x - xt), "gap-qt");
    v.seal();
    return v;
}

inline Verdict schrodinger_global_necessary(const Quad& X, int n) {
    if (n < 1) throw std::domain_error("dimension must be >= 1");
    const Rat &a = X.qr.q, &x = X.qr.r, &at = X.qtrt.q, &xt = X.qtrt.r;
    Sigma s{Rat(n, 2)};
    Verdict v;
    v.require(is_acceptable(X.qr, s), "acceptable-qr");
    v.require(is_acceptable(X.qtrt, s), "acceptable-qtrt");
    v.require(beta(X, s) == 0, "scaling");
    v.require(a + at <= 1, "sum-q-qt");
    v.require(abs(x - xt) <= Rat(1, n), "diff-r-rt");
    v.require((n - 2) * x - 2 * a <= n * xt, "slope-r");
    v.require((n - 2) * xt - 2 * at <= n * x, "slope-rt");
    v.seal();
    return v;
}

// ---------------------------------------------------------------------------
// classifier for the (1/r, 1/rt) plane: either the pair is covered by the
// known sufficient conditions, falls in one of the four open regions, or is
// excluded by the necessary conditions

enum class GapClass { Covered, R1, R2, R3, R4, Excluded };

inline const char* gap_name(GapClass g) {
    switch (g) {
        case GapClass::Covered: return "Covered";
        case GapClass::R1: return "R1";
        case GapClass::R2: return "R2";
        case GapClass::R3: return "R3";
        case GapClass::R4: return "R4";
        default: return "Excluded";
    }
}

inline GapClass gap_region(const Recip& r, const Recip& rt, int n) {
    if (n < 1) throw std::domain_error("dimension must be >= 1");
    const Rat &x = r, &y = rt;
    bool covered = x <= Rat(1, 2) && y <= Rat(1, 2) &&
                   (n - 2) * x <= n * y && (n - 2) * y <= n * x;
    if (n == 2) covered = covered && x > 0 && y > 0;
    if (covered) return GapClass::Covered;
    if (x > Rat(1, 2) && x + y <= 1 && x - y <= Rat(1, n)) return GapClass::R1;
    if (y > Rat(1, 2) && x + y <= 1 && y - x <= Rat(1, n)) return GapClass::R2;
    if ((n - 2) * x > n * y && x - y <= Rat(1, n)) return GapClass::R3;
    if ((n - 2) * y > n * x && y - x <= Rat(1, n)) return GapClass::R4;
    return GapClass::Excluded;
}

// ---------------------------------------------------------------------------
// boundary export: every region here is a rational polytope, so the boundary
// is computed exactly by half-plane clipping and then densified so plots get
// `resolution` vertices per edge

struct BoundaryPoint {
    Rat x, y;
    bool operator==(const BoundaryPoint&) const = default;
};

// keep the side a*x + b*y <= c of a convex polygon
inline std::vector<BoundaryPoint> clip_halfplane(std::vector<BoundaryPoint> poly,
                                                 const Rat& a, const Rat& b, const Rat& c) {
    if (poly.empty()) return poly;
    auto val = [&](const BoundaryPoint& p) { return a * p.x + b * p.y - c; };
    std::vector<BoundaryPoint> out;
    for (size_t i = 0; i < poly.size(); ++i) {
        const BoundaryPoint& p = poly[i];
        const BoundaryPoint& q = poly[(i + 1) % poly.size()];
        Rat fp = val(p), fq = val(q);
        if (fp <= 0) out.push_back(p);
        if ((fp < 0 && fq > 0) || (fp > 0 && fq < 0)) {
            Rat t = fp / (fp - fq);
            out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
        }
    }
    std::vector<BoundaryPoint> ded;
    for (auto& p : out)
        if (ded.empty() || !(ded.back() == p)) ded.push_back(p);
    while (ded.size() > 1 && ded.front() == ded.back()) ded.pop_back();
    if (ded.size() < 3) ded.clear();  // degenerate region
    return ded;
}

inline std::vector<BoundaryPoint> densify_segment(const BoundaryPoint& a,
                                                  const BoundaryPoint& b, int resolution) {
    std::vector<BoundaryPoint> out;
    for (int s = 0; s <= resolution; ++s) {
        Rat t(s, resolution);
        out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
    return out;
}

inline std::vector<BoundaryPoint> densify_closed(const std::vector<BoundaryPoint>& poly,
                                                 int resolution) {
    std::vector<BoundaryPoint> out;
    if (poly.size() < 3) return out;
    for (size_t i = 0; i < poly.size(); ++i) {
        const BoundaryPoint& p = poly[i];
        const BoundaryPoint& q = poly[(i + 1) % poly.size()];
        for (int s = 0; s < resolution; ++s) {
            Rat t(s, resolution);
            out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
        }
    }
    out.push_back(out.front());
    return out;
}

// region tags: "sharp" and "acceptable" live in the (1/q, 1/r) plane and take
// sigma; "rrt" is the (1/r, 1/rt) polygon at a given sigma; "covered" and
// "r1".."r4" are the (1/r, 1/rt) pieces of the gap classifier and take n
inline std::vector<BoundaryPoint> export_region_boundary(std::string_view region,
                                                         const Rat& param, int resolution) {
    if (resolution < 2) throw std::invalid_argument("resolution must be >= 2");
    const Rat& s = param;
    auto box = [](Rat x0, Rat y0, Rat x1, Rat y1) {
        return std::vector<BoundaryPoint>{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
    };
    if (region == "sharp") {
        if (s <= 0) throw std::invalid_argument("sigma must be positive");
        BoundaryPoint from{Rat(0), Rat(1, 2)};
        BoundaryPoint to = s >= 1 ? BoundaryPoint{Rat(1, 2), (s - 1) / (2 * s)}
                                  : BoundaryPoint{s / 2, Rat(0)};
        return densify_segment(from, to, resolution);
    }
    if (region == "acceptable") {
        if (s <= 0) throw std::invalid_argument("sigma must be positive");
        auto poly = clip_halfplane(box(Rat(0), Rat(0), Rat(1), Rat(1)), Rat(1), 2 * s, s);
        return densify_closed(poly, resolution);
    }
    if (region == "rrt") {
        if (s <= 0) throw std::invalid_argument("sigma must be positive");
        auto poly = box(Rat(0), Rat(0), Rat(1, 2), Rat(1, 2));
        poly = clip_halfplane(poly, s - 1, -s, Rat(0));
        poly = clip_halfplane(poly, -s, s - 1, Rat(0));
        return densify_closed(poly, resolution);
    }
    if (s.denominator() != 1 || s < 1)
        throw std::invalid_argument("gap regions take an integer dimension");
    long long n = s.numerator();
    if (region == "covered") {
        auto poly = box(Rat(0), Rat(0), Rat(1, 2), Rat(1, 2));
        poly = clip_halfplane(poly, Rat(n - 2), Rat(-n), Rat(0));
        poly = clip_halfplane(poly, Rat(-n), Rat(n - 2), Rat(0));
        return densify_closed(poly, resolution);
    }
    if (region == "r1" || region == "r2") {
        auto poly = box(Rat(0), Rat(0), Rat(1), Rat(1));
        poly = clip_halfplane(poly, Rat(1), Rat(1), Rat(1));  // x + y <= 1
        if (region == "r1") {
            poly = clip_halfplane(poly, Rat(-1), Rat(0), Rat(-1, 2));  // x >= 1/2
            poly = clip_halfplane(poly, Rat(1), Rat(-1), Rat(1, n));   // x - y <= 1/n
        } else {
            poly = clip_halfplane(poly, Rat(0), Rat(-1), Rat(-1, 2));
            poly = clip_halfplane(poly, Rat(-1), Rat(1), Rat(1, n));
        }
        return densify_closed(poly, resolution);
    }
    if (region == "r3" || region == "r4") {
        auto poly = box(Rat(0), Rat(0), Rat(1), Rat(1));
        if (region == "r3") {
            poly = clip_halfplane(poly, Rat(-(n - 2)), Rat(n), Rat(0));  // (n-2)x >= n y
            poly = clip_halfplane(poly, Rat(1), Rat(-1), Rat(1, n));
        } else {
            poly = clip_halfplane(poly, Rat(n), Rat(-(n - 2)), Rat(0));
            poly = clip_halfplane(poly, Rat(-1), Rat(1), Rat(1, n));
        }
        return densify_closed(poly, resolution);
    }
    throw std::invalid_argument("unknown region tag: " + std::string(region));
}

}  // namespace strichartz
