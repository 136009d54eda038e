// End-to-end acceptance gate. Each criterion prints one line and the exit
// code is the number of failures, so CI output stays readable even when the
// numerics drift.
#include <strichartz/atoms.hpp>
#include <strichartz/estimator.hpp>

#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace strichartz;

namespace {

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int n, const char* name, bool pass, const std::string& details, double secs) {
    std::printf("criterion %d %s: %s (%s; %.1fs)\n", n, name, pass ? "PASS" : "FAIL",
                details.c_str(), secs);
    if (!pass) ++failures;
}

std::vector<Rat> twelfths() {
    std::vector<Rat> v;
    for (int a = 0; a <= 12; ++a) v.push_back(Rat(a, 12));
    return v;
}

// membership of every reciprocal quadruple on the denominator-12 grid,
// checked one sigma at a time
template <typename F>
void for_each_quad(F&& fn) {
    auto grid = twelfths();
    for (const Rat& q : grid)
        for (const Rat& r : grid)
            for (const Rat& qt : grid)
                for (const Rat& rt : grid) fn(Quad{Pair{q, r}, Pair{qt, rt}});
}

void criterion_oracle_equivalence() {
    auto t0 = std::chrono::steady_clock::now();
    const Rat sigmas[] = {Rat(1, 2), Rat(1), Rat(3, 2), Rat(2), Rat(5, 2)};
    long long checked = 0, disagreements = 0;
    for (const Rat& s : sigmas) {
        Sigma sigma(s);
        for_each_quad([&](const Quad& X) {
            ++checked;
            if (satisfies_local(X, sigma).member != local_region_oracle(X, sigma))
                ++disagreements;
        });
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%lld checks, %lld disagreements", checked, disagreements);
    report(1, "region-oracle-equivalence", disagreements == 0, buf, seconds_since(t0));
}

void criterion_region_inclusions() {
    auto t0 = std::chrono::steady_clock::now();
    long long sharp_checked = 0, sharp_violations = 0;
    long long global_checked = 0, global_violations = 0;
    for (int n = 1; n <= 4; ++n) {
        Sigma sigma(Rat(n, 2));
        for_each_quad([&](const Quad& X) {
            if (is_sharp_admissible(X.qr, sigma) && is_sharp_admissible(X.qtrt, sigma)) {
                ++sharp_checked;
                if (!satisfies_local(X, sigma).member) ++sharp_violations;
            }
            if (satisfies_global(X, sigma).member) {
                ++global_checked;
                if (!schrodinger_global_necessary(X, n).member) ++global_violations;
            }
        });
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "sharp-pair in local: %lld/%lld ok, global in necessary: %lld/%lld ok",
                  sharp_checked - sharp_violations, sharp_checked,
                  global_checked - global_violations, global_checked);
    report(2, "region-inclusions", sharp_violations == 0 && global_violations == 0, buf,
           seconds_since(t0));
}

void criterion_energy_conservation() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0;
    const SpatialGrid grids[] = {SpatialGrid(1, 256, 32.0), SpatialGrid(2, 64, 16.0)};
    for (const SpatialGrid& g : grids)
        for (int it = 0; it < 50; ++it) {
            Field f(g, std::vector<cplx>(g.size()));
            for (auto& v : f.values) v = cplx(u(rng), u(rng));
            double base = l2_norm(f);
            for (double t : {0.37, 1.61}) {
                double after = l2_norm(propagate_spectral(f, t));
                worst = std::max(worst, std::abs(after / base - 1.0));
            }
        }
    char buf[96];
    std::snprintf(buf, sizeof buf, "100 fields, worst relative drift %.2e", worst);
    report(3, "energy-conservation", worst <= 1e-10, buf, seconds_since(t0));
}

void criterion_dispersive_decay() {
    auto t0 = std::chrono::steady_clock::now();
    DispersionReport one = dispersive_constant(1, {});
    DispersionReport two = dispersive_constant(2, {});
    bool ok1 = std::abs(one.mean_slope + 0.5) <= 0.03;
    bool ok2 = std::abs(two.mean_slope + 1.0) <= 0.05;
    char buf[128];
    std::snprintf(buf, sizeof buf, "mean slopes %.4f (want -0.5), %.4f (want -1.0)",
                  one.mean_slope, two.mean_slope);
    report(4, "dispersive-decay", ok1 && ok2, buf, seconds_since(t0));
}

void criterion_whitney_partition() {
    auto t0 = std::chrono::steady_clock::now();

    // exact cover count on a half-offset raster of the index plane
    Window w(Rat(0), Rat(8));
    const int kmin = -4, kmax = 3;
    auto squares = decompose(w, kmin, kmax);
    bool invariants = true;
    for (std::size_t i = 0; i < squares.size(); ++i) {
        const auto& q = squares[i];
        if (!select(q.k, q.i, q.j)) invariants = false;
        Rat ratio = q.separation() / q.side();
        if (ratio != Rat(1) && ratio != Rat(2)) invariants = false;
        if (i > 0 && !(squares[i - 1] < q)) invariants = false;
    }
    Rat step = pow2_rat(kmin);
    long long count = rat_floor((w.hi - w.lo) / step);
    std::vector<std::vector<int>> cover(count, std::vector<int>(count, 0));
    for (const auto& q : squares) {
        auto first_index = [&](const Rat& edge) {
            return std::max(rat_ceil((edge - w.lo) / step - Rat(1, 2)), 0LL);
        };
        auto last_index = [&](const Rat& edge) {
            return std::min(rat_ceil((edge - w.lo) / step - Rat(1, 2)), count);
        };
        for (long long ms = first_index(q.s_lo()); ms < last_index(q.s_hi()); ++ms)
            for (long long mt = first_index(q.t_lo()); mt < last_index(q.t_hi()); ++mt)
                ++cover[ms][mt];
    }
    long long uncovered = 0, multiple = 0, resolvable = 0;
    Rat gap_needed = Rat(4) * step;
    for (long long ms = 0; ms < count; ++ms)
        for (long long mt = ms + 1; mt < count; ++mt) {
            Rat s = w.lo + (Rat(2 * ms + 1) / 2) * step;
            Rat t = w.lo + (Rat(2 * mt + 1) / 2) * step;
            if (cover[ms][mt] > 1) ++multiple;
            if (t - s >= gap_needed) {
                ++resolvable;
                if (cover[ms][mt] == 0) ++uncovered;
            }
        }

    // the regrouped pair sum must reproduce the direct sum on random data
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0;
    long long bad_instances = 0;
    for (int it = 0; it < 20; ++it) {
        SpatialGrid g(1, 8, 4.0);
        SpaceTimeField F(g, 0, 0.125, 32), G(g, 0, 0.125, 32);
        for (auto& fr : F.frames)
            for (auto& v : fr) v = cplx(u(rng), u(rng));
        for (auto& fr : G.frames)
            for (auto& v : fr) v = cplx(u(rng), u(rng));
        WhitneySumCheck chk = whitney_sum_check(F, G);
        double err = std::abs(chk.direct - chk.decomposed);
        worst = std::max(worst, err);
        if (err > 1e-10 || chk.uncovered != 0 || chk.multiplicity_violations != 0)
            ++bad_instances;
    }

    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "%zu squares, %lld resolvable points, %lld uncovered, %lld multiple; "
                  "regroup worst %.2e, %lld bad instances",
                  squares.size(), resolvable, uncovered, multiple, worst, bad_instances);
    report(5, "whitney-partition",
           invariants && uncovered == 0 && multiple == 0 && bad_instances == 0, buf,
           seconds_since(t0));
}

void criterion_atomic_decomposition() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_int_distribution<int> len(1, 80), wsel(0, 3);
    const Rat weights[] = {Rat(1), Rat(1, 4), Rat(3, 8), Rat(2)};
    const Rat precips[] = {Rat(1), Rat(3, 4), Rat(1, 2), Rat(1, 4)};
    long long violations = 0, decomposed = 0;
    for (int it = 0; it < 200; ++it) {
        std::vector<double> vals(len(rng));
        for (auto& v : vals) v = u(rng) < 0 ? 0.0 : u(rng);
        SampledFunction f(vals, weights[wsel(rng)]);
        for (const Rat& p : precips) {
            ++decomposed;
            auto d = atomic_decompose(f, p);
            auto back = reconstruct(d, vals.size());
            for (std::size_t i = 0; i < vals.size(); ++i)
                if (std::abs(back[i] - vals[i]) > 1e-12) ++violations;
            std::set<std::size_t> seen;
            for (std::size_t a = 0; a < d.atoms.size(); ++a) {
                const Atom& atom = d.atoms[a];
                if (atom.support_measure() > atom.scale()) ++violations;
                double cap = std::pow(2.0, -to_double(p) * atom.k);
                if (atom.sup() > cap * (1 + 1e-12)) ++violations;
                if (!(d.coefficients[a] > 0.0)) ++violations;
                for (const auto& [idx, v] : atom.values) {
                    if (seen.count(idx)) ++violations;
                    seen.insert(idx);
                }
                for (const Rat& q : {Rat(0), Rat(1, 3), p, Rat(1)})
                    if (!atom_norm_bound(atom, q).holds) ++violations;
            }
            double fn = lp_norm(f, p);
            if (fn > 0) {
                double pp = 1.0 / to_double(p), csum = 0;
                for (double c : d.coefficients) csum += std::pow(c, pp);
                double cn = std::pow(csum, to_double(p));
                if (fn / cn < 0.25 * (1 - 1e-12) || fn / cn > 4.0 * (1 + 1e-12)) ++violations;
            }
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%lld decompositions, %lld violations", decomposed,
                  violations);
    report(6, "atomic-decomposition", violations == 0, buf, seconds_since(t0));
}

void criterion_sequence_inequalities() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 2.0), pr(0.05, 1.0);
    std::uniform_int_distribution<int> nsel(4, 64), ksel(-3, 3);

    long long pair_failures = 0;
    for (int it = 0; it < 1000; ++it) {
        int k = ksel(rng);
        std::map<long long, double> fn, gn;
        int n = nsel(rng);
        for (long long i = 0; i < n; ++i) {
            fn[i] = u(rng);
            gn[i] = u(rng);
        }
        double a = pr(rng);
        double b_lo = std::max(0.05, 1.0 - a);
        std::uniform_real_distribution<double> pb(b_lo, 1.0);
        Rat p(std::llround(a * 1000), 1000), pt(std::llround(pb(rng) * 1000), 1000);
        if (p + pt < 1) pt = Rat(1) - p + Rat(1, 1000);
        auto r = sum_inequality(fn, gn, k, p, pt);
        if (!r.hypothesis || !r.holds) ++pair_failures;
    }
    std::map<long long, double> ones_f, ones_g;
    for (long long i = 0; i < 4096; ++i) ones_f[i] = ones_g[i] = 1.0;
    auto escaped = sum_inequality(ones_f, ones_g, 0, Rat(1, 4), Rat(1, 4));
    bool pair_escape = !escaped.hypothesis && !escaped.holds;

    long long young_failures = 0;
    for (int it = 0; it < 1000; ++it) {
        std::vector<double> A(nsel(rng)), B(nsel(rng)), C(nsel(rng));
        for (auto& x : A) x = u(rng);
        for (auto& x : B) x = u(rng);
        for (auto& x : C) x = u(rng);
        // draw reciprocals summing to at least two
        long long pa = 200 + rng() % 801, pb2 = 200 + rng() % 801;
        Rat p(pa, 1000), q(pb2, 1000), r = Rat(2) - p - q;
        if (r < Rat(1, 100)) r = Rat(1, 100);
        if (r > Rat(1)) r = Rat(1);
        if (p + q + r < 2) p = Rat(2) - q - r;
        auto y = young_sequences(A, B, C, p, q, r);
        if (!y.hypothesis || !y.holds) ++young_failures;
    }
    std::vector<double> ones(64, 1.0);
    auto yescaped = young_sequences(ones, ones, ones, Rat(1, 4), Rat(1, 4), Rat(1, 4));
    bool young_escape = !yescaped.hypothesis && !yescaped.holds;

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "pairing 1000 ok:%s escape:%s, convolution 1000 ok:%s escape:%s",
                  pair_failures == 0 ? "yes" : "no", pair_escape ? "yes" : "no",
                  young_failures == 0 ? "yes" : "no", young_escape ? "yes" : "no");
    report(7, "sequence-inequalities",
           pair_failures == 0 && pair_escape && young_failures == 0 && young_escape, buf,
           seconds_since(t0));
}

void criterion_scaling_sweeps() {
    auto t0 = std::chrono::steady_clock::now();
    struct Case {
        Family family;
        Quad quad;
        int dim;
    };
    const Case cases[] = {
        {Family::Flash, Quad{Pair{Rat(0), Rat(1, 2)}, Pair{Rat(0), Rat(0)}}, 1},
        {Family::Bump, Quad{Pair{Rat(0), Rat(0)}, Pair{Rat(0), Rat(0)}}, 1},
        {Family::Focusing, Quad{Pair{Rat(0), Rat(1, 2)}, Pair{Rat(0), Rat(0)}}, 2},
        {Family::Oscillatory, Quad{Pair{Rat(0), Rat(1, 2)}, Pair{Rat(0), Rat(0)}}, 1},
    };
    bool all_ok = true;
    std::string details;
    for (const Case& c : cases) {
        auto c0 = std::chrono::steady_clock::now();
        SweepConfig cfg;
        cfg.family = c.family;
        cfg.quad = c.quad;
        cfg.dim = c.dim;
        cfg.backend = Backend::Kernel;
        SweepReport rep = run_sweep(cfg);
        double secs = seconds_since(c0);
        bool ok = rep.verdict && secs < 300.0;
        all_ok = all_ok && ok;
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s%s %.3f vs %.3f in %.0fs", details.empty() ? "" : ", ",
                      family_name(c.family), rep.fitted_slope, to_double(rep.predicted), secs);
        details += buf;
    }
    report(8, "scaling-sweeps", all_ok, details, seconds_since(t0));
}

void criterion_duhamel_duality() {
    auto t0 = std::chrono::steady_clock::now();

    SpatialGrid g(1, 256, 32.0);
    Field F0(g, std::vector<cplx>(g.size()));
    for (std::size_t i = 0; i < g.size(); ++i) {
        double x = g.coord(i);
        F0.values[i] = std::exp(-x * x / (2.0 * 2.0 * 2.0));
    }
    Field exact = duhamel_static_exact(F0, 1.0);
    auto error_at = [&](int steps) {
        SpaceTimeField F(g, 0.0, 1.0 / steps, std::size_t(steps) + 1);
        for (auto& frame : F.frames) frame = F0.values;
        SpaceTimeField v = duhamel_retarded(F);
        double err = 0;
        for (std::size_t i = 0; i < exact.values.size(); ++i)
            err += std::norm(v.frames[steps][i] - exact.values[i]);
        return std::sqrt(err * g.cell());
    };
    double ratio = error_at(16) / error_at(32);
    bool halving = ratio > 1.7 && ratio < 2.3;

    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SpatialGrid gd(1, 64, 16.0);
    SpaceTimeField F(gd, 0, 0.125, 24), G(gd, 0, 0.125, 24);
    for (auto& fr : F.frames)
        for (auto& v : fr) v = cplx(u(rng), u(rng));
    for (auto& fr : G.frames)
        for (auto& v : fr) v = cplx(u(rng), u(rng));
    cplx lhs = bilinear_form(F, G);
    SpaceTimeField v = duhamel_retarded(F);
    cplx rhs = 0;
    for (std::size_t k = 0; k < v.frames.size(); ++k)
        rhs += l2_inner(Field(gd, v.frames[k]), Field(gd, G.frames[k]));
    rhs *= F.dt;
    double derr = std::abs(lhs - rhs) / (1 + std::abs(rhs));
    bool duality = derr <= 1e-10;

    char buf[96];
    std::snprintf(buf, sizeof buf, "halving ratio %.3f, duality error %.2e", ratio, derr);
    report(9, "duhamel-duality", halving && duality, buf, seconds_since(t0));
}

}  // namespace

int main() {
    criterion_oracle_equivalence();
    criterion_region_inclusions();
    criterion_energy_conservation();
    criterion_dispersive_decay();
    criterion_whitney_partition();
    criterion_atomic_decomposition();
    criterion_sequence_inequalities();
    criterion_scaling_sweeps();
    criterion_duhamel_duality();
    return failures;
}
