#include "strichartz/atoms.hpp"
#include "strichartz/estimator.hpp"
#include "strichartz/exponents.hpp"
#include "strichartz/io.hpp"
#include "strichartz/whitney.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace strichartz;

namespace {

// bad flags and malformed values share one exit code, distinct from verdict
// failures (1) and resolution refusals (3)
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    return parts;
}

Rat want_rational(const std::string& text, const char* what) {
    auto v = parse_rational(text);
    if (!v) throw UsageError(std::string("could not parse ") + what + " '" + text + "'");
    return *v;
}

Pair want_pair(const std::string& text) {
    auto parts = split_commas(text);
    if (parts.size() != 2) throw UsageError("pair needs two comma-separated reciprocals");
    return Pair(want_rational(parts[0], "pair"), want_rational(parts[1], "pair"));
}

Quad want_quad(const std::string& text) {
    auto parts = split_commas(text);
    if (parts.size() != 4) throw UsageError("quad needs four comma-separated reciprocals");
    return Quad(Pair(want_rational(parts[0], "quad"), want_rational(parts[1], "quad")),
                Pair(want_rational(parts[2], "quad"), want_rational(parts[3], "quad")));
}

double want_number(const std::string& text, const char* what) {
    if (auto v = parse_rational(text)) return to_double(*v);
    char* end = nullptr;
    double d = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw UsageError(std::string("could not parse ") + what + " '" + text + "'");
    return d;
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty())
        std::cout << content;
    else
        write_text_file(out_path, content);
}

json rat_out(const Rat& x, bool exact) {
    if (exact) return rat_json(x);
    return json(format_rational(x));
}

// --config FILE supplies defaults: its entries are spliced in right after
// the command words, so explicitly typed flags win under take-last
std::vector<std::string> load_args(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config_path;
    for (std::size_t i = 0; i < args.size();) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw UsageError("--config needs a file path");
            config_path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
            args.erase(args.begin() + i);
        } else {
            ++i;
        }
    }
    if (config_path.empty()) return args;

    std::ifstream in(config_path);
    if (!in) throw UsageError("could not open config file " + config_path);
    json cfg;
    try {
        cfg = json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError(std::string("bad config file: ") + e.what());
    }
    if (!cfg.is_object()) throw UsageError("config must be a JSON object of flag values");

    std::vector<std::string> injected;
    for (const auto& [key, value] : cfg.items()) {
        std::string flag = "--" + key;
        if (value.is_boolean()) {
            if (value.get<bool>()) injected.push_back(flag);
        } else if (value.is_array()) {
            std::string joined;
            for (const auto& item : value) {
                if (!joined.empty()) joined += ",";
                joined += item.is_string() ? item.get<std::string>() : item.dump();
            }
            injected.push_back(flag);
            injected.push_back(joined);
        } else if (value.is_string()) {
            injected.push_back(flag);
            injected.push_back(value.get<std::string>());
        } else {
            injected.push_back(flag);
            injected.push_back(value.dump());
        }
    }
    std::size_t pos = 0;
    while (pos < args.size() && pos < 2 && !args[pos].empty() && args[pos][0] != '-') ++pos;
    args.insert(args.begin() + pos, injected.begin(), injected.end());
    return args;
}

// ---------------------------------------------------------------------------

struct RegionArgs {
    std::string kind, pair, quad, sigma, r, rt, out;
    int n = 0;
    bool assert_member = false, exact = false;
};

int run_region(const RegionArgs& a) {
    json out;
    out["kind"] = a.kind;
    bool member = false;

    auto need = [](const std::string& v, const char* flag) {
        if (v.empty()) throw UsageError(std::string("this region kind needs ") + flag);
        return v;
    };
    auto put_quad = [&](const Quad& X) {
        out["quad"] = {{"q", rat_out(X.qr.q, a.exact)},
                       {"r", rat_out(X.qr.r, a.exact)},
                       {"qt", rat_out(X.qtrt.q, a.exact)},
                       {"rt", rat_out(X.qtrt.r, a.exact)}};
    };
    auto put_verdict = [&](const Verdict& v) {
        out["member"] = v.member;
        out["branch"] = branch_name(v.branch);
        out["failed"] = v.failed;
        member = v.member;
    };

    if (a.kind == "sharp" || a.kind == "acceptable") {
        Pair p = want_pair(need(a.pair, "--pair"));
        Sigma s(want_rational(need(a.sigma, "--sigma"), "sigma"));
        out["pair"] = {{"q", rat_out(p.q, a.exact)}, {"r", rat_out(p.r, a.exact)}};
        out["sigma"] = rat_out(s.v, a.exact);
        put_verdict(a.kind == "sharp" ? sharp_admissible_verdict(p, s)
                                      : acceptable_verdict(p, s));
    } else if (a.kind == "local" || a.kind == "global") {
        Quad X = want_quad(need(a.quad, "--quad"));
        Sigma s(want_rational(need(a.sigma, "--sigma"), "sigma"));
        put_quad(X);
        out["sigma"] = rat_out(s.v, a.exact);
        if (a.kind == "local") {
            Verdict v = satisfies_local(X, s);
            put_verdict(v);
            bool oracle = local_region_oracle(X, s);
            out["oracle"] = oracle;
            out["oracle_agrees"] = oracle == v.member;
        } else {
            put_verdict(satisfies_global(X, s));
        }
    } else if (a.kind == "nec-local" || a.kind == "nec-global") {
        Quad X = want_quad(need(a.quad, "--quad"));
        if (a.n < 1) throw UsageError("this region kind needs --n");
        put_quad(X);
        out["n"] = a.n;
        put_verdict(a.kind == "nec-local" ? schrodinger_local_necessary(X, a.n)
                                          : schrodinger_global_necessary(X, a.n));
    } else if (a.kind == "gap") {
        if (a.n < 1) throw UsageError("gap classification needs --n");
        Rat r = want_rational(need(a.r, "--r"), "r");
        Rat rt = want_rational(need(a.rt, "--rt"), "rt");
        GapClass c = gap_region(r, rt, a.n);
        out["r"] = rat_out(r, a.exact);
        out["rt"] = rat_out(rt, a.exact);
        out["n"] = a.n;
        out["region"] = gap_name(c);
        member = c != GapClass::Excluded;
    } else {
        throw UsageError("unknown region kind '" + a.kind + "'");
    }

    emit(out.dump(2) + "\n", a.out);
    return a.assert_member && !member ? 1 : 0;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
    std::string family, quad, params, eta, backend = "kernel", out, csv;
    int n = 0;
    double tolerance = 0;
    bool assert_verdict = false;
};

int run_sweep_cmd(const SweepArgs& a) {
    SweepConfig cfg;
    if (a.family == "flash")
        cfg.family = Family::Flash;
    else if (a.family == "bump")
        cfg.family = Family::Bump;
    else if (a.family == "focusing")
        cfg.family = Family::Focusing;
    else if (a.family == "oscillatory")
        cfg.family = Family::Oscillatory;
    else
        throw UsageError("unknown sweep family '" + a.family + "'");

    if (a.quad.empty()) throw UsageError("sweep needs --quad");
    cfg.quad = want_quad(a.quad);
    cfg.dim = a.n > 0 ? a.n : (cfg.family == Family::Focusing ? 2 : 1);
    for (const std::string& p : a.params.empty() ? std::vector<std::string>{}
                                                 : split_commas(a.params))
        cfg.params.push_back(want_number(p, "parameter"));
    if (!a.eta.empty()) cfg.eta = want_number(a.eta, "eta");
    cfg.tolerance = a.tolerance;
    if (a.backend == "kernel")
        cfg.backend = Backend::Kernel;
    else if (a.backend == "spectral")
        cfg.backend = Backend::Spectral;
    else
        throw UsageError("backend must be kernel or spectral");

    SweepReport rep = run_sweep(cfg);
    emit(sweep_report_json(rep).dump(2) + "\n", a.out);
    if (!a.csv.empty()) write_text_file(a.csv, sweep_report_csv(rep));
    return a.assert_verdict && !rep.verdict ? 1 : 0;
}

// ---------------------------------------------------------------------------

struct WhitneyArgs {
    std::string window = "0,1", out;
    int kmin = -4, kmax = 3;
};

int run_whitney_export(const WhitneyArgs& a) {
    auto parts = split_commas(a.window);
    if (parts.size() != 2) throw UsageError("--window needs lo,hi");
    Window w(want_rational(parts[0], "window"), want_rational(parts[1], "window"));
    auto squares = decompose(w, a.kmin, a.kmax);

    std::string csv = "k,i,j,s_lo,s_hi,t_lo,t_hi,separation\n";
    for (const auto& q : squares) {
        csv += std::to_string(q.k) + "," + std::to_string(q.i) + "," + std::to_string(q.j) +
               "," + format_rational(q.s_lo()) + "," + format_rational(q.s_hi()) + "," +
               format_rational(q.t_lo()) + "," + format_rational(q.t_hi()) + "," +
               format_rational(q.separation()) + "\n";
    }
    emit(csv, a.out);
    return 0;
}

// ---------------------------------------------------------------------------

struct AtomsArgs {
    std::string p = "1/2", out;
    int count = 64;
    unsigned seed = 1;
};

int run_atoms_demo(const AtomsArgs& a) {
    if (a.count < 1) throw UsageError("--count must be positive");
    Rat p = want_rational(a.p, "p");
    std::mt19937 rng(a.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> vals(static_cast<std::size_t>(a.count));
    for (double& v : vals) v = u(rng);
    SampledFunction f(vals, Rat(1, a.count));

    AtomicDecomposition d = atomic_decompose(f, p);
    std::vector<double> rec = reconstruct(d, vals.size());
    double err = 0;
    for (std::size_t i = 0; i < vals.size(); ++i) err = std::max(err, std::abs(rec[i] - vals[i]));

    json out;
    out["p"] = format_rational(p);
    out["count"] = a.count;
    out["seed"] = a.seed;
    out["weight"] = format_rational(f.weight);
    out["atom_count"] = d.atoms.size();
    json atoms = json::array();
    for (std::size_t i = 0; i < d.atoms.size(); ++i) {
        const Atom& atom = d.atoms[i];
        atoms.push_back({{"k", atom.k},
                         {"scale", format_rational(atom.scale())},
                         {"support_measure", format_rational(atom.support_measure())},
                         {"samples", atom.values.size()},
                         {"sup", atom.sup()},
                         {"coefficient", d.coefficients[i]}});
    }
    out["atoms"] = atoms;
    out["max_reconstruction_error"] = err;
    emit(out.dump(2) + "\n", a.out);
    return 0;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string suite, window = "0,8", out;
    int n = 1, N = 256, kmin = -4, kmax = 3, trials = 20;
    unsigned seed = 1;
};

Field random_field(const SpatialGrid& g, std::mt19937& rng) {
    Field f(g);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& v : f.values) v = cplx(u(rng), u(rng));
    return f;
}

int run_verify(const VerifyArgs& a) {
    json out;
    out["suite"] = a.suite;
    bool pass = false;
    std::mt19937 rng(a.seed);

    if (a.suite == "energy") {
        SpatialGrid g(a.n, a.N, 32.0);
        double worst = 0;
        for (int t = 0; t < a.trials; ++t) {
            Field f = random_field(g, rng);
            double before = l2_norm(f);
            for (double time : {0.37, 1.61}) {
                double after = l2_norm(propagate_spectral(f, time));
                worst = std::max(worst, std::abs(after / before - 1));
            }
        }
        out["trials"] = a.trials;
        out["max_relative_error"] = worst;
        pass = worst <= 1e-10;
    } else if (a.suite == "group") {
        SpatialGrid g(a.n, a.N, 32.0);
        std::uniform_real_distribution<double> time(-2.0, 2.0);
        double worst = 0;
        for (int t = 0; t < a.trials; ++t) {
            Field f = random_field(g, rng);
            double s1 = time(rng), s2 = time(rng);
            Field two = propagate_spectral(propagate_spectral(f, s1), s2);
            Field one = propagate_spectral(f, s1 + s2);
            double num = 0, den = 0;
            for (std::size_t i = 0; i < one.values.size(); ++i) {
                num += std::norm(two.values[i] - one.values[i]);
                den += std::norm(one.values[i]);
            }
            worst = std::max(worst, std::sqrt(num / den));
        }
        out["trials"] = a.trials;
        out["max_relative_error"] = worst;
        pass = worst <= 1e-10;
    } else if (a.suite == "dispersion") {
        DispersionReport rep = dispersive_constant(a.n, {});
        double want = -0.5 * a.n, tol = a.n == 1 ? 0.03 : 0.05;
        out["widths"] = rep.widths;
        out["slopes"] = rep.slopes;
        out["mean_slope"] = rep.mean_slope;
        out["expected_slope"] = want;
        out["tolerance"] = tol;
        out["constant"] = rep.constant;
        pass = std::abs(rep.mean_slope - want) <= tol;
    } else if (a.suite == "whitney") {
        auto parts = split_commas(a.window);
        if (parts.size() != 2) throw UsageError("--window needs lo,hi");
        Window w(want_rational(parts[0], "window"), want_rational(parts[1], "window"));
        auto squares = decompose(w, a.kmin, a.kmax);

        bool invariants = true;
        for (std::size_t i = 0; i < squares.size(); ++i) {
            const auto& q = squares[i];
            if (!select(q.k, q.i, q.j)) invariants = false;
            Rat ratio = q.separation() / q.side();
            if (ratio != Rat(1) && ratio != Rat(2)) invariants = false;
            if (i > 0 && !(squares[i - 1] < q)) invariants = false;
        }

        // half-offset raster at the finest scale; points with enough
        // separation must be covered exactly once, the rest at most once
        Rat step = pow2_rat(a.kmin);
        long long count = rat_floor((w.hi - w.lo) / step);
        if (count > 1024) throw UsageError("raster too fine; raise --kmin");
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
        out["squares"] = squares.size();
        out["resolvable_points"] = resolvable;
        out["uncovered"] = uncovered;
        out["multiplicity_violations"] = multiple;
        out["invariants"] = invariants;
        pass = invariants && uncovered == 0 && multiple == 0;
    } else if (a.suite == "atoms") {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::uniform_int_distribution<int> len(1, 64), wexp(-3, 3);
        double worst = 0;
        bool bounds = true;
        for (int t = 0; t < a.trials; ++t) {
            std::vector<double> vals(static_cast<std::size_t>(len(rng)));
            for (double& v : vals) v = u(rng);
            SampledFunction f(vals, pow2_rat(wexp(rng)));
            for (const Rat& p : {Rat(1), Rat(3, 4), Rat(1, 2)}) {
                AtomicDecomposition d = atomic_decompose(f, p);
                std::vector<double> rec = reconstruct(d, vals.size());
                for (std::size_t i = 0; i < vals.size(); ++i)
                    worst = std::max(worst, std::abs(rec[i] - vals[i]));
                for (const Atom& atom : d.atoms) {
                    if (atom.support_measure() > atom.scale()) bounds = false;
                    if (!atom_norm_bound(atom, Rat(0)).holds) bounds = false;
                    if (!atom_norm_bound(atom, p).holds) bounds = false;
                    if (!atom_norm_bound(atom, Rat(1)).holds) bounds = false;
                }
            }
        }
        out["trials"] = a.trials;
        out["max_reconstruction_error"] = worst;
        out["bounds_hold"] = bounds;
        pass = bounds && worst <= 1e-12;
    } else if (a.suite == "duality") {
        SpatialGrid g(1, 32, 8.0);
        SpaceTimeField F(g, 0, 0.125, 16), G(g, 0, 0.125, 16);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (auto& frame : F.frames)
            for (auto& v : frame) v = cplx(u(rng), u(rng));
        for (auto& frame : G.frames)
            for (auto& v : frame) v = cplx(u(rng), u(rng));
        cplx lhs = bilinear_form(F, G);
        SpaceTimeField v = duhamel_retarded(F);
        cplx rhs = 0;
        for (std::size_t k = 0; k < v.frames.size(); ++k)
            rhs += l2_inner(Field(g, v.frames[k]), Field(g, G.frames[k]));
        rhs *= F.dt;
        double err = std::abs(lhs - rhs) / (1 + std::abs(rhs));
        WhitneySumCheck chk = whitney_sum_check(F, G);
        double regroup = std::abs(chk.direct - chk.decomposed) / (1 + std::abs(chk.direct));
        out["duality_error"] = err;
        out["regrouping_error"] = regroup;
        out["uncovered"] = chk.uncovered;
        out["multiplicity_violations"] = chk.multiplicity_violations;
        pass = err <= 1e-10 && regroup <= 1e-10 && chk.uncovered == 0 &&
               chk.multiplicity_violations == 0;
    } else {
        throw UsageError("unknown verify suite '" + a.suite + "'");
    }

    out["pass"] = pass;
    emit(out.dump(2) + "\n", a.out);
    return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct FigureArgs {
    std::string sigma, out;
    int figure = 0, n = 0, resolution = 32;
    bool exact = false;
};

int run_figure(const FigureArgs& a) {
    std::vector<std::pair<std::string, std::vector<BoundaryPoint>>> blocks;
    json meta;
    meta["figure"] = a.figure;
    if (a.figure == 1 || a.figure == 2) {
        if (a.sigma.empty()) throw UsageError("this figure needs --sigma");
        Rat s = want_rational(a.sigma, "sigma");
        meta["sigma"] = rat_out(s, a.exact);
        if (a.figure == 1) {
            blocks.emplace_back("sharp", export_region_boundary("sharp", s, a.resolution));
            blocks.emplace_back("acceptable",
                                export_region_boundary("acceptable", s, a.resolution));
        } else {
            blocks.emplace_back("rrt", export_region_boundary("rrt", s, a.resolution));
        }
    } else if (a.figure == 4) {
        if (a.n < 1) throw UsageError("this figure needs --n");
        meta["n"] = a.n;
        for (const char* name : {"covered", "r1", "r2", "r3", "r4"}) {
            auto pts = export_region_boundary(name, Rat(a.n), a.resolution);
            if (!pts.empty()) blocks.emplace_back(name, std::move(pts));
        }
    } else {
        throw UsageError("figure must be 1, 2, or 4");
    }

    if (a.exact) {
        json jb;
        for (const auto& [name, pts] : blocks) {
            json arr = json::array();
            for (const auto& p : pts) arr.push_back({rat_json(p.x), rat_json(p.y)});
            jb[name] = arr;
        }
        meta["blocks"] = jb;
        emit(meta.dump(2) + "\n", a.out);
    } else {
        std::string csv;
        for (const auto& [name, pts] : blocks) {
            if (!csv.empty()) csv += "\n";
            csv += "# " + name + "\nx,y\n";
            for (const auto& p : pts)
                csv += format_decimal(to_double(p.x)) + "," + format_decimal(to_double(p.y)) +
                       "\n";
        }
        emit(csv, a.out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args;
    try {
        args = load_args(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    CLI::App app{"exact admissibility decisions and sampled scaling checks for the linear flow"};
    app.require_subcommand(1);
    auto last = [](CLI::Option* o) { o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast); };

    RegionArgs region;
    CLI::App* region_cmd = app.add_subcommand(
        "region", "decide membership of exponent pairs and quadruples, exactly");
    region_cmd->add_option("kind", region.kind,
                           "sharp|acceptable|local|global|nec-local|nec-global|gap")
        ->required();
    last(region_cmd->add_option("--pair", region.pair, "reciprocals 1/q,1/r"));
    last(region_cmd->add_option("--quad", region.quad, "reciprocals 1/q,1/r,1/qt,1/rt"));
    last(region_cmd->add_option("--sigma", region.sigma, "scaling weight, rational"));
    last(region_cmd->add_option("--n", region.n, "spatial dimension"));
    last(region_cmd->add_option("--r", region.r, "reciprocal 1/r"));
    last(region_cmd->add_option("--rt", region.rt, "reciprocal 1/rt"));
    last(region_cmd->add_option("--out", region.out, "write JSON here instead of stdout"));
    region_cmd->add_flag("--assert", region.assert_member, "exit 1 unless a member");
    region_cmd->add_flag("--exact", region.exact, "rationals as [num, den] pairs");

    SweepArgs sweep;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "fit a window-norm scaling law for a forcing family");
    sweep_cmd->add_option("family", sweep.family, "flash|bump|focusing|oscillatory")
        ->required();
    last(sweep_cmd->add_option("--quad", sweep.quad, "reciprocals 1/q,1/r,1/qt,1/rt"));
    last(sweep_cmd->add_option("--n", sweep.n, "spatial dimension"));
    last(sweep_cmd->add_option("--eps,--R,--times", sweep.params,
                               "comma list of sweep parameters"));
    last(sweep_cmd->add_option("--eta", sweep.eta, "aperture parameter"));
    last(sweep_cmd->add_option("--tolerance", sweep.tolerance, "relative slope tolerance"));
    last(sweep_cmd->add_option("--backend", sweep.backend, "kernel|spectral"));
    last(sweep_cmd->add_option("--out", sweep.out, "write JSON here instead of stdout"));
    last(sweep_cmd->add_option("--csv", sweep.csv, "also write param,ratio rows here"));
    sweep_cmd->add_flag("--assert", sweep.assert_verdict, "exit 1 unless the fit matches");

    WhitneyArgs whitney;
    CLI::App* whitney_cmd =
        app.add_subcommand("whitney", "dyadic decomposition of a window off the diagonal");
    CLI::App* whitney_export = whitney_cmd->add_subcommand("export", "selected squares as CSV");
    last(whitney_export->add_option("--window", whitney.window, "lo,hi rationals"));
    last(whitney_export->add_option("--kmin", whitney.kmin, "smallest scale exponent"));
    last(whitney_export->add_option("--kmax", whitney.kmax, "largest scale exponent"));
    last(whitney_export->add_option("--out", whitney.out, "write CSV here instead of stdout"));

    AtomsArgs atoms;
    CLI::App* atoms_cmd = app.add_subcommand("atoms", "atomic decomposition of sampled data");
    CLI::App* atoms_demo = atoms_cmd->add_subcommand("demo", "decompose a random sample");
    last(atoms_demo->add_option("--count", atoms.count, "number of samples"));
    last(atoms_demo->add_option("--p", atoms.p, "normalization reciprocal 1/p"));
    last(atoms_demo->add_option("--seed", atoms.seed, "random seed"));
    last(atoms_demo->add_option("--out", atoms.out, "write JSON here instead of stdout"));

    VerifyArgs verify;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "self-checks of the numerical primitives");
    verify_cmd->add_option("suite", verify.suite,
                           "energy|dispersion|group|whitney|atoms|duality")
        ->required();
    last(verify_cmd->add_option("--n", verify.n, "spatial dimension"));
    last(verify_cmd->add_option("--N", verify.N, "grid samples per axis"));
    last(verify_cmd->add_option("--window", verify.window, "lo,hi rationals"));
    last(verify_cmd->add_option("--kmin", verify.kmin, "smallest scale exponent"));
    last(verify_cmd->add_option("--kmax", verify.kmax, "largest scale exponent"));
    last(verify_cmd->add_option("--trials", verify.trials, "random instances"));
    last(verify_cmd->add_option("--seed", verify.seed, "random seed"));
    last(verify_cmd->add_option("--out", verify.out, "write JSON here instead of stdout"));

    FigureArgs figure;
    CLI::App* figure_cmd =
        app.add_subcommand("export-figure", "boundary polylines of the admissibility regions");
    figure_cmd->add_option("figure", figure.figure, "1, 2, or 4")->required();
    last(figure_cmd->add_option("--sigma", figure.sigma, "scaling weight, rational"));
    last(figure_cmd->add_option("--n", figure.n, "spatial dimension"));
    last(figure_cmd->add_option("--resolution", figure.resolution, "points per edge"));
    last(figure_cmd->add_option("--out", figure.out, "write here instead of stdout"));
    figure_cmd->add_flag("--exact", figure.exact, "JSON with [num, den] coordinates");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (region_cmd->parsed()) return run_region(region);
        if (sweep_cmd->parsed()) return run_sweep_cmd(sweep);
        if (whitney_cmd->parsed()) {
            if (!whitney_export->parsed()) throw UsageError("usage: whitney export ...");
            return run_whitney_export(whitney);
        }
        if (atoms_cmd->parsed()) {
            if (!atoms_demo->parsed()) throw UsageError("usage: atoms demo ...");
            return run_atoms_demo(atoms);
        }
        if (verify_cmd->parsed()) return run_verify(verify);
        if (figure_cmd->parsed()) return run_figure(figure);
    } catch (const ResolutionError& e) {
        std::cerr << "resolution: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
