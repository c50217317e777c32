#include "fsm_jacobi/cli.hpp"

#include "fsm_jacobi/errors.hpp"
#include "fsm_jacobi/io.hpp"
#include "fsm_jacobi/spectra.hpp"
#include "fsm_jacobi/toeplitz.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <map>
#include <optional>

namespace fsm_jacobi {

namespace {

using io::json;

std::pair<Index, Index> parse_range(const std::string& text) {
    const auto pos = text.find("..");
    if (pos == std::string::npos) throw ConfigError("range must be LO..HI");
    try {
        const Index lo = std::stoll(text.substr(0, pos));
        const Index hi = std::stoll(text.substr(pos + 2));
        if (lo > hi) throw ConfigError("range requires LO <= HI");
        return {lo, hi};
    } catch (const std::invalid_argument&) {
        throw ConfigError("malformed range: " + text);
    } catch (const std::out_of_range&) {
        throw ConfigError("range out of 64-bit bounds: " + text);
    }
}

SampleLaw parse_law(const std::string& name) {
    if (name == "uniform") return SampleLaw::Uniform;
    if (name == "arcsine") return SampleLaw::ArcsineEndpoints;
    throw ConfigError("unknown law (use uniform|arcsine): " + name);
}

RhsFn rhs_from_map(std::map<Index, Cplx> values) {
    return [values = std::move(values)](Index i) -> Cplx {
        const auto it = values.find(i);
        return it == values.end() ? Cplx{} : it->second;
    };
}

GridSpec default_grid(const BandedSystem& sys, int res) {
    double x_lo = sys.band_v(sys.l()).real();
    double x_hi = x_lo;
    double y_lo = sys.band_v(sys.l()).imag();
    double y_hi = y_lo;
    double radius = 0.0;
    for (Index i = sys.l(); i <= sys.r(); ++i) {
        const Cplx v = sys.band_v(i);
        x_lo = std::min(x_lo, v.real());
        x_hi = std::max(x_hi, v.real());
        y_lo = std::min(y_lo, v.imag());
        y_hi = std::max(y_hi, v.imag());
        radius = std::max(radius, std::abs(sys.band_u(i)) + std::abs(sys.band_w(i)));
    }
    const double pad = 1.2 * radius + 0.1;
    return GridSpec{x_lo - pad, x_hi + pad, y_lo - pad, y_hi + pad, res, res};
}

json classification_to_json(const TriSymbolSet& sets, const FredholmClassification& cls) {
    json j;
    j["case"] = to_string(cls.kase);
    if (cls.plus_index)
        j["plus_index"] = *cls.plus_index;
    else
        j["plus_index"] = nullptr;
    j["consistent"] = cls.consistent;
    j["exhaustive"] = cls.exhaustive;
    j["triples_checked"] = cls.triples_checked;
    json witnesses = json::array();
    for (const TripleWitness& w : cls.witnesses) {
        witnesses.push_back(json{{"u", json::array({w.u.real(), w.u.imag()})},
                                 {"v", json::array({w.v.real(), w.v.imag()})},
                                 {"w", json::array({w.w.real(), w.w.imag()})},
                                 {"f", w.f},
                                 {"mod_gap", w.mod_gap},
                                 {"verdict", to_string(w.verdict)}});
    }
    j["witnesses"] = witnesses;
    j["delta"] = sets.delta;
    if (const auto bound = delta_certificate(sets))
        j["delta_certificate"] = *bound;
    else
        j["delta_certificate"] = nullptr;
    if (const auto dom = dominance_certificate(sets)) {
        j["dominance_certificate"] =
            json{{"which", dom->which == DominantDiagonal::Sub ? "sub" : "super"},
                 {"gap", dom->gap},
                 {"inverse_bound", 1.0 / dom->gap}};
    } else {
        j["dominance_certificate"] = nullptr;
    }
    return j;
}

void emit(const json& j, const std::string& out_path) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        io::atomic_write(out_path, text);
}

int cmd_generate(const std::string& sets_path, std::uint64_t seed, const std::string& range,
                 bool semi, const std::string& law_u, const std::string& law_v,
                 const std::string& law_w, const std::string& out_path) {
    const TriSymbolSet sets = io::load_sets(sets_path);
    const auto [lo, hi] = parse_range(range);
    const DiagonalField field = DiagonalField::sample_iid(
        sets, seed, lo, hi, semi ? FieldOrientation::SemiInfinite : FieldOrientation::BiInfinite,
        {parse_law(law_u), parse_law(law_v), parse_law(law_w)});
    io::save_field(field, out_path);
    return 0;
}

int cmd_classify(const std::string& sets_path, double tol, std::int64_t budget,
                 const std::string& out_path) {
    const TriSymbolSet sets = io::load_sets(sets_path);
    const FredholmClassification cls = classify_sets(sets, tol, budget);
    emit(classification_to_json(sets, cls), out_path);
    return 0;
}

int cmd_bounds(const std::string& sets_path, int angles, const std::string& out_prefix) {
    const TriSymbolSet sets = io::load_sets(sets_path);

    json report;
    report["upper_bound"] = json{{"V", io::symbol_set_to_json(sets.V)},
                                 {"radius", sets.u_max + sets.w_max}};
    report["delta"] = sets.delta;

    json hole = nullptr;
    double hole_radius = 0.0;
    std::string which;
    if (sets.u_min > sets.w_max) {
        hole_radius = sets.u_min - sets.w_max;
        which = "sub";
    } else if (sets.w_min > sets.u_max) {
        hole_radius = sets.w_min - sets.u_max;
        which = "super";
    }
    if (!which.empty()) {
        // witness: box center of the sampled V
        double x_lo = sets.V.samples().front().real(), x_hi = x_lo;
        double y_lo = sets.V.samples().front().imag(), y_hi = y_lo;
        for (Cplx v : sets.V.samples()) {
            x_lo = std::min(x_lo, v.real());
            x_hi = std::max(x_hi, v.real());
            y_lo = std::min(y_lo, v.imag());
            y_hi = std::max(y_hi, v.imag());
        }
        const Cplx witness(0.5 * (x_lo + x_hi), 0.5 * (y_lo + y_hi));
        hole = json{{"dominant", which},
                    {"radius", hole_radius},
                    {"witness", json::array({witness.real(), witness.imag()})},
                    {"nonempty", spectral_hole(sets, witness)}};
    }
    report["hole"] = hole;

    if (sets.V.is_real()) {
        json intervals = json::array();
        for (const Interval& iv : selfadjoint_spectrum(sets.U, sets.V))
            intervals.push_back(json::array({iv.lo, iv.hi}));
        report["selfadjoint_spectrum"] = intervals;
    } else {
        report["selfadjoint_spectrum"] = nullptr;
    }

    const std::vector<Cplx> cloud = lower_spectral_bound(sets, angles);
    const std::string cloud_path = out_prefix + "_lower.csv";
    io::write_cloud_csv(cloud, cloud_path);
    report["lower_bound_cloud"] = cloud_path;
    report["lower_bound_points"] = cloud.size();
    emit(report, out_prefix + "_report.json");
    std::cout << "bounds written to " << out_prefix << "_report.json (" << cloud.size()
              << " lower-bound points)\n";
    return 0;
}

int cmd_plan(const std::string& field_path, const std::string& target_text, int n_max,
             Index horizon, bool reflect, const std::string& out_path) {
    DiagonalField field = io::load_field(field_path);
    const Triple target =
        target_text.empty() ? default_target(field) : io::parse_triple(target_text);
    PlanOptions options;
    options.horizon = horizon;
    if (reflect) options.matcher = reflected_prefix_matcher();
    const WindowPlan plan = field.orientation() == FieldOrientation::BiInfinite
                                ? plan_windows_bi(field, target, n_max, options)
                                : plan_windows_semi(field, target, n_max, options);
    json entries = json::array();
    for (const auto& e : plan.entries)
        entries.push_back(json{{"n", e.n}, {"l", e.l}, {"r", e.r}, {"size", e.r - e.l + 1}});
    emit(json{{"target", json::array({io::format_complex(target.u), io::format_complex(target.v),
                                      io::format_complex(target.w)})},
              {"entries", entries}},
         out_path);
    return 0;
}

int cmd_solve(const std::string& field_path, const std::string& rhs_path, int n_max,
              const std::string& mode, const std::string& target_text, Index inv_cap,
              Index horizon, const std::string& csv_path, const std::string& out_path,
              const std::string& solution_path, const std::string& system_prefix) {
    DiagonalField field = io::load_field(field_path);

    std::map<Index, Cplx> rhs_values;
    if (rhs_path.empty()) {
        rhs_values[field.orientation() == FieldOrientation::SemiInfinite ? 1 : 0] = Cplx(1.0, 0.0);
    } else {
        rhs_values = io::load_rhs(rhs_path);
    }
    const RhsFn rhs = rhs_from_map(std::move(rhs_values));

    SolveOptions options;
    options.inverse_norm_cap = inv_cap;
    options.horizon = horizon;
    if (!target_text.empty()) options.target = io::parse_triple(target_text);

    SolveReport report;
    if (mode == "full") {
        report = full_fsm(field, rhs, n_max, options);
    } else if (mode == "semi" ||
               (mode == "adaptive" && field.orientation() == FieldOrientation::SemiInfinite)) {
        report = solve_adaptive_semi(field, rhs, n_max, options);
    } else if (mode == "adaptive") {
        report = solve_adaptive_bi(field, rhs, n_max, options);
    } else {
        throw ConfigError("unknown mode (use adaptive|full|semi): " + mode);
    }

    if (!csv_path.empty()) io::write_report_csv(report, csv_path);
    if (!system_prefix.empty() && !report.records.empty()) {
        const SolveRecord& last = report.records.back();
        const BandedSystem sys(field, last.l, last.r, report.shift_k);
        io::write_system_csv(sys, system_prefix + ".csv", system_prefix + ".json");
    }
    if (!solution_path.empty() && !report.records.empty()) {
        const SolveRecord& last = report.records.back();
        std::string dump;
        for (Index i = last.l; i <= last.r; ++i) {
            const Cplx x = last.solution[static_cast<std::size_t>(i - last.l)];
            dump += json{{"i", i}, {"x", json::array({x.real(), x.imag()})}}.dump() + "\n";
        }
        io::atomic_write(solution_path, dump);
    }
    emit(io::report_to_json(report), out_path);
    return 0;
}

int cmd_spectrum(const std::string& field_path, Index n, const std::string& mode,
                 const std::string& eps_text, const std::string& grid_text, int shift_k,
                 const std::string& out_path, const std::string& system_prefix) {
    DiagonalField field = io::load_field(field_path);
    const bool semi = field.orientation() == FieldOrientation::SemiInfinite;
    const Index l = semi ? 1 : -n;
    const Index r = n;
    if (!field.covers(l - std::abs(shift_k), r + std::abs(shift_k))) {
        if (!field.extendable()) throw OutOfRangeError("field does not cover the window");
        field = extend(field, std::min(field.lo(), l - 1), std::max(field.hi(), r + 1));
    }
    const BandedSystem sys(field, l, r, shift_k);
    if (!system_prefix.empty())
        io::write_system_csv(sys, system_prefix + ".csv", system_prefix + ".json");

    if (mode == "eig") {
        io::write_cloud_csv(eigenvalues(sys).points, out_path);
        return 0;
    }
    if (mode == "sv") {
        io::write_cloud_csv(singular_values(sys).points, out_path, true);
        return 0;
    }
    if (mode != "pseudo") throw ConfigError("unknown mode (use eig|sv|pseudo): " + mode);

    std::vector<double> eps_levels;
    {
        std::stringstream ss(eps_text.empty() ? "0.1" : eps_text);
        std::string item;
        while (std::getline(ss, item, ',')) eps_levels.push_back(std::stod(item));
    }
    GridSpec grid;
    if (grid_text.empty()) {
        grid = default_grid(sys, 201);
    } else {
        std::stringstream ss(grid_text);
        std::string item;
        std::vector<double> vals;
        while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
        if (vals.size() != 5) throw ConfigError("--grid must be x0,x1,y0,y1,res");
        grid = GridSpec{vals[0], vals[1], vals[2], vals[3], static_cast<int>(vals[4]),
                        static_cast<int>(vals[4])};
    }

    const PseudospectrumResult result = pseudospectrum_grid(sys, grid, eps_levels);

    std::string matrix;
    for (int iy = 0; iy < grid.ny; ++iy) {
        for (int ix = 0; ix < grid.nx; ++ix) {
            if (ix) matrix += ',';
            matrix += io::format_g17(
                result.sigma_min[static_cast<std::size_t>(iy) * grid.nx + ix]);
        }
        matrix += '\n';
    }
    io::atomic_write(out_path, matrix);

    const std::string stem = out_path + ".header.json";
    json header{{"x0", grid.x0}, {"x1", grid.x1}, {"y0", grid.y0}, {"y1", grid.y1},
                {"nx", grid.nx}, {"ny", grid.ny}, {"eps", eps_levels}};
    io::atomic_write(stem, header.dump(2) + "\n");
    for (std::size_t k = 0; k < result.levels.size(); ++k) {
        io::write_cloud_csv(result.levels[k].points,
                            out_path + ".eps" + std::to_string(k) + ".csv");
    }
    return 0;
}

int cmd_reproduce(double g, double a, std::uint64_t seed, int n_max, Index inv_cap,
                  const std::string& csv_path, const std::string& out_path) {
    const HatanoNelsonBundle bundle = run_hatano_nelson(g, a, seed, n_max, inv_cap);

    std::cout << "Hatano-Nelson reproduction: g=" << io::format_g17(g)
              << " a=" << io::format_g17(a) << " seed=" << seed << "\n";
    std::cout << "c = " << io::format_g17(bundle.c) << "\n";
    std::cout << "s = " << io::format_g17(bundle.s) << "\n";
    std::cout << "(c-a)^-1 = " << io::format_g17(bundle.toeplitz_floor)
              << "   [Toeplitz inverse norm of the shifted target]\n";
    if (std::isfinite(bundle.cap))
        std::cout << "(s-a)^-1 = " << io::format_g17(bundle.cap)
                  << "   [dominance cap on limsup ||A_n^-1||]\n";
    else
        std::cout << "(s-a)^-1 = unavailable   [no dominance certificate for a >= s]\n";
    std::cout << "case = " << to_string(bundle.classification.kase);
    if (bundle.classification.plus_index)
        std::cout << ", ind A_+ = " << *bundle.classification.plus_index;
    std::cout << ", consistent = " << (bundle.classification.consistent ? "true" : "false")
              << "\n";

    if (bundle.classification.kase != FredholmCase::B) {
        std::cout << "classification is not case (b); no solve performed\n";
        return bundle.classification.kase == FredholmCase::NotFredholm ? 4 : 0;
    }

    if (!bundle.report.records.empty()) {
        std::cout << "n,l_n,r_n,size,inv_norm\n";
        for (const SolveRecord& rec : bundle.report.records) {
            std::cout << rec.n << ',' << rec.l << ',' << rec.r << ',' << rec.size << ',';
            if (rec.inverse_norm)
                std::cout << io::format_g17(*rec.inverse_norm);
            else
                std::cout << "skipped";
            std::cout << "\n";
        }
        if (!csv_path.empty()) io::write_report_csv(bundle.report, csv_path);
    }
    if (!out_path.empty()) {
        json j{{"g", g},
               {"a", a},
               {"seed", seed},
               {"c", bundle.c},
               {"s", bundle.s},
               {"toeplitz_floor", bundle.toeplitz_floor},
               {"stability_cap", bundle.cap},
               {"report", io::report_to_json(bundle.report)}};
        io::atomic_write(out_path, j.dump(2) + "\n");
    }
    return 0;
}

} // namespace

HatanoNelsonBundle run_hatano_nelson(double g, double a, std::uint64_t seed, int n_max,
                                     Index inverse_norm_cap, Index horizon) {
    if (!(g > 0.0) || !(a > 0.0)) throw ConfigError("reproduce requires g > 0 and a > 0");

    HatanoNelsonBundle bundle;
    bundle.g = g;
    bundle.a = a;
    bundle.c = 2.0 * std::cosh(g);
    bundle.s = 2.0 * std::sinh(g);

    const TriSymbolSet sets =
        make_tri_symbol_set(SymbolSet::points({Cplx(std::exp(g), 0.0)}),
                            SymbolSet::interval(-a, a),
                            SymbolSet::points({Cplx(std::exp(-g), 0.0)}));
    bundle.classification = classify_sets(sets);

    // target per the high-density endpoint of the arcsine law
    const Triple target{Cplx(std::exp(g), 0.0), Cplx(a, 0.0), Cplx(std::exp(-g), 0.0)};
    bundle.toeplitz_floor = toeplitz_inverse_norm_triangular(target.u, target.v, target.w, -1);
    if (const auto cap = stability_cap(sets, bundle.classification, target))
        bundle.cap = *cap;
    else
        bundle.cap = std::numeric_limits<double>::quiet_NaN();

    if (n_max >= 1 && bundle.classification.kase == FredholmCase::B) {
        DiagonalField field = DiagonalField::sample_iid(
            sets, seed, -64, 64, FieldOrientation::BiInfinite,
            {SampleLaw::Uniform, SampleLaw::ArcsineEndpoints, SampleLaw::Uniform});
        SolveOptions options;
        options.inverse_norm_cap = inverse_norm_cap;
        options.horizon = horizon;
        options.target = target;
        options.sets = sets;
        const RhsFn impulse = [](Index i) { return i == 0 ? Cplx(1.0, 0.0) : Cplx{}; };
        bundle.report = solve_adaptive_bi(field, impulse, n_max, options);
    }
    return bundle;
}

int run_cli(std::vector<std::string> args) {
    CLI::App app{"adaptive finite sections of random Jacobi operators", "fsm_jacobi"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "sample a diagonal field to JSON lines");
    std::string gen_sets, gen_range = "-64..64", gen_out = "field.jsonl";
    std::string gen_law_u = "uniform", gen_law_v = "uniform", gen_law_w = "uniform";
    std::uint64_t gen_seed = 0;
    bool gen_semi = false;
    gen->add_option("--sets", gen_sets, "sets JSON document")->required();
    gen->add_option("--seed", gen_seed, "sampler seed");
    gen->add_option("--range", gen_range, "materialized window LO..HI");
    gen->add_flag("--semi", gen_semi, "semi-infinite field (indices from 1)");
    gen->add_option("--law-u", gen_law_u, "uniform|arcsine");
    gen->add_option("--law-v", gen_law_v, "uniform|arcsine");
    gen->add_option("--law-w", gen_law_w, "uniform|arcsine");
    gen->add_option("--out", gen_out, "output JSONL path");

    // classify
    auto* cls = app.add_subcommand("classify", "Fredholm case and certificates for a set triple");
    std::string cls_sets, cls_out;
    double cls_tol = kCaseTol;
    std::int64_t cls_budget = 100000;
    cls->add_option("--sets", cls_sets, "sets JSON document")->required();
    cls->add_option("--tol", cls_tol, "decision-boundary tolerance");
    cls->add_option("--budget", cls_budget, "max sampled triples");
    cls->add_option("--out", cls_out, "verdict JSON path (default stdout)");

    // bounds
    auto* bnd = app.add_subcommand("bounds", "spectral inclusion/exclusion sets");
    std::string bnd_sets, bnd_prefix = "bounds";
    int bnd_angles = 0;
    bnd->add_option("--sets", bnd_sets, "sets JSON document")->required();
    bnd->add_option("--angles", bnd_angles, "angles per lower-bound curve");
    bnd->add_option("--out-prefix", bnd_prefix, "output prefix");

    // plan
    auto* pln = app.add_subcommand("plan", "adaptive cut-off sequences");
    std::string pln_field, pln_target, pln_out;
    int pln_nmax = 5;
    Index pln_horizon = 10'000'000;
    bool pln_reflect = false;
    pln->add_option("--field", pln_field, "field JSONL")->required();
    pln->add_option("--target", pln_target, "target triple u,v,w (default: most probable)");
    pln->add_option("--nmax", pln_nmax, "levels to plan");
    pln->add_option("--horizon", pln_horizon, "per-side search cap");
    pln->add_flag("--reflect", pln_reflect, "aim at the reversed own prefix");
    pln->add_option("--out", pln_out, "plan JSON path (default stdout)");

    // solve
    auto* slv = app.add_subcommand("solve", "adaptive / full finite section solve");
    std::string slv_field, slv_rhs, slv_mode = "adaptive", slv_target, slv_csv, slv_out,
                slv_solution, slv_system;
    int slv_nmax = 5;
    Index slv_cap = 5000, slv_horizon = 10'000'000;
    slv->add_option("--field", slv_field, "field JSONL")->required();
    slv->add_option("--rhs", slv_rhs, "rhs JSONL (default unit impulse)");
    slv->add_option("--nmax", slv_nmax, "levels to solve");
    slv->add_option("--mode", slv_mode, "adaptive|full|semi");
    slv->add_option("--target", slv_target, "target triple u,v,w");
    slv->add_option("--inv-cap", slv_cap, "inverse-norm size cap");
    slv->add_option("--horizon", slv_horizon, "per-side search cap");
    slv->add_option("--csv", slv_csv, "table CSV path");
    slv->add_option("--out", slv_out, "report JSON path (default stdout)");
    slv->add_option("--solution-out", slv_solution, "final window solution JSONL");
    slv->add_option("--system-out", slv_system, "final window bands CSV/JSON prefix");

    // spectrum
    auto* spc = app.add_subcommand("spectrum", "finite-section spectral clouds");
    std::string spc_field, spc_mode = "eig", spc_eps, spc_grid, spc_out = "cloud.csv",
                spc_system;
    Index spc_n = 100;
    int spc_shift = 0;
    spc->add_option("--field", spc_field, "field JSONL")->required();
    spc->add_option("--n", spc_n, "window [-n,n] (bi) or [1,n] (semi)");
    spc->add_option("--mode", spc_mode, "eig|sv|pseudo");
    spc->add_option("--eps", spc_eps, "pseudospectrum levels E1,E2,...");
    spc->add_option("--grid", spc_grid, "x0,x1,y0,y1,res");
    spc->add_option("--shift", spc_shift, "shift_k in {-1,0,1}");
    spc->add_option("--out", spc_out, "output CSV path");
    spc->add_option("--system-out", spc_system, "window bands CSV/JSON prefix");

    // reproduce
    auto* rep = app.add_subcommand("reproduce", "the Hatano-Nelson experiment");
    double rep_g = 1.0, rep_a = 2.0;
    std::uint64_t rep_seed = 0;
    int rep_nmax = 5;
    Index rep_cap = 5000;
    std::string rep_csv, rep_out;
    rep->add_option("--g", rep_g, "coupling parameter (> 0)");
    rep->add_option("--a", rep_a, "potential half-width (> 0)");
    rep->add_option("--seed", rep_seed, "sampler seed");
    rep->add_option("--nmax", rep_nmax, "levels to solve (0 = constants only)");
    rep->add_option("--inv-cap", rep_cap, "inverse-norm size cap");
    rep->add_option("--csv", rep_csv, "table CSV path");
    rep->add_option("--out", rep_out, "bundle JSON path");

    // selftest
    auto* slf = app.add_subcommand("selftest", "reduced invariant suites of all modules");
    bool slf_fast = false;
    slf->add_flag("--fast", slf_fast, "smaller budgets");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed())
            return cmd_generate(gen_sets, gen_seed, gen_range, gen_semi, gen_law_u, gen_law_v,
                                gen_law_w, gen_out);
        if (cls->parsed()) return cmd_classify(cls_sets, cls_tol, cls_budget, cls_out);
        if (bnd->parsed()) return cmd_bounds(bnd_sets, bnd_angles, bnd_prefix);
        if (pln->parsed())
            return cmd_plan(pln_field, pln_target, pln_nmax, pln_horizon, pln_reflect, pln_out);
        if (slv->parsed())
            return cmd_solve(slv_field, slv_rhs, slv_nmax, slv_mode, slv_target, slv_cap,
                             slv_horizon, slv_csv, slv_out, slv_solution, slv_system);
        if (spc->parsed())
            return cmd_spectrum(spc_field, spc_n, spc_mode, spc_eps, spc_grid, spc_shift, spc_out,
                                spc_system);
        if (rep->parsed())
            return cmd_reproduce(rep_g, rep_a, rep_seed, rep_nmax, rep_cap, rep_csv, rep_out);
        if (slf->parsed()) return run_selftest(slf_fast) == 0 ? 0 : 1;
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NotFredholmError& e) {
        std::cerr << "classification abort: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}

} // namespace fsm_jacobi
