#include "fsm_jacobi/adaptive_fsm.hpp"

#include "fsm_jacobi/toeplitz.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

using namespace fsm_jacobi;

namespace {

const double kE = std::exp(1.0);
const double kEInv = std::exp(-1.0);

DiagonalField constant_field(Cplx u, Cplx v, Cplx w, Index lo, Index hi,
                             FieldOrientation orientation = FieldOrientation::BiInfinite) {
    return DiagonalField::explicit_field(
        lo, std::vector<Triple>(static_cast<std::size_t>(hi - lo + 1), Triple{u, v, w}),
        orientation);
}

// rhs = A x for a manufactured x supported on [s_lo, s_hi], evaluated on a
// comfortably larger window of the same field
std::map<Index, Cplx> manufacture_rhs(const DiagonalField& field,
                                      const std::map<Index, Cplx>& solution) {
    std::map<Index, Cplx> rhs;
    Index s_lo = solution.begin()->first;
    Index s_hi = solution.rbegin()->first;
    for (Index i = s_lo - 1; i <= s_hi + 1; ++i) {
        if (field.orientation() == FieldOrientation::SemiInfinite && i < 1) continue;
        const Triple& t = field.at(i);
        const auto get = [&](Index j) {
            const auto it = solution.find(j);
            return it == solution.end() ? Cplx{} : it->second;
        };
        Cplx acc = t.v * get(i);
        if (!(field.orientation() == FieldOrientation::SemiInfinite && i == 1))
            acc += t.u * get(i - 1);
        acc += t.w * get(i + 1);
        if (acc != Cplx{}) rhs[i] = acc;
    }
    return rhs;
}

RhsFn rhs_fn(std::map<Index, Cplx> values) {
    return [values = std::move(values)](Index i) -> Cplx {
        const auto it = values.find(i);
        return it == values.end() ? Cplx{} : it->second;
    };
}

void check_manufactured(const SolveReport& report, const std::map<Index, Cplx>& truth,
                        double tol) {
    REQUIRE_FALSE(report.records.empty());
    double best = 1e9;
    for (const SolveRecord& rec : report.records) {
        CHECK(rec.residual_inf <= 1e-9 * (1.0 + rec.rhs_inf));
        if (rec.l > truth.begin()->first || rec.r < truth.rbegin()->first) continue;
        double err = 0.0;
        for (const auto& [i, x] : truth)
            err = std::max(err, std::abs(rec.solution[static_cast<std::size_t>(i - rec.l)] - x));
        best = std::min(best, err);
    }
    CHECK(best <= tol);
}

std::map<Index, Cplx> central_solution(Index lo, Index hi) {
    std::map<Index, Cplx> x;
    double phase = 0.3;
    for (Index i = lo; i <= hi; ++i) {
        x[i] = Cplx(std::cos(phase), std::sin(2.0 * phase));
        phase += 1.1;
    }
    return x;
}

} // namespace

TEST_CASE("plans on a constant field are the full windows") {
    DiagonalField field = constant_field(Cplx(1, 0), Cplx(2, 0), Cplx(0.5, 0), -64, 64);
    WindowPlan plan = plan_windows_bi(field, Triple{Cplx(1, 0), Cplx(2, 0), Cplx(0.5, 0)}, 6);
    REQUIRE(plan.entries.size() == 6);
    for (const auto& e : plan.entries) {
        CHECK(e.l == -e.n);
        CHECK(e.r == e.n);
    }

    DiagonalField semi = constant_field(Cplx(1, 0), Cplx(2, 0), Cplx(0.5, 0), 1, 64,
                                        FieldOrientation::SemiInfinite);
    WindowPlan splan = plan_windows_semi(semi, Triple{Cplx(1, 0), Cplx(2, 0), Cplx(0.5, 0)}, 6);
    for (const auto& e : splan.entries) {
        CHECK(e.l == 1);
        CHECK(e.r == e.n);
    }
}

TEST_CASE("plan entries satisfy the step-1 condition and monotonicity") {
    const TriSymbolSet sets = make_tri_symbol_set(
        SymbolSet::points({Cplx(2, 0)}), SymbolSet::points({Cplx(0, 0), Cplx(0.5, 0)}),
        SymbolSet::points({Cplx(0.5, 0)}));
    DiagonalField field = DiagonalField::sample_iid(sets, 5, -64, 64,
                                                    FieldOrientation::BiInfinite);
    const Triple target{Cplx(2, 0), Cplx(0, 0), Cplx(0.5, 0)};
    const WindowPlan plan = plan_windows_bi(field, target, 7);
    Index prev_l = 0, prev_r = 0;
    for (const auto& e : plan.entries) {
        CHECK(e.l < prev_l);
        CHECK(e.r > prev_r);
        CHECK(e.l <= e.r);
        for (Index i = e.l; i <= e.l + e.n; ++i)
            CHECK(triple_distance(field.at(i), target) < 1.0 / e.n);
        for (Index i = e.r - e.n; i <= e.r; ++i)
            CHECK(triple_distance(field.at(i), target) < 1.0 / e.n);
        prev_l = e.l;
        prev_r = e.r;
    }
}

TEST_CASE("planted target runs are found at the planted positions") {
    const Triple target{Cplx(1, 0), Cplx(2, 0), Cplx(3, 0)};
    const Triple filler{Cplx(1, 0), Cplx(7, 0), Cplx(3, 0)}; // distance 5 from target
    std::vector<Triple> triples(201, filler);
    const auto put_run = [&](Index start, int len) {
        for (int k = 0; k < len; ++k) triples[static_cast<std::size_t>(start + 100 + k)] = target;
    };
    put_run(5, 2);   // qualifies for n = 1 -> r_1 = 6
    put_run(20, 3);  // n = 2 -> r_2 = 22
    put_run(40, 4);  // n = 3 -> r_3 = 43
    put_run(-9, 2);  // l_1 = -9
    put_run(-30, 3); // l_2 = -30
    put_run(-52, 4); // l_3 = -52
    DiagonalField field = DiagonalField::explicit_field(-100, std::move(triples),
                                                        FieldOrientation::BiInfinite);
    const WindowPlan plan = plan_windows_bi(field, target, 3);
    CHECK(plan.entries[0].r == 6);
    CHECK(plan.entries[1].r == 22);
    CHECK(plan.entries[2].r == 43);
    CHECK(plan.entries[0].l == -9);
    CHECK(plan.entries[1].l == -30);
    CHECK(plan.entries[2].l == -52);
}

TEST_CASE("window growth is at least geometric for the endpoint-law field") {
    const TriSymbolSet sets = make_tri_symbol_set(
        SymbolSet::points({Cplx(kE, 0)}), SymbolSet::interval(-2.0, 2.0),
        SymbolSet::points({Cplx(kEInv, 0)}));
    DiagonalField field = DiagonalField::sample_iid(
        sets, 0, -64, 64, FieldOrientation::BiInfinite,
        {SampleLaw::Uniform, SampleLaw::ArcsineEndpoints, SampleLaw::Uniform});
    const Triple target{Cplx(kE, 0), Cplx(2, 0), Cplx(kEInv, 0)};
    const WindowPlan plan = plan_windows_bi(field, target, 5);
    for (std::size_t k = 1; k < plan.entries.size(); ++k) {
        const double prev = static_cast<double>(plan.entries[k - 1].r - plan.entries[k - 1].l + 1);
        const double size = static_cast<double>(plan.entries[k].r - plan.entries[k].l + 1);
        CHECK(size >= 1.3 * prev);
    }
}

TEST_CASE("horizon exceeded when the pattern never shows up") {
    const Triple target{Cplx(1, 0), Cplx(2, 0), Cplx(3, 0)};
    DiagonalField fixed = constant_field(Cplx(1, 0), Cplx(9, 0), Cplx(3, 0), -50, 50);
    CHECK_THROWS_AS(plan_windows_bi(fixed, target, 2), HorizonExceededError);

    const TriSymbolSet sets = make_tri_symbol_set(SymbolSet::points({Cplx(1, 0)}),
                                                  SymbolSet::points({Cplx(9, 0)}),
                                                  SymbolSet::points({Cplx(3, 0)}));
    DiagonalField gen = DiagonalField::sample_iid(sets, 1, -8, 8, FieldOrientation::BiInfinite);
    PlanOptions options;
    options.horizon = 2000;
    CHECK_THROWS_AS(plan_windows_bi(gen, target, 1, options), HorizonExceededError);
}

TEST_CASE("reflected-prefix matcher plans against the reversed pattern") {
    // prefix t_1..t_9; plant the reflected composite triples so that the
    // window at [hi-i] matches (u_{i+2}, v_{i+1}, w_i)
    std::vector<Triple> triples;
    for (int k = 1; k <= 120; ++k)
        triples.push_back({Cplx(k, 0), Cplx(10 + k, 0), Cplx(20 + k, 0)});
    const auto reflected_entry = [&](Index i) {
        return Triple{triples[static_cast<std::size_t>(i + 1)].u,
                      triples[static_cast<std::size_t>(i)].v,
                      i >= 1 ? triples[static_cast<std::size_t>(i - 1)].w : Cplx(99, 0)};
    };
    // n = 1 window at [30, 31], n = 2 window at [60, 62]
    triples[31] = reflected_entry(0);
    triples[30] = reflected_entry(1);
    triples[62] = reflected_entry(0);
    triples[61] = reflected_entry(1);
    triples[60] = reflected_entry(2);
    DiagonalField field = DiagonalField::explicit_field(1, std::move(triples),
                                                        FieldOrientation::SemiInfinite);
    PlanOptions options;
    options.matcher = reflected_prefix_matcher();
    options.horizon = 120;
    const WindowPlan plan = plan_windows_semi(field, Triple{}, 2, options);
    CHECK(plan.entries[0].r == 32); // vector slot 31 holds index 32
    CHECK(plan.entries[1].r == 63);
}

TEST_CASE("adaptive solve on a diagonal configuration divides by v") {
    const TriSymbolSet sets = make_tri_symbol_set(SymbolSet::points({Cplx(0, 0)}),
                                                  SymbolSet::points({Cplx(2, 0)}),
                                                  SymbolSet::points({Cplx(0, 0)}));
    DiagonalField field = DiagonalField::sample_iid(sets, 0, -16, 16,
                                                    FieldOrientation::BiInfinite);
    const RhsFn rhs = [](Index i) { return Cplx(std::sin(0.1 * i), 0.2); };
    const SolveReport report = solve_adaptive_bi(field, rhs, 4);
    CHECK(report.kase == FredholmCase::A);
    CHECK(report.shift_k == 0);
    for (const SolveRecord& rec : report.records) {
        for (Index i = rec.l; i <= rec.r; ++i)
            CHECK(std::abs(rec.solution[static_cast<std::size_t>(i - rec.l)] - rhs(i) / 2.0) <=
                  1e-14);
        if (rec.componentwise_delta) CHECK(*rec.componentwise_delta <= 1e-14);
    }
}

TEST_CASE("adaptive solve converges componentwise, all three cases") {
    const std::map<Index, Cplx> truth = central_solution(-2, 2);

    SUBCASE("case A (delta certificate)") {
        const TriSymbolSet sets = make_tri_symbol_set(
            SymbolSet::points({Cplx(0.5, 0)}), SymbolSet::points({Cplx(3, 0), Cplx(4, 0)}),
            SymbolSet::points({Cplx(0.25, 0)}));
        DiagonalField field = DiagonalField::sample_iid(sets, 11, -64, 64,
                                                        FieldOrientation::BiInfinite);
        const SolveReport report =
            solve_adaptive_bi(field, rhs_fn(manufacture_rhs(field, truth)), 8);
        CHECK(report.kase == FredholmCase::A);
        CHECK(report.shift_k == 0);
        check_manufactured(report, truth, 1e-6);
    }

    SUBCASE("case B (shift -1, backward substitution)") {
        const TriSymbolSet sets = make_tri_symbol_set(
            SymbolSet::points({Cplx(2, 0)}), SymbolSet::points({Cplx(0, 0), Cplx(0.5, 0)}),
            SymbolSet::points({Cplx(0.5, 0)}));
        DiagonalField field = DiagonalField::sample_iid(sets, 13, -64, 64,
                                                        FieldOrientation::BiInfinite);
        const SolveReport report =
            solve_adaptive_bi(field, rhs_fn(manufacture_rhs(field, truth)), 9);
        CHECK(report.kase == FredholmCase::B);
        CHECK(report.shift_k == -1);
        check_manufactured(report, truth, 1e-6);
    }

    SUBCASE("case C (shift +1, forward substitution)") {
        const TriSymbolSet sets = make_tri_symbol_set(
            SymbolSet::points({Cplx(0.5, 0)}), SymbolSet::points({Cplx(0, 0), Cplx(0.5, 0)}),
            SymbolSet::points({Cplx(2, 0)}));
        DiagonalField field = DiagonalField::sample_iid(sets, 17, -64, 64,
                                                        FieldOrientation::BiInfinite);
        const SolveReport report =
            solve_adaptive_bi(field, rhs_fn(manufacture_rhs(field, truth)), 9);
        CHECK(report.kase == FredholmCase::C);
        CHECK(report.shift_k == 1);
        check_manufactured(report, truth, 1e-6);
    }
}

TEST_CASE("semi-infinite adaptive solve") {
    const std::map<Index, Cplx> truth = central_solution(1, 5);
    const TriSymbolSet sets = make_tri_symbol_set(
        SymbolSet::points({Cplx(0.5, 0)}), SymbolSet::points({Cplx(3, 0), Cplx(4, 0)}),
        SymbolSet::points({Cplx(0.25, 0)}));
    DiagonalField field = DiagonalField::sample_iid(sets, 19, 1, 64,
                                                    FieldOrientation::SemiInfinite);
    const SolveReport report = solve_adaptive_semi(field, rhs_fn(manufacture_rhs(field, truth)), 8);
    CHECK(report.kase == FredholmCase::A);
    check_manufactured(report, truth, 1e-6);

    // a case-B configuration is refused
    const TriSymbolSet case_b = make_tri_symbol_set(
        SymbolSet::points({Cplx(2, 0)}), SymbolSet::points({Cplx(0, 0)}),
        SymbolSet::points({Cplx(0.5, 0)}));
    DiagonalField bad = DiagonalField::sample_iid(case_b, 1, 1, 32,
                                                  FieldOrientation::SemiInfinite);
    CHECK_THROWS_AS(solve_adaptive_semi(bad, rhs_fn({}), 3), NotFredholmError);
}

TEST_CASE("not-Fredholm configurations abort the adaptive solve") {
    const TriSymbolSet nf = make_tri_symbol_set(SymbolSet::points({Cplx(1, 0)}),
                                                SymbolSet::points({Cplx(2, 0)}),
                                                SymbolSet::points({Cplx(1, 0)}));
    DiagonalField field = DiagonalField::sample_iid(nf, 0, -16, 16,
                                                    FieldOrientation::BiInfinite);
    CHECK_THROWS_AS(solve_adaptive_bi(field, rhs_fn({}), 3), NotFredholmError);
}

TEST_CASE("full FSM records singular windows instead of failing") {
    // constant (1, 0, 1): every centered window is the path-graph adjacency
    // matrix of odd size, which is exactly singular
    DiagonalField field = constant_field(Cplx(1, 0), Cplx(0, 0), Cplx(1, 0), -16, 16);
    SolveOptions options;
    options.compute_inverse_norms = true;
    const SolveReport report = full_fsm(field, [](Index) { return Cplx(1, 0); }, 4, options);
    REQUIRE(report.records.size() == 4);
    for (const SolveRecord& rec : report.records) {
        CHECK(rec.singular);
        CHECK(rec.inverse_norm == std::numeric_limits<double>::infinity());
    }
}

TEST_CASE("full FSM under a delta certificate stays bounded") {
    const TriSymbolSet sets = make_tri_symbol_set(
        SymbolSet::points({Cplx(0.5, 0.25)}), SymbolSet::points({Cplx(0, 3), Cplx(0, 4)}),
        SymbolSet::points({Cplx(0.25, 0)}));
    const double bound = *delta_certificate(sets);
    DiagonalField field = DiagonalField::sample_iid(sets, 23, -40, 40,
                                                    FieldOrientation::BiInfinite);
    const SolveReport report = full_fsm(field, [](Index i) { return Cplx(1.0 / (1 + i * i), 0); },
                                        10);
    for (const SolveRecord& rec : report.records) {
        CHECK_FALSE(rec.singular);
        REQUIRE(rec.inverse_norm.has_value());
        CHECK(*rec.inverse_norm <= bound + 1e-8);
    }

    // identity-like field: solution equals the rhs restriction
    DiagonalField eye = constant_field(Cplx(0, 0), Cplx(1, 0), Cplx(0, 0), -12, 12);
    const RhsFn rhs = [](Index i) { return Cplx(0.5 * i, -0.25 * i); };
    const SolveReport id_report = full_fsm(eye, rhs, 3);
    for (const SolveRecord& rec : id_report.records)
        for (Index i = rec.l; i <= rec.r; ++i)
            CHECK(std::abs(rec.solution[static_cast<std::size_t>(i - rec.l)] - rhs(i)) <= 1e-15);
}

TEST_CASE("inverse norm paths") {
    DiagonalField diag2 = constant_field(Cplx(0, 0), Cplx(2, 0), Cplx(0, 0), -8, 8);
    CHECK(inverse_norm(BandedSystem(diag2, -4, 4, 0)) == doctest::Approx(0.5).epsilon(1e-10));

    // shifted constant sections approach the Toeplitz floor from below
    DiagonalField hn = constant_field(Cplx(kE, 0), Cplx(2, 0), Cplx(kEInv, 0), -512, 512);
    const double floor_200 = inverse_norm(BandedSystem(hn, -100, 99, -1));
    const double floor_640 = inverse_norm(BandedSystem(hn, -320, 319, -1));
    const double limit = 1.0 / (2.0 * std::cosh(1.0) - 2.0);
    CHECK(floor_200 <= limit + 1e-9);
    CHECK(floor_640 <= limit + 1e-9);
    CHECK(floor_640 >= floor_200 - 1e-9);
    CHECK(floor_640 == doctest::Approx(limit).epsilon(1e-3));

    // reflection preserves the inverse norm
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<Triple> triples;
    for (int k = 0; k < 40; ++k)
        triples.push_back({Cplx(dist(rng), dist(rng)), Cplx(dist(rng) + 3.0, dist(rng)),
                           Cplx(dist(rng), dist(rng))});
    DiagonalField rf = DiagonalField::explicit_field(0, std::move(triples),
                                                     FieldOrientation::BiInfinite);
    const BandedSystem sys(rf, 0, 39, 0);
    CHECK(inverse_norm(sys) == doctest::Approx(inverse_norm(sys.reflected())).epsilon(1e-8));

    // singular window reports the infinity marker
    DiagonalField zero = constant_field(Cplx(0, 0), Cplx(0, 0), Cplx(0, 0), 0, 4);
    CHECK(inverse_norm(BandedSystem(zero, 0, 4, 0)) == std::numeric_limits<double>::infinity());
}

TEST_CASE("stability cap") {
    const TriSymbolSet hn = make_tri_symbol_set(SymbolSet::points({Cplx(kE, 0)}),
                                                SymbolSet::interval(-2.0, 2.0),
                                                SymbolSet::points({Cplx(kEInv, 0)}));
    const Triple target{Cplx(kE, 0), Cplx(2, 0), Cplx(kEInv, 0)};
    const auto cap = stability_cap(hn, classify_sets(hn), target);
    REQUIRE(cap.has_value());
    CHECK(*cap == doctest::Approx(1.0 / (2.0 * std::sinh(1.0) - 2.0)).epsilon(1e-12));
    CHECK(*cap == doctest::Approx(2.8539).epsilon(1e-4));

    const TriSymbolSet delta_sets = make_tri_symbol_set(SymbolSet::points({Cplx(1, 0)}),
                                                        SymbolSet::points({Cplx(5, 0)}),
                                                        SymbolSet::points({Cplx(1, 0)}));
    CHECK(stability_cap(delta_sets, classify_sets(delta_sets),
                        Triple{Cplx(1, 0), Cplx(5, 0), Cplx(1, 0)}) ==
          doctest::Approx(1.0 / 3.0));

    const TriSymbolSet none = make_tri_symbol_set(SymbolSet::points({Cplx(1, 0)}),
                                                  SymbolSet::points({Cplx(0, 0)}),
                                                  SymbolSet::points({Cplx(1, 0)}));
    CHECK_FALSE(stability_cap(none, classify_sets(none), Triple{Cplx(1, 0), Cplx(0, 0),
                                                                Cplx(1, 0)})
                    .has_value());
}

TEST_CASE("shifted window solutions satisfy the interior unshifted equations") {
    const TriSymbolSet sets = make_tri_symbol_set(
        SymbolSet::points({Cplx(2, 0)}), SymbolSet::points({Cplx(0, 0), Cplx(0.5, 0)}),
        SymbolSet::points({Cplx(0.5, 0)}));
    DiagonalField field = DiagonalField::sample_iid(sets, 29, -64, 64,
                                                    FieldOrientation::BiInfinite);
    const RhsFn rhs = [](Index i) { return Cplx(1.0 / (1.0 + std::abs(static_cast<double>(i))), 0.1); };
    const SolveReport report = solve_adaptive_bi(field, rhs, 6);
    REQUIRE(report.shift_k == -1);
    for (const SolveRecord& rec : report.records) {
        // interior unshifted rows m: all three unknowns inside the window
        for (Index m = rec.l + 1; m <= rec.r - 1; ++m) {
            const Triple& t = field.at(m);
            const Cplx lhs = t.u * rec.solution[static_cast<std::size_t>(m - 1 - rec.l)] +
                             t.v * rec.solution[static_cast<std::size_t>(m - rec.l)] +
                             t.w * rec.solution[static_cast<std::size_t>(m + 1 - rec.l)];
            CHECK(std::abs(lhs - rhs(m)) <= 1e-9 * (1.0 + rec.rhs_inf));
        }
    }
}
