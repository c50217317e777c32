#include "fsm_jacobi/adaptive_fsm.hpp"

#include "fsm_jacobi/errors.hpp"
#include "fsm_jacobi/toeplitz.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace fsm_jacobi {

namespace {

void ensure_window(DiagonalField& field, Index lo, Index hi, Index horizon) {
    if (field.covers(lo, hi)) return;
    if (!field.extendable()) throw OutOfRangeError("window outside a fixed field");
    if (lo < -horizon || hi > horizon)
        throw HorizonExceededError("window outside the search horizon");
    Index new_lo = std::min(lo, field.lo());
    if (field.orientation() == FieldOrientation::SemiInfinite) new_lo = std::max<Index>(new_lo, 1);
    field = extend(field, new_lo, std::max(hi, field.hi()));
}

std::vector<Cplx> distinct_sorted(std::vector<Cplx> zs) {
    std::sort(zs.begin(), zs.end(), [](Cplx a, Cplx b) {
        return std::make_pair(a.real(), a.imag()) < std::make_pair(b.real(), b.imag());
    });
    zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
    return zs;
}

double inf_norm(std::span<const Cplx> v) {
    double m = 0.0;
    for (const Cplx& z : v) m = std::max(m, std::abs(z));
    return m;
}

SolveRecord solve_one_window(const DiagonalField& field, int n, Index l, Index r, int shift_k,
                             const RhsFn& rhs, const SolveOptions& options,
                             const SolveRecord* previous, bool tolerate_singular) {
    SolveRecord rec;
    rec.n = n;
    rec.l = l;
    rec.r = r;
    rec.size = r - l + 1;

    const BandedSystem sys(field, l, r, shift_k);
    std::vector<Cplx> b(static_cast<std::size_t>(rec.size));
    for (Index i = l; i <= r; ++i) b[static_cast<std::size_t>(i - l)] = rhs(i - shift_k);
    rec.rhs_inf = inf_norm(b);

    try {
        rec.solution = solve_window(sys, b);
    } catch (const ExactlySingularError&) {
        if (!tolerate_singular) throw;
        rec.singular = true;
        rec.residual_inf = std::numeric_limits<double>::quiet_NaN();
        rec.inverse_norm = std::numeric_limits<double>::infinity();
        return rec;
    }

    const std::vector<Cplx> ax = sys.apply(rec.solution);
    double res = 0.0;
    for (std::size_t k = 0; k < ax.size(); ++k) res = std::max(res, std::abs(ax[k] - b[k]));
    rec.residual_inf = res;

    if (options.compute_inverse_norms && rec.size <= options.inverse_norm_cap)
        rec.inverse_norm = inverse_norm(sys);

    if (previous && !previous->solution.empty()) {
        double d = 0.0;
        for (Index i = std::max(l, previous->l); i <= std::min(r, previous->r); ++i) {
            d = std::max(d, std::abs(rec.solution[static_cast<std::size_t>(i - l)] -
                                     previous->solution[static_cast<std::size_t>(i - previous->l)]));
        }
        rec.componentwise_delta = d;
    }
    return rec;
}

} // namespace

TriSymbolSet governing_sets_of(const DiagonalField& field) {
    if (const TriSymbolSet* s = field.governing_sets()) return *s;
    const std::vector<Triple> alphabet = field.verification_alphabet();
    std::vector<Cplx> us, vs, ws;
    us.reserve(alphabet.size());
    vs.reserve(alphabet.size());
    ws.reserve(alphabet.size());
    for (const Triple& t : alphabet) {
        us.push_back(t.u);
        vs.push_back(t.v);
        ws.push_back(t.w);
    }
    return make_tri_symbol_set(SymbolSet::points(distinct_sorted(std::move(us))),
                               SymbolSet::points(distinct_sorted(std::move(vs))),
                               SymbolSet::points(distinct_sorted(std::move(ws))));
}

Triple default_target(const DiagonalField& field) {
    if (const auto* iid = std::get_if<DiagonalField::IidGen>(&field.generator())) {
        const auto pick = [&](const SymbolSet& set, SampleLaw law) -> Cplx {
            if (const auto* iv = std::get_if<SymbolSet::RealInterval>(&set.variant())) {
                // arcsine mass concentrates at the endpoints; take the upper one
                if (law == SampleLaw::ArcsineEndpoints) return Cplx(iv->hi, 0.0);
                return Cplx(0.5 * (iv->lo + iv->hi), 0.0);
            }
            return set.samples().front();
        };
        return Triple{pick(iid->sets->U, iid->laws[0]), pick(iid->sets->V, iid->laws[1]),
                      pick(iid->sets->W, iid->laws[2])};
    }
    const auto alphabet = field.verification_alphabet();
    return alphabet.front();
}

SolveReport solve_adaptive_bi(DiagonalField& field, const RhsFn& rhs, int n_max,
                              const SolveOptions& options) {
    const TriSymbolSet sets = options.sets ? *options.sets : governing_sets_of(field);
    const FredholmClassification cls = classify_sets(sets, options.tol, options.budget);
    if (cls.kase == FredholmCase::NotFredholm)
        throw NotFredholmError("set configuration is not Fredholm; adaptive FSM refused");

    SolveReport report;
    report.kase = cls.kase;
    report.shift_k = *cls.plus_index;

    const Triple target = options.target ? *options.target : default_target(field);
    PlanOptions plan_options;
    plan_options.horizon = options.horizon;
    plan_options.matcher = options.matcher;
    report.plan = plan_windows_bi(field, target, n_max, plan_options);

    for (const WindowPlan::Entry& e : report.plan.entries) {
        ensure_window(field, e.l - 2, e.r + 2, options.horizon + 2);
        const SolveRecord* prev = report.records.empty() ? nullptr : &report.records.back();
        report.records.push_back(
            solve_one_window(field, e.n, e.l, e.r, report.shift_k, rhs, options, prev, false));
    }
    return report;
}

SolveReport solve_adaptive_semi(DiagonalField& field, const RhsFn& rhs, int n_max,
                                const SolveOptions& options) {
    if (field.orientation() != FieldOrientation::SemiInfinite)
        throw ConfigError("solve_adaptive_semi requires a semi-infinite field");
    const TriSymbolSet sets = options.sets ? *options.sets : governing_sets_of(field);
    const FredholmClassification cls = classify_sets(sets, options.tol, options.budget);
    if (cls.kase != FredholmCase::A)
        throw NotFredholmError("semi-infinite FSM requires case (a)");

    SolveReport report;
    report.kase = cls.kase;
    report.shift_k = 0;

    const Triple target = options.target ? *options.target : default_target(field);
    PlanOptions plan_options;
    plan_options.horizon = options.horizon;
    plan_options.matcher = options.matcher;
    report.plan = plan_windows_semi(field, target, n_max, plan_options);

    for (const WindowPlan::Entry& e : report.plan.entries) {
        ensure_window(field, std::max<Index>(1, e.l - 2), e.r + 2, options.horizon + 2);
        const SolveRecord* prev = report.records.empty() ? nullptr : &report.records.back();
        report.records.push_back(
            solve_one_window(field, e.n, e.l, e.r, 0, rhs, options, prev, false));
    }
    return report;
}

SolveReport full_fsm(DiagonalField& field, const RhsFn& rhs, int n_max,
                     const SolveOptions& options) {
    if (field.orientation() != FieldOrientation::BiInfinite)
        throw ConfigError("full FSM requires a bi-infinite field");

    SolveReport report;
    report.kase = FredholmCase::A; // no translation; classification not consulted
    report.shift_k = 0;
    report.plan.orientation = FieldOrientation::BiInfinite;
    for (int n = 1; n <= n_max; ++n) report.plan.entries.push_back({n, -n, n});

    for (const WindowPlan::Entry& e : report.plan.entries) {
        ensure_window(field, e.l - 1, e.r + 1, options.horizon);
        const SolveRecord* prev = report.records.empty() ? nullptr : &report.records.back();
        report.records.push_back(
            solve_one_window(field, e.n, e.l, e.r, 0, rhs, options, prev, true));
    }
    return report;
}

double inverse_norm(const BandedSystem& sys) {
    const Index n = sys.size();
    double sigma_min = 0.0;
    if (n <= 2000) {
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(sys.dense());
        sigma_min = svd.singularValues()(svd.singularValues().size() - 1);
    } else {
        sigma_min = sigma_min_banded(sys);
    }
    if (sigma_min <= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / sigma_min;
}

std::optional<double> stability_cap(const TriSymbolSet& sets,
                                    const FredholmClassification& classification, Triple target) {
    if (auto bound = delta_certificate(sets)) return bound;
    const auto dom = dominance_certificate(sets);
    if (!dom) return std::nullopt;
    if (classification.kase == FredholmCase::B && dom->which == DominantDiagonal::Sub) {
        const double floor = toeplitz_inverse_norm_triangular(target.u, target.v, target.w, -1);
        return std::max(1.0 / dom->gap, floor);
    }
    if (classification.kase == FredholmCase::C && dom->which == DominantDiagonal::Super) {
        const double floor = toeplitz_inverse_norm_triangular(target.u, target.v, target.w, +1);
        return std::max(1.0 / dom->gap, floor);
    }
    return std::nullopt;
}

} // namespace fsm_jacobi
