#pragma once

#include "fsm_jacobi/band_solver.hpp"
#include "fsm_jacobi/banded_system.hpp"
#include "fsm_jacobi/diagonal_field.hpp"
#include "fsm_jacobi/fredholm.hpp"
#include "fsm_jacobi/window_plan.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace fsm_jacobi {

/// Right-hand side as a function over the full index axis (entries outside
/// any finite support are simply zero).
using RhsFn = std::function<Cplx(Index)>;

struct SolveRecord {
    int n = 0;
    Index l = 0;
    Index r = 0;
    Index size = 0;
    std::vector<Cplx> solution; ///< indexed over the window [l, r]
    double residual_inf = 0.0;
    double rhs_inf = 0.0;
    std::optional<double> inverse_norm;        ///< empty = skipped by the size cap
    std::optional<double> componentwise_delta; ///< max change vs previous window overlap
    bool singular = false;                     ///< full-FSM diagnostics only
};

struct SolveReport {
    WindowPlan plan;
    FredholmCase kase = FredholmCase::A;
    int shift_k = 0;
    std::vector<SolveRecord> records;
};

struct SolveOptions {
    Index inverse_norm_cap = 5000; ///< windows larger than this report "skipped"
    Index horizon = 10'000'000;
    double tol = kCaseTol;
    std::int64_t budget = 100000;
    std::optional<Triple> target;       ///< default: most probable sampled triple
    std::optional<TriSymbolSet> sets;   ///< override the field's governing sets
    WindowMatcher matcher = {};         ///< optional plan hook
    bool compute_inverse_norms = true;
};

/// Governing sets of a field: the generator's sets for IID fields, finite
/// sets assembled from the alphabet/window otherwise.
TriSymbolSet governing_sets_of(const DiagonalField& field);

/// Default step-1 target: the most probable sampled triple under the
/// configured laws (endpoint mode for arcsine laws), first sample otherwise.
Triple default_target(const DiagonalField& field);

/// Algorithm steps 1-3 for bi-infinite pseudoergodic systems: plan windows,
/// classify, translate by the plus-index, solve every window directly.
/// Throws NotFredholmError when classification is not definite.
SolveReport solve_adaptive_bi(DiagonalField& field, const RhsFn& rhs, int n_max,
                              const SolveOptions& options = {});

/// Semi-infinite variant: windows [1, r_n], no translation; requires case (a).
SolveReport solve_adaptive_semi(DiagonalField& field, const RhsFn& rhs, int n_max,
                                const SolveOptions& options = {});

/// Baseline full FSM with fixed windows l_n = -n, r_n = n and no translation.
/// Stability is not guaranteed; singular windows are recorded, not fatal.
SolveReport full_fsm(DiagonalField& field, const RhsFn& rhs, int n_max,
                     const SolveOptions& options = {});

/// Spectral-norm of the inverse, 1/sigma_min at p = 2: dense SVD up to size
/// 2000, banded inverse iteration beyond. Returns +infinity when singular.
double inverse_norm(const BandedSystem& sys);

/// Best available theoretical cap on sup_n ||A_n^{-1}||: 1/delta when
/// delta > 0, otherwise the dominance bound combined with the Toeplitz
/// floor of the target symbol. Empty when no certificate applies.
std::optional<double> stability_cap(const TriSymbolSet& sets,
                                    const FredholmClassification& classification, Triple target);

} // namespace fsm_jacobi
