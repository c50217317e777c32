#pragma once

#include "fsm_jacobi/diagonal_field.hpp"
#include "fsm_jacobi/types.hpp"

#include <functional>
#include <vector>

namespace fsm_jacobi {

/// Adaptive cut-off sequences (l_n) and (r_n): l strictly decreasing, r
/// strictly increasing, anchored at l_0 = r_0 = 0 (bi-infinite) resp.
/// l_n = 1 (semi-infinite). Every entry satisfies the step-1 window
/// condition of the planning matcher verbatim.
struct WindowPlan {
    struct Entry {
        int n;
        Index l;
        Index r;
    };
    Triple target{};
    FieldOrientation orientation = FieldOrientation::BiInfinite;
    std::vector<Entry> entries;
};

/// Window qualification predicate: true when the field entries on [lo, hi]
/// (hi - lo = n) qualify at level n. Plans may target any fixed
/// finite-window predicate through this hook.
using WindowMatcher = std::function<bool(const DiagonalField&, Index lo, Index hi, int n)>;

/// Step-1 matcher: |u_i - u| + |v_i - v| + |w_i - w| < 1/n on the window.
WindowMatcher constant_target_matcher(Triple target);

/// Matcher for the reflected (reversed-prefix) aim: window entry at hi - i
/// must be within 1/n of (u_{i+2}, v_{i+1}, w_i) of the field's own prefix
/// (the w-term is skipped at i = 0 where the corner has no w).
WindowMatcher reflected_prefix_matcher();

struct PlanOptions {
    Index horizon = 10'000'000;    ///< per-side search cap before HorizonExceeded
    WindowMatcher matcher = {};    ///< defaults to constant_target_matcher(target)
};

/// Bi-infinite plan: for each n, r_n is the smallest integer > r_{n-1} whose
/// window {r_n - n, ..., r_n} qualifies, l_n the largest integer < l_{n-1}
/// whose window {l_n, ..., l_n + n} qualifies. The field is extended on
/// demand (in doubling steps, capped by the horizon).
WindowPlan plan_windows_bi(DiagonalField& field, Triple target, int n_max,
                           const PlanOptions& options = {});

/// Semi-infinite plan: right side only, l_n = 1 throughout.
WindowPlan plan_windows_semi(DiagonalField& field, Triple target, int n_max,
                             const PlanOptions& options = {});

} // namespace fsm_jacobi
