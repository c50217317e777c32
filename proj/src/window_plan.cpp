#include "fsm_jacobi/window_plan.hpp"

#include "fsm_jacobi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fsm_jacobi {

namespace {

// Materializes index m, growing the field in doubling steps up to the
// horizon cap.
const Triple& entry_at(DiagonalField& field, Index m, Index horizon) {
    if (m < field.lo() || m > field.hi()) {
        if (!field.extendable())
            throw HorizonExceededError("window search hit the boundary of a fixed field");
        if (std::llabs(m) > horizon)
            throw HorizonExceededError("window search passed the horizon cap");
        Index new_lo = field.lo();
        Index new_hi = field.hi();
        if (m > field.hi()) {
            new_hi = std::max(m + 64, std::max<Index>(field.hi(), Index{64}) * 2);
            new_hi = std::min(new_hi, horizon);
        }
        if (m < field.lo()) {
            new_lo = std::min(m - 64, std::min<Index>(field.lo(), Index{-64}) * 2);
            new_lo = std::max(new_lo, -horizon);
            if (field.orientation() == FieldOrientation::SemiInfinite) new_lo = 1;
        }
        field = extend(field, new_lo, new_hi);
    }
    return field.at(m);
}

bool qualifies(DiagonalField& field, Index m, const Triple& target, int n, Index horizon) {
    return triple_distance(entry_at(field, m, horizon), target) < 1.0 / n;
}

// Smallest r > r_prev whose clipped window {max(lo_bound, r-n), ..., r}
// qualifies entrywise; incremental run counting, one predicate call per index.
Index scan_right(DiagonalField& field, const Triple& target, int n, Index r_prev, Index lo_bound,
                 Index horizon) {
    Index m = std::max(lo_bound, r_prev + 1 - n);
    Index run = 0;
    for (;; ++m) {
        if (m > horizon) throw HorizonExceededError("right window search passed the horizon cap");
        run = qualifies(field, m, target, n, horizon) ? run + 1 : 0;
        const Index needed = std::min<Index>(n + 1, m - lo_bound + 1);
        if (m > r_prev && run >= needed) return m;
    }
}

// Largest l < l_prev whose window {l, ..., l+n} qualifies.
Index scan_left(DiagonalField& field, const Triple& target, int n, Index l_prev, Index horizon) {
    Index m = l_prev - 1 + n;
    Index run = 0;
    for (;; --m) {
        if (m < -horizon) throw HorizonExceededError("left window search passed the horizon cap");
        run = qualifies(field, m, target, n, horizon) ? run + 1 : 0;
        if (m <= l_prev - 1 && run >= n + 1) return m;
    }
}

// Generic variants for custom window matchers: one matcher call per
// candidate window.
Index scan_right_matcher(DiagonalField& field, const WindowMatcher& matcher, int n, Index r_prev,
                         Index lo_bound, Index horizon) {
    for (Index r = r_prev + 1;; ++r) {
        if (r > horizon) throw HorizonExceededError("right window search passed the horizon cap");
        const Index lo = std::max(lo_bound, r - n);
        entry_at(field, lo, horizon);
        entry_at(field, r, horizon);
        if (matcher(field, lo, r, n)) return r;
    }
}

Index scan_left_matcher(DiagonalField& field, const WindowMatcher& matcher, int n, Index l_prev,
                        Index horizon) {
    for (Index l = l_prev - 1;; --l) {
        if (l < -horizon) throw HorizonExceededError("left window search passed the horizon cap");
        entry_at(field, l, horizon);
        entry_at(field, l + n, horizon);
        if (matcher(field, l, l + n, n)) return l;
    }
}

} // namespace

WindowMatcher constant_target_matcher(Triple target) {
    return [target](const DiagonalField& field, Index lo, Index hi, int n) {
        for (Index i = lo; i <= hi; ++i)
            if (triple_distance(field.at(i), target) >= 1.0 / n) return false;
        return true;
    };
}

WindowMatcher reflected_prefix_matcher() {
    return [](const DiagonalField& field, Index lo, Index hi, int n) {
        const Index base = 1; // the half-axis prefix, regardless of orientation
        for (Index i = 0; i <= hi - lo; ++i) {
            const Triple& entry = field.at(hi - i);
            if (!field.covers(base, base + i + 1)) return false;
            double d = std::abs(entry.u - field.at(base + i + 1).u) +
                       std::abs(entry.v - field.at(base + i).v);
            if (i >= 1) d += std::abs(entry.w - field.at(base + i - 1).w);
            if (d >= 1.0 / n) return false;
        }
        return true;
    };
}

WindowPlan plan_windows_bi(DiagonalField& field, Triple target, int n_max,
                           const PlanOptions& options) {
    if (field.orientation() != FieldOrientation::BiInfinite)
        throw ConfigError("bi-infinite plan requires a bi-infinite field");
    if (n_max < 1) throw ConfigError("n_max must be >= 1");

    WindowPlan plan;
    plan.target = target;
    plan.orientation = FieldOrientation::BiInfinite;

    const Index lo_bound = std::numeric_limits<Index>::min() / 2;
    Index l_prev = 0; // l_0 = 0 = r_0
    Index r_prev = 0;
    for (int n = 1; n <= n_max; ++n) {
        Index r = 0;
        Index l = 0;
        if (options.matcher) {
            r = scan_right_matcher(field, options.matcher, n, r_prev, lo_bound, options.horizon);
            l = scan_left_matcher(field, options.matcher, n, l_prev, options.horizon);
        } else {
            r = scan_right(field, target, n, r_prev, lo_bound, options.horizon);
            l = scan_left(field, target, n, l_prev, options.horizon);
        }
        plan.entries.push_back({n, l, r});
        l_prev = l;
        r_prev = r;
    }

    // margin so the rows of any shifted truncation are materialized
    entry_at(field, plan.entries.back().l - 2, options.horizon + 2);
    entry_at(field, plan.entries.back().r + 2, options.horizon + 2);
    return plan;
}

WindowPlan plan_windows_semi(DiagonalField& field, Triple target, int n_max,
                             const PlanOptions& options) {
    if (field.orientation() != FieldOrientation::SemiInfinite)
        throw ConfigError("semi-infinite plan requires a semi-infinite field");
    if (n_max < 1) throw ConfigError("n_max must be >= 1");

    WindowPlan plan;
    plan.target = target;
    plan.orientation = FieldOrientation::SemiInfinite;

    Index r_prev = 0;
    for (int n = 1; n <= n_max; ++n) {
        const Index r = options.matcher
                            ? scan_right_matcher(field, options.matcher, n, r_prev, 1,
                                                 options.horizon)
                            : scan_right(field, target, n, r_prev, 1, options.horizon);
        plan.entries.push_back({n, 1, r});
        r_prev = r;
    }
    entry_at(field, plan.entries.back().r + 2, options.horizon + 2);
    return plan;
}

} // namespace fsm_jacobi
