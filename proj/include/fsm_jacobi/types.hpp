#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace fsm_jacobi {

using Cplx = std::complex<double>;
using Index = std::int64_t;

/// One matrix row worth of diagonal data: (u_i, v_i, w_i).
struct Triple {
    Cplx u{};
    Cplx v{};
    Cplx w{};

    bool operator==(const Triple&) const = default;
};

enum class FieldOrientation { BiInfinite, SemiInfinite };

/// Shared tolerance for boundary/degeneracy decisions (|f| near 0, |u| near |w|).
inline constexpr double kCaseTol = 1e-9;

/// Default discretization density for interval/circle symbol sets.
inline constexpr int kDefaultSampleCount = 257;

/// Sum metric on coefficient triples; also the step-1 window metric.
inline double triple_distance(const Triple& a, const Triple& b) {
    return std::abs(a.u - b.u) + std::abs(a.v - b.v) + std::abs(a.w - b.w);
}

} // namespace fsm_jacobi
