#include "fsm_jacobi/toeplitz.hpp"

#include "fsm_jacobi/errors.hpp"

#include <cmath>
#include <numbers>

namespace fsm_jacobi {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double modulus_at(const ToeplitzSymbol& s, double theta) {
    return std::abs(s.eval(Cplx(std::cos(theta), std::sin(theta))));
}

// Ternary refinement of an extremum already bracketed by dense sampling.
double refine(const ToeplitzSymbol& s, double lo, double hi, bool minimize) {
    while (hi - lo > 1e-12) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        const bool keep_left = minimize ? (modulus_at(s, m1) < modulus_at(s, m2))
                                        : (modulus_at(s, m1) > modulus_at(s, m2));
        if (keep_left)
            hi = m2;
        else
            lo = m1;
    }
    return modulus_at(s, 0.5 * (lo + hi));
}

} // namespace

std::pair<double, double> ToeplitzSymbol::modulus_range() const {
    constexpr int kDense = 4096;
    double best_min = modulus_at(*this, 0.0);
    double best_max = best_min;
    int arg_min = 0;
    int arg_max = 0;
    for (int k = 1; k < kDense; ++k) {
        const double m = modulus_at(*this, kTwoPi * k / kDense);
        if (m < best_min) {
            best_min = m;
            arg_min = k;
        }
        if (m > best_max) {
            best_max = m;
            arg_max = k;
        }
    }
    const double h = kTwoPi / kDense;
    const double lo = refine(*this, arg_min * h - h, arg_min * h + h, true);
    const double hi = refine(*this, arg_max * h - h, arg_max * h + h, false);
    return {std::min(lo, best_min), std::max(hi, best_max)};
}

std::vector<Cplx> laurent_spectrum(Cplx u, Cplx v, Cplx w, int samples) {
    if (samples < 3) throw InvalidInputError("laurent_spectrum requires samples >= 3");
    std::vector<Cplx> cloud;
    cloud.reserve(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        const double phi = kTwoPi * k / samples;
        const Cplx t(std::cos(phi), std::sin(phi));
        cloud.push_back(u * t + v + w / t);
    }
    return cloud;
}

std::vector<Cplx> circulant_spectrum(Cplx u, Cplx v, Cplx w, int n) {
    if (n < 3) throw InvalidInputError("circulant_spectrum requires n >= 3");
    std::vector<Cplx> eigs;
    eigs.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double phi = kTwoPi * k / n;
        const Cplx q(std::cos(phi), std::sin(phi));
        eigs.push_back(u * q + v + w / q);
    }
    return eigs;
}

double toeplitz_inverse_norm_triangular(Cplx u, Cplx v, Cplx w, int shift_k) {
    if (shift_k < -1 || shift_k > 1)
        throw UnsupportedShiftError("shift_k must be in {-1,0,+1}");
    const ToeplitzSymbol symbol{u, v, w};
    const double min_mod = symbol.modulus_range().first;
    if (min_mod <= kCaseTol)
        throw SymbolVanishesError("symbol vanishes on the unit circle; operator not invertible");
    return 1.0 / min_mod;
}

} // namespace fsm_jacobi
