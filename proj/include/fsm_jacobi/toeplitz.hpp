#pragma once

#include "fsm_jacobi/types.hpp"

#include <utility>
#include <vector>

namespace fsm_jacobi {

/// Symbol of the constant-diagonal (Laurent/Toeplitz) operator with
/// diagonals (u, v, w): a(t) = u t + v + w t^{-1} on |t| = 1. The shifted
/// variants multiply by a power of t^{-1}, which leaves |a| on the unit
/// circle unchanged.
struct ToeplitzSymbol {
    Cplx u{};
    Cplx v{};
    Cplx w{};

    Cplx eval(Cplx t) const { return u * t + v + w / t; }

    /// {min, max} of |a(t)| over the unit circle: dense angular sampling
    /// followed by local ternary refinement.
    std::pair<double, double> modulus_range() const;
};

/// Samples of spec L(u,v,w) = v + E(u,w): the symbol curve at uniform angles.
std::vector<Cplx> laurent_spectrum(Cplx u, Cplx v, Cplx w, int samples);

/// Exact eigenvalues { u q + v + w q^{-1} : q^n = 1 } of the n-by-n
/// circulant with the three symbols, via roots of unity (no eigensolver).
std::vector<Cplx> circulant_spectrum(Cplx u, Cplx v, Cplx w, int n);

/// 1 / min_{|t|=1} |a(t)| for the shifted triangular Toeplitz operator whose
/// inverse is the Toeplitz operator with symbol a(t)^{-1}. Throws
/// SymbolVanishesError when the symbol (nearly) vanishes on the circle.
double toeplitz_inverse_norm_triangular(Cplx u, Cplx v, Cplx w, int shift_k);

} // namespace fsm_jacobi
