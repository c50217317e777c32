#pragma once

#include "fsm_jacobi/banded_system.hpp"
#include "fsm_jacobi/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace fsm_jacobi {

/// Direct solve of a square window system.
///
/// shift 0 runs the Thomas algorithm and falls back to partially pivoted
/// banded LU when a pivot drops below 1e-12 times the band scale; shift -1
/// is backward substitution on the upper-triangular bands, shift +1 forward
/// substitution. Throws ExactlySingularError when a required pivot is zero.
std::vector<Cplx> solve_window(const BandedSystem& sys, std::span<const Cplx> rhs);

/// LU factorization with partial pivoting of a banded matrix with lower
/// bandwidth kl and upper bandwidth ku (LAPACK-style band storage with kl
/// fill rows). Supports solves with A and with its conjugate transpose.
class BandedLU {
public:
    /// Factor the matrix given by an entry accessor over rows/cols [0, n).
    template <typename EntryFn>
    BandedLU(Index n, int kl, int ku, EntryFn&& entry)
        : n_(n), kl_(kl), ku_(ku), kw_(kl + ku),
          ab_(static_cast<std::size_t>(2 * kl + ku + 1) * static_cast<std::size_t>(n)),
          pivots_(static_cast<std::size_t>(n)) {
        for (Index j = 0; j < n_; ++j)
            for (Index i = std::max<Index>(0, j - ku_); i <= std::min(n_ - 1, j + kl_); ++i)
                at(i, j) = entry(i, j);
        factor();
    }

    bool singular() const { return singular_; }

    /// Solves A x = b (conj_transpose = false) or A^H x = b (true) in place.
    void solve(std::span<Cplx> b, bool conj_transpose = false) const;

private:
    void factor();

    Cplx& at(Index i, Index j) {
        return ab_[static_cast<std::size_t>(kl_ + ku_ + i - j) * static_cast<std::size_t>(n_) +
                   static_cast<std::size_t>(j)];
    }
    const Cplx& at(Index i, Index j) const {
        return ab_[static_cast<std::size_t>(kl_ + ku_ + i - j) * static_cast<std::size_t>(n_) +
                   static_cast<std::size_t>(j)];
    }

    Index n_;
    int kl_;
    int ku_;
    int kw_; ///< working upper bandwidth after pivot fill
    std::vector<Cplx> ab_;
    std::vector<Index> pivots_;
    bool singular_ = false;
};

/// Smallest singular value of (sys - lambda I), computed by power iteration
/// on the inverse normal operator with banded-LU solves. Returns 0 when the
/// shifted matrix is numerically singular.
double sigma_min_banded(const BandedSystem& sys, Cplx lambda = {}, double rel_tol = 1e-6,
                        int max_iter = 20000);

} // namespace fsm_jacobi
