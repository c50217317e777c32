#pragma once

#include "fsm_jacobi/diagonal_field.hpp"
#include "fsm_jacobi/errors.hpp"
#include "fsm_jacobi/types.hpp"

#include <span>
#include <vector>

#include <Eigen/Core>

namespace fsm_jacobi {

/// A finite truncation P_{l,r} S^k A P_{l,r} of a (possibly shifted)
/// tridiagonal operator. Row i carries row i-k of A, i.e. the values
/// (u_{i-k}, v_{i-k}, w_{i-k}) at column offsets (-k-1, -k, -k+1); couplings
/// across the window boundary are dropped (no periodic wrap).
class BandedSystem {
public:
    BandedSystem(const DiagonalField& field, Index l, Index r, int shift_k);

    Index l() const { return l_; }
    Index r() const { return r_; }
    int shift() const { return shift_; }
    Index size() const { return r_ - l_ + 1; }

    /// Band values by row (zero where the column falls outside the window).
    Cplx band_u(Index i) const { return band_u_[idx(i)]; } ///< column i - shift - 1
    Cplx band_v(Index i) const { return band_v_[idx(i)]; } ///< column i - shift
    Cplx band_w(Index i) const { return band_w_[idx(i)]; } ///< column i - shift + 1

    /// Matrix entry (i, j); zero outside the bands or the window.
    Cplx entry(Index i, Index j) const;

    /// Lower/upper bandwidth of the stored structure.
    int lower_bandwidth() const { return std::max(0, shift_ + 1); }
    int upper_bandwidth() const { return std::max(0, 1 - shift_); }

    /// y(i) = sum_j entry(i,j) x(j) with x indexed over [l, r].
    std::vector<Cplx> apply(std::span<const Cplx> x) const;

    /// Flip across the anti-diagonal: entry (i,j) -> entry (l+r-j, l+r-i).
    /// Only defined for unshifted systems.
    BandedSystem reflected() const;

    /// Dense counterpart (tests, eigen/SVD backends).
    Eigen::MatrixXcd dense() const;

private:
    BandedSystem() = default;

    std::size_t idx(Index i) const { return static_cast<std::size_t>(i - l_); }

    Index l_ = 0;
    Index r_ = 0;
    int shift_ = 0;
    std::vector<Cplx> band_u_;
    std::vector<Cplx> band_v_;
    std::vector<Cplx> band_w_;
};

/// Spec-facing alias for the BandedSystem constructor.
BandedSystem materialize(const DiagonalField& field, Index l, Index r, int shift_k);

} // namespace fsm_jacobi
