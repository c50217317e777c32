#include "fsm_jacobi/banded_system.hpp"

#include <algorithm>

namespace fsm_jacobi {

BandedSystem::BandedSystem(const DiagonalField& field, Index l, Index r, int shift_k)
    : l_(l), r_(r), shift_(shift_k) {
    if (l > r) throw OutOfRangeError("window requires l <= r");
    if (shift_k < -1 || shift_k > 1) throw UnsupportedShiftError("shift_k must be in {-1,0,+1}");
    if (!field.covers(l - shift_k, r - shift_k))
        throw OutOfRangeError("field window does not cover the requested rows");

    const auto n = static_cast<std::size_t>(r - l + 1);
    band_u_.resize(n);
    band_v_.resize(n);
    band_w_.resize(n);
    for (Index i = l; i <= r; ++i) {
        const Triple& t = field.at(i - shift_k);
        const Index cu = i - shift_k - 1;
        const Index cv = i - shift_k;
        const Index cw = i - shift_k + 1;
        band_u_[idx(i)] = (cu >= l && cu <= r) ? t.u : Cplx{};
        band_v_[idx(i)] = (cv >= l && cv <= r) ? t.v : Cplx{};
        band_w_[idx(i)] = (cw >= l && cw <= r) ? t.w : Cplx{};
    }
}

Cplx BandedSystem::entry(Index i, Index j) const {
    if (i < l_ || i > r_ || j < l_ || j > r_) return {};
    const Index offset = j - (i - shift_);
    if (offset == -1) return band_u_[idx(i)];
    if (offset == 0) return band_v_[idx(i)];
    if (offset == 1) return band_w_[idx(i)];
    return {};
}

std::vector<Cplx> BandedSystem::apply(std::span<const Cplx> x) const {
    if (static_cast<Index>(x.size()) != size())
        throw DimensionError("apply: vector length does not match the window");
    std::vector<Cplx> y(x.size());
    for (Index i = l_; i <= r_; ++i) {
        Cplx acc{};
        const Index cu = i - shift_ - 1;
        const Index cv = i - shift_;
        const Index cw = i - shift_ + 1;
        if (cu >= l_ && cu <= r_) acc += band_u_[idx(i)] * x[static_cast<std::size_t>(cu - l_)];
        if (cv >= l_ && cv <= r_) acc += band_v_[idx(i)] * x[static_cast<std::size_t>(cv - l_)];
        if (cw >= l_ && cw <= r_) acc += band_w_[idx(i)] * x[static_cast<std::size_t>(cw - l_)];
        y[idx(i)] = acc;
    }
    return y;
}

BandedSystem BandedSystem::reflected() const {
    if (shift_ != 0) throw UnsupportedShiftError("reflection is defined for unshifted systems");
    BandedSystem out;
    out.l_ = l_;
    out.r_ = r_;
    out.shift_ = 0;
    const auto n = band_v_.size();
    out.band_u_.resize(n);
    out.band_v_.resize(n);
    out.band_w_.resize(n);
    // entry (i,j) -> entry (l+r-j, l+r-i): main diagonal reversed, sub and
    // super bands exchanged and reversed.
    for (Index i = l_; i <= r_; ++i) {
        out.band_v_[out.idx(i)] = band_v_[idx(l_ + r_ - i)];
        out.band_u_[out.idx(i)] = (i > l_) ? band_u_[idx(l_ + r_ - i + 1)] : Cplx{};
        out.band_w_[out.idx(i)] = (i < r_) ? band_w_[idx(l_ + r_ - i - 1)] : Cplx{};
    }
    return out;
}

Eigen::MatrixXcd BandedSystem::dense() const {
    const auto n = static_cast<Eigen::Index>(size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (Index i = l_; i <= r_; ++i) {
        for (Index j = std::max(l_, i - shift_ - 1); j <= std::min(r_, i - shift_ + 1); ++j) {
            m(static_cast<Eigen::Index>(i - l_), static_cast<Eigen::Index>(j - l_)) = entry(i, j);
        }
    }
    return m;
}

BandedSystem materialize(const DiagonalField& field, Index l, Index r, int shift_k) {
    return BandedSystem(field, l, r, shift_k);
}

} // namespace fsm_jacobi
