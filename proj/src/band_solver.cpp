#include "fsm_jacobi/band_solver.hpp"

#include "fsm_jacobi/errors.hpp"

#include <algorithm>
#include <cmath>

namespace fsm_jacobi {

namespace {

double band_scale(const BandedSystem& sys) {
    double s = 0.0;
    for (Index i = sys.l(); i <= sys.r(); ++i) {
        s = std::max({s, std::abs(sys.band_u(i)), std::abs(sys.band_v(i)),
                      std::abs(sys.band_w(i))});
    }
    return s;
}

// Thomas algorithm; returns false when a pivot falls under the threshold and
// the caller should re-run with pivoting.
bool thomas(std::vector<Cplx> a, std::vector<Cplx> b, std::vector<Cplx> c, std::vector<Cplx> d,
            double pivot_floor, std::vector<Cplx>& x) {
    const std::size_t n = b.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(b[i - 1]) <= pivot_floor) return false;
        const Cplx m = a[i] / b[i - 1];
        b[i] -= m * c[i - 1];
        d[i] -= m * d[i - 1];
    }
    if (std::abs(b[n - 1]) <= pivot_floor) return false;
    x.resize(n);
    x[n - 1] = d[n - 1] / b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = (d[i] - c[i] * x[i + 1]) / b[i];
    return true;
}

// Tridiagonal LU with partial pivoting and second-superdiagonal fill.
std::vector<Cplx> pivoted_tridiagonal(std::vector<Cplx> a, std::vector<Cplx> b,
                                      std::vector<Cplx> c, std::vector<Cplx> d) {
    const std::size_t n = b.size();
    std::vector<Cplx> fill(n, Cplx{});
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(b[i]) >= std::abs(a[i + 1])) {
            if (b[i] == Cplx{}) throw ExactlySingularError("zero pivot in pivoted tridiagonal LU");
            const Cplx m = a[i + 1] / b[i];
            b[i + 1] -= m * c[i];
            d[i + 1] -= m * d[i];
        } else {
            const Cplx m = b[i] / a[i + 1];
            b[i] = a[i + 1];
            const Cplx tmp = b[i + 1];
            b[i + 1] = c[i] - m * tmp;
            c[i] = tmp;
            if (i + 2 < n) {
                fill[i] = c[i + 1];
                c[i + 1] = -m * fill[i];
            }
            std::swap(d[i], d[i + 1]);
            d[i + 1] -= m * d[i];
        }
    }
    if (b[n - 1] == Cplx{}) throw ExactlySingularError("zero pivot in pivoted tridiagonal LU");

    std::vector<Cplx> x(n);
    x[n - 1] = d[n - 1] / b[n - 1];
    if (n >= 2) {
        x[n - 2] = (d[n - 2] - c[n - 2] * x[n - 1]) / b[n - 2];
        for (std::size_t i = n - 2; i-- > 0;)
            x[i] = (d[i] - c[i] * x[i + 1] - fill[i] * x[i + 2]) / b[i];
    }
    return x;
}

} // namespace

std::vector<Cplx> solve_window(const BandedSystem& sys, std::span<const Cplx> rhs) {
    const auto n = static_cast<std::size_t>(sys.size());
    if (rhs.size() != n) throw DimensionError("solve_window: rhs length does not match window");

    const Index l = sys.l();
    if (sys.shift() == 0) {
        std::vector<Cplx> a(n), b(n), c(n), d(rhs.begin(), rhs.end());
        for (std::size_t k = 0; k < n; ++k) {
            const Index i = l + static_cast<Index>(k);
            a[k] = sys.band_u(i);
            b[k] = sys.band_v(i);
            c[k] = sys.band_w(i);
        }
        std::vector<Cplx> x;
        const double floor = 1e-12 * band_scale(sys);
        if (thomas(a, b, c, d, floor, x)) return x;
        return pivoted_tridiagonal(std::move(a), std::move(b), std::move(c), std::move(d));
    }

    std::vector<Cplx> x(n);
    if (sys.shift() == -1) {
        // upper triangular: diag band_u (col i), band_v (col i+1), band_w (col i+2)
        for (std::size_t k = n; k-- > 0;) {
            const Index i = l + static_cast<Index>(k);
            const Cplx pivot = sys.band_u(i);
            if (pivot == Cplx{})
                throw ExactlySingularError("zero diagonal in backward substitution");
            Cplx acc = rhs[k];
            if (k + 1 < n) acc -= sys.band_v(i) * x[k + 1];
            if (k + 2 < n) acc -= sys.band_w(i) * x[k + 2];
            x[k] = acc / pivot;
        }
    } else {
        // lower triangular: band_u (col i-2), band_v (col i-1), diag band_w (col i)
        for (std::size_t k = 0; k < n; ++k) {
            const Index i = l + static_cast<Index>(k);
            const Cplx pivot = sys.band_w(i);
            if (pivot == Cplx{})
                throw ExactlySingularError("zero diagonal in forward substitution");
            Cplx acc = rhs[k];
            if (k >= 1) acc -= sys.band_v(i) * x[k - 1];
            if (k >= 2) acc -= sys.band_u(i) * x[k - 2];
            x[k] = acc / pivot;
        }
    }
    return x;
}

void BandedLU::factor() {
    for (Index j = 0; j < n_; ++j) {
        // partial pivot among rows j .. j+kl
        Index piv = j;
        double best = std::abs(at(j, j));
        for (Index i = j + 1; i <= std::min(n_ - 1, j + kl_); ++i) {
            const double m = std::abs(at(i, j));
            if (m > best) {
                best = m;
                piv = i;
            }
        }
        pivots_[static_cast<std::size_t>(j)] = piv;
        if (best == 0.0) {
            singular_ = true;
            continue;
        }
        const Index cmax = std::min(n_ - 1, j + kw_);
        if (piv != j)
            for (Index c = j; c <= cmax; ++c) std::swap(at(j, c), at(piv, c));
        for (Index i = j + 1; i <= std::min(n_ - 1, j + kl_); ++i) {
            const Cplx m = at(i, j) / at(j, j);
            at(i, j) = m;
            for (Index c = j + 1; c <= cmax; ++c) at(i, c) -= m * at(j, c);
        }
    }
}

void BandedLU::solve(std::span<Cplx> b, bool conj_transpose) const {
    if (static_cast<Index>(b.size()) != n_) throw DimensionError("BandedLU::solve: size mismatch");
    if (singular_) throw ExactlySingularError("banded LU is singular");

    if (!conj_transpose) {
        // x = U^{-1} L^{-1} P b
        for (Index j = 0; j + 1 < n_; ++j) {
            const Index p = pivots_[static_cast<std::size_t>(j)];
            if (p != j) std::swap(b[static_cast<std::size_t>(j)], b[static_cast<std::size_t>(p)]);
            for (Index i = j + 1; i <= std::min(n_ - 1, j + kl_); ++i)
                b[static_cast<std::size_t>(i)] -= at(i, j) * b[static_cast<std::size_t>(j)];
        }
        for (Index j = n_ - 1; j >= 0; --j) {
            b[static_cast<std::size_t>(j)] /= at(j, j);
            for (Index i = std::max<Index>(0, j - kw_); i < j; ++i)
                b[static_cast<std::size_t>(i)] -= at(i, j) * b[static_cast<std::size_t>(j)];
        }
        return;
    }

    // The factorization interleaves swaps and eliminations:
    // A = P_0 L_0 P_1 L_1 ... U, so A^H x = b is solved by U^H z = b
    // followed by x = P_0 L_0^{-H} P_1 L_1^{-H} ... z applied right to left.
    for (Index j = 0; j < n_; ++j) {
        Cplx acc = b[static_cast<std::size_t>(j)];
        for (Index i = std::max<Index>(0, j - kw_); i < j; ++i)
            acc -= std::conj(at(i, j)) * b[static_cast<std::size_t>(i)];
        b[static_cast<std::size_t>(j)] = acc / std::conj(at(j, j));
    }
    for (Index j = n_ - 1; j >= 0; --j) {
        Cplx acc = b[static_cast<std::size_t>(j)];
        for (Index i = j + 1; i <= std::min(n_ - 1, j + kl_); ++i)
            acc -= std::conj(at(i, j)) * b[static_cast<std::size_t>(i)];
        b[static_cast<std::size_t>(j)] = acc;
        const Index p = pivots_[static_cast<std::size_t>(j)];
        if (p != j) std::swap(b[static_cast<std::size_t>(j)], b[static_cast<std::size_t>(p)]);
    }
}

double sigma_min_banded(const BandedSystem& sys, Cplx lambda, double rel_tol, int max_iter) {
    const Index n = sys.size();
    const Index l = sys.l();
    const int kl = sys.lower_bandwidth();
    const int ku = sys.upper_bandwidth();

    BandedLU lu(n, kl, ku, [&](Index i, Index j) {
        Cplx e = sys.entry(l + i, l + j);
        if (i == j) e -= lambda;
        return e;
    });
    if (lu.singular()) return 0.0;

    // deterministic pseudo-random start vector
    std::vector<Cplx> v(static_cast<std::size_t>(n));
    std::uint64_t state = 0x2545F4914F6CDD1DULL;
    double norm = 0.0;
    for (auto& z : v) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        const double re = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        const double im = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
        z = Cplx(re, im);
        norm += std::norm(z);
    }
    norm = std::sqrt(norm);
    for (auto& z : v) z /= norm;

    double prev = 0.0;
    int settled = 0;
    for (int it = 0; it < max_iter; ++it) {
        // y = (A^H A)^{-1} v = A^{-1} A^{-H} v
        std::vector<Cplx> y = v;
        lu.solve(y, true);
        lu.solve(y, false);
        // Rayleigh quotient of the SPD inverse normal operator
        Cplx quot{};
        double ynorm = 0.0;
        for (std::size_t k = 0; k < y.size(); ++k) {
            quot += std::conj(v[k]) * y[k];
            ynorm += std::norm(y[k]);
        }
        ynorm = std::sqrt(ynorm);
        if (!std::isfinite(ynorm) || ynorm == 0.0 || quot.real() <= 0.0) return 0.0;
        const double sigma = 1.0 / std::sqrt(quot.real());
        for (auto& z : y) z /= ynorm;
        v = std::move(y);
        if (it > 0 && std::abs(sigma - prev) <= 0.01 * rel_tol * sigma) {
            if (++settled >= 2) return sigma;
        } else {
            settled = 0;
        }
        prev = sigma;
    }
    return prev;
}

} // namespace fsm_jacobi
