#include "fsm_jacobi/spectra.hpp"

#include "fsm_jacobi/band_solver.hpp"
#include "fsm_jacobi/errors.hpp"
#include "fsm_jacobi/parallel.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace fsm_jacobi {

namespace {

// Caps keep the dense backends at desk scale. Selfadjoint windows reduce to
// a real symmetric tridiagonal problem and afford a larger cap.
constexpr Index kEigenSizeCap = 4000;
constexpr Index kSelfadjointSizeCap = 16384;

bool is_selfadjoint_window(const BandedSystem& sys) {
    if (sys.shift() != 0) return false;
    double scale = 0.0;
    for (Index i = sys.l(); i <= sys.r(); ++i)
        scale = std::max({scale, std::abs(sys.band_u(i)), std::abs(sys.band_v(i)),
                          std::abs(sys.band_w(i))});
    const double tol = 1e-14 * std::max(scale, 1.0);
    for (Index i = sys.l(); i <= sys.r(); ++i) {
        if (std::abs(sys.band_v(i).imag()) > tol) return false;
        if (i < sys.r() && std::abs(sys.band_w(i) - std::conj(sys.band_u(i + 1))) > tol)
            return false;
    }
    return true;
}

std::string window_tag(const BandedSystem& sys) {
    return "window[" + std::to_string(sys.l()) + "," + std::to_string(sys.r()) +
           "]/shift=" + std::to_string(sys.shift());
}

} // namespace

SpectralCloud eigenvalues(const BandedSystem& sys) {
    if (sys.shift() != 0) throw UnsupportedShiftError("eigenvalues require an unshifted window");
    const bool selfadjoint = is_selfadjoint_window(sys);
    if (sys.size() > (selfadjoint ? kSelfadjointSizeCap : kEigenSizeCap))
        throw BudgetExceededError("eigenvalue window exceeds size cap");

    SpectralCloud cloud;
    cloud.kind = CloudKind::Eigenvalues;
    cloud.source = window_tag(sys);

    const auto n = static_cast<Eigen::Index>(sys.size());
    if (selfadjoint) {
        // unitary diagonal similarity reduces the Hermitian tridiagonal to a
        // real symmetric one with off-diagonals |u_{i+1}|
        Eigen::VectorXd diag(n), off(std::max<Eigen::Index>(n - 1, 1));
        for (Index i = sys.l(); i <= sys.r(); ++i) {
            diag(static_cast<Eigen::Index>(i - sys.l())) = sys.band_v(i).real();
            if (i < sys.r())
                off(static_cast<Eigen::Index>(i - sys.l())) = std::abs(sys.band_u(i + 1));
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, off.head(std::max<Eigen::Index>(n - 1, 0)),
                                  Eigen::EigenvaluesOnly);
        cloud.points.reserve(static_cast<std::size_t>(n));
        for (Eigen::Index k = 0; k < n; ++k) cloud.points.emplace_back(es.eigenvalues()(k), 0.0);
        return cloud;
    }

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(sys.dense(), false);
    cloud.points.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) cloud.points.push_back(es.eigenvalues()(k));
    return cloud;
}

SpectralCloud singular_values(const BandedSystem& sys) {
    if (sys.size() > kEigenSizeCap)
        throw BudgetExceededError("singular-value window exceeds size cap");

    SpectralCloud cloud;
    cloud.kind = CloudKind::SingularValues;
    cloud.source = window_tag(sys);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(sys.dense());
    cloud.points.reserve(static_cast<std::size_t>(svd.singularValues().size()));
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
        cloud.points.emplace_back(svd.singularValues()(k), 0.0);
    return cloud;
}

PseudospectrumResult pseudospectrum_grid(const BandedSystem& sys, const GridSpec& grid,
                                         std::span<const double> eps_levels) {
    if (sys.size() > 1500) throw BudgetExceededError("pseudospectrum window exceeds size cap");
    if (grid.nx < 2 || grid.ny < 2 || !(grid.x1 > grid.x0) || !(grid.y1 > grid.y0))
        throw InvalidGridError("pseudospectrum grid is degenerate");

    PseudospectrumResult result;
    result.grid = grid;
    result.sigma_min.assign(static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.ny),
                            0.0);

    parallel_for(result.sigma_min.size(), [&](std::size_t node) {
        const int iy = static_cast<int>(node) / grid.nx;
        const int ix = static_cast<int>(node) % grid.nx;
        const double x = grid.x0 + (grid.x1 - grid.x0) * ix / (grid.nx - 1);
        const double y = grid.y0 + (grid.y1 - grid.y0) * iy / (grid.ny - 1);
        result.sigma_min[node] = sigma_min_banded(sys, Cplx(x, y));
    });

    for (double eps : eps_levels) {
        SpectralCloud level;
        level.kind = CloudKind::PseudospectrumLevel;
        level.eps = eps;
        level.source = window_tag(sys);
        for (std::size_t node = 0; node < result.sigma_min.size(); ++node) {
            if (result.sigma_min[node] <= eps) {
                const int iy = static_cast<int>(node) / grid.nx;
                const int ix = static_cast<int>(node) % grid.nx;
                level.points.emplace_back(grid.x0 + (grid.x1 - grid.x0) * ix / (grid.nx - 1),
                                          grid.y0 + (grid.y1 - grid.y0) * iy / (grid.ny - 1));
            }
        }
        result.levels.push_back(std::move(level));
    }
    return result;
}

double hausdorff(std::span<const Cplx> m_cloud, std::span<const Cplx> n_cloud) {
    if (m_cloud.empty() || n_cloud.empty())
        throw InvalidInputError("hausdorff distance of an empty cloud");
    const auto directed = [](std::span<const Cplx> from, std::span<const Cplx> to) {
        double worst = 0.0;
        for (const Cplx& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const Cplx& q : to) best = std::min(best, std::abs(p - q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(m_cloud, n_cloud), directed(n_cloud, m_cloud));
}

ConvergenceStudy convergence_study(DiagonalField& field, std::span<const Index> sizes,
                                   StudyMode mode, std::span<const Cplx> target) {
    if (target.empty()) throw InvalidInputError("convergence study requires a target cloud");
    ConvergenceStudy study;
    for (std::size_t k = 1; k < sizes.size(); ++k) {
        if (sizes[k] <= sizes[k - 1]) throw ConfigError("study sizes must be ascending");
    }

    for (Index n : sizes) {
        const bool semi = field.orientation() == FieldOrientation::SemiInfinite;
        const Index l = semi ? 1 : -n;
        const Index r = n;
        if (!field.covers(l, r)) {
            if (!field.extendable()) throw OutOfRangeError("study window outside a fixed field");
            field = extend(field, std::min(field.lo(), l), std::max(field.hi(), r));
        }
        const BandedSystem sys(field, l, r, 0);
        const SpectralCloud cloud =
            mode == StudyMode::Eigenvalues ? eigenvalues(sys) : singular_values(sys);
        study.sizes.push_back(n);
        study.distances.push_back(hausdorff(cloud.points, target));
    }

    study.decreasing = study.distances.size() >= 2;
    for (std::size_t k = 1; k < study.distances.size(); ++k)
        study.decreasing = study.decreasing && study.distances[k] < study.distances[k - 1];
    study.final_distance = study.distances.empty() ? 0.0 : study.distances.back();
    return study;
}

} // namespace fsm_jacobi
