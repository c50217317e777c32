#pragma once

#include "fsm_jacobi/banded_system.hpp"
#include "fsm_jacobi/diagonal_field.hpp"
#include "fsm_jacobi/types.hpp"

#include <span>
#include <string>
#include <vector>

namespace fsm_jacobi {

enum class CloudKind { Eigenvalues, SingularValues, PseudospectrumLevel };

struct SpectralCloud {
    CloudKind kind = CloudKind::Eigenvalues;
    double eps = 0.0; ///< pseudospectrum level, when applicable
    std::vector<Cplx> points;
    std::string source;
};

/// All eigenvalues of the window (dense backend, size cap 4000). Selfadjoint
/// inputs (v real, w_i = conj(u_{i+1})) route to a symmetric tridiagonal
/// eigensolver and come back real.
SpectralCloud eigenvalues(const BandedSystem& sys);

/// Singular values as non-negative reals on the real axis (size cap 4000).
SpectralCloud singular_values(const BandedSystem& sys);

struct GridSpec {
    double x0 = -1.0;
    double x1 = 1.0;
    double y0 = -1.0;
    double y1 = 1.0;
    int nx = 201;
    int ny = 201;
};

struct PseudospectrumResult {
    GridSpec grid;
    std::vector<double> sigma_min; ///< row-major, y outer, x inner
    std::vector<SpectralCloud> levels;
};

/// sigma_min(A - lambda I) on every grid node via banded inverse iteration;
/// a node belongs to the eps-level set iff sigma_min <= eps (closed
/// convention). Size cap 1500.
PseudospectrumResult pseudospectrum_grid(const BandedSystem& sys, const GridSpec& grid,
                                         std::span<const double> eps_levels);

/// Hausdorff distance between finite non-empty point clouds:
/// max of the two directed max-min distances.
double hausdorff(std::span<const Cplx> m_cloud, std::span<const Cplx> n_cloud);

enum class StudyMode { Eigenvalues, SingularValues };

struct ConvergenceStudy {
    std::vector<Index> sizes;
    std::vector<double> distances;
    bool decreasing = false;    ///< strictly decreasing along the listed sizes
    double final_distance = 0.0;
};

/// Cloud-vs-target Hausdorff distances on growing windows [-n, n] (bi) or
/// [1, n] (semi). Tolerance judgments are left to the caller; no convergence
/// rate is guaranteed.
ConvergenceStudy convergence_study(DiagonalField& field, std::span<const Index> sizes,
                                   StudyMode mode, std::span<const Cplx> target);

} // namespace fsm_jacobi
