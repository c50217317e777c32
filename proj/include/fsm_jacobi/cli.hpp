#pragma once

#include "fsm_jacobi/adaptive_fsm.hpp"
#include "fsm_jacobi/fredholm.hpp"

#include <string>
#include <vector>

namespace fsm_jacobi {

/// Exit codes: 0 success, 2 config error, 3 numerical failure
/// (singular / horizon / budget), 4 classification-NotFredholm abort.
int run_cli(std::vector<std::string> args);

/// Everything the Hatano-Nelson reproduction computes: the model constants,
/// the classification, the theoretical envelope and the solve table.
struct HatanoNelsonBundle {
    double g = 1.0;
    double a = 2.0;
    double c = 0.0;              ///< 2 cosh g
    double s = 0.0;              ///< 2 sinh g
    double toeplitz_floor = 0.0; ///< ||B_+^{-1}|| = 1/min|symbol|
    double cap = 0.0;            ///< dominance bound on limsup ||A_n^{-1}||
    FredholmClassification classification;
    SolveReport report; ///< empty when n_max = 0
};

/// Runs the reproduction pipeline: arcsine-endpoint potential on [-a, a],
/// sub/super diagonals e^{+-g}, classification, adaptive plan and shifted
/// solves. n_max = 0 computes constants and classification only.
HatanoNelsonBundle run_hatano_nelson(double g, double a, std::uint64_t seed, int n_max,
                                     Index inverse_norm_cap = 5000, Index horizon = 10'000'000);

/// Reduced-budget invariant suite behind `selftest`; returns the number of
/// failed checks and prints one line per suite.
int run_selftest(bool fast);

} // namespace fsm_jacobi
