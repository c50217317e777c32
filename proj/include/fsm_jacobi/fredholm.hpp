#pragma once

#include "fsm_jacobi/symbol_set.hpp"
#include "fsm_jacobi/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace fsm_jacobi {

enum class FredholmCase { A, B, C, NotFredholm };

/// Plus-index (index of the half-axis compression) for a definite case.
std::optional<int> plus_index_of(FredholmCase c);

const char* to_string(FredholmCase c);

struct TripleWitness {
    Cplx u{};
    Cplx v{};
    Cplx w{};
    double f = 0.0;       ///< ellipse_eval(u, w, v)
    double mod_gap = 0.0; ///< |u| - |w|
    FredholmCase verdict = FredholmCase::NotFredholm;
};

struct FredholmClassification {
    FredholmCase kase = FredholmCase::NotFredholm;
    std::optional<int> plus_index;
    std::vector<TripleWitness> witnesses; ///< offending triples when not definite
    bool consistent = false;              ///< every sampled triple yields the same case
    bool exhaustive = false;              ///< the whole sampled product fit in the budget
    std::int64_t triples_checked = 0;
};

/// Decision tree on one coefficient triple: exterior -> A; interior with
/// |u| > |w| -> B; interior with |u| < |w| -> C; anything within tol of a
/// decision boundary -> NotFredholm (zero is a failure verdict, never a
/// guess).
FredholmCase classify_triple(Cplx u, Cplx v, Cplx w, double tol = kCaseTol);

/// Classifies every sampled triple of U x V x W, stratified to always cover
/// the modulus-extremal samples, visiting at most `budget` triples. Any
/// boundary hit or disagreement yields NotFredholm with witnesses.
FredholmClassification classify_sets(const TriSymbolSet& sets, double tol = kCaseTol,
                                     std::int64_t budget = 100000);

/// 1/delta when delta > 0: a uniform bound on the inverse norms of ALL
/// operators over the sets (bi-infinite, semi-infinite and every finite
/// truncation); empty otherwise.
std::optional<double> delta_certificate(const TriSymbolSet& sets);

enum class DominantDiagonal { Sub, Super };

struct DominanceCertificate {
    DominantDiagonal which;
    double gap; ///< u_min - (v_max + w_max), resp. w_min - (v_max + u_max)
};

/// Certifies invertibility of every bi-infinite operator over the sets when
/// one off-diagonal strictly dominates the other two diagonals.
std::optional<DominanceCertificate> dominance_certificate(const TriSymbolSet& sets);

} // namespace fsm_jacobi
