#pragma once

#include "fsm_jacobi/errors.hpp"
#include "fsm_jacobi/symbol_set.hpp"
#include "fsm_jacobi/types.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

namespace fsm_jacobi {

/// Per-diagonal sampling law for the i.i.d. generator. ArcsineEndpoints is
/// Beta(1/2,1/2) rescaled to a real interval (density rising towards the
/// endpoints); it falls back to Uniform on non-interval sets.
enum class SampleLaw { Uniform, ArcsineEndpoints };

/// First `length` entries of the concatenation of all alphabet words of
/// length 1, then 2, then 3, ... in lexicographic order within each block.
/// The infinite sequence is pseudoergodic over the alphabet by construction.
std::vector<Triple> enumerate_words_sequence(const std::vector<Triple>& alphabet, Index length);

/// A realized window of the diagonal triples (u_i, v_i, w_i), i in [lo, hi],
/// together with the generator that produced it. Fields are immutable value
/// snapshots; extension returns a new field and never rewrites history.
class DiagonalField {
public:
    struct ExplicitGen {};
    struct WordEnumerationGen {
        std::vector<Triple> alphabet;
    };
    struct IidGen {
        std::shared_ptr<const TriSymbolSet> sets;
        std::uint64_t seed;
        std::array<SampleLaw, 3> laws;
    };
    using Generator = std::variant<ExplicitGen, WordEnumerationGen, IidGen>;

    static DiagonalField explicit_field(Index lo, std::vector<Triple> triples,
                                        FieldOrientation orientation);
    static DiagonalField word_enumeration(std::vector<Triple> alphabet, Index lo, Index hi,
                                          FieldOrientation orientation);
    static DiagonalField sample_iid(const TriSymbolSet& sets, std::uint64_t seed, Index lo,
                                    Index hi, FieldOrientation orientation,
                                    std::array<SampleLaw, 3> laws = {SampleLaw::Uniform,
                                                                     SampleLaw::Uniform,
                                                                     SampleLaw::Uniform});

    Index lo() const { return lo_; }
    Index hi() const { return hi_; }
    FieldOrientation orientation() const { return orientation_; }
    const Generator& generator() const { return generator_; }

    const Triple& at(Index i) const;
    bool covers(Index lo, Index hi) const { return lo >= lo_ && hi <= hi_; }

    bool extendable() const { return !std::holds_alternative<ExplicitGen>(generator_); }

    /// Governing sets if the generator carries them (IID); null otherwise.
    const TriSymbolSet* governing_sets() const;

    /// Finite alphabet used for membership and word verification: the
    /// generator alphabet, the sampled product for IID, or the distinct
    /// materialized triples for explicit fields.
    std::vector<Triple> verification_alphabet() const;

private:
    DiagonalField(Generator gen, Index lo, Index hi, FieldOrientation orientation);

    Triple generate(Index i) const;

    friend DiagonalField extend(const DiagonalField& field, Index new_lo, Index new_hi);

    Generator generator_;
    Index lo_;
    Index hi_;
    FieldOrientation orientation_;
    std::vector<Triple> triples_; // index i stored at triples_[i - lo_]
};

/// Enlarged copy of the field; previously materialized entries are
/// bit-identical. Throws CannotExtendError for explicit fields.
DiagonalField extend(const DiagonalField& field, Index new_lo, Index new_hi);

struct WordWitness {
    std::vector<Triple> word;
    bool found = false;
    Index witness_k = 0; ///< first k with d(a_{k+i}, b_i) < eps for all i (1-based offsets)
};

struct PseudoergodicReport {
    int word_len = 0;
    double eps = 0.0;
    std::vector<WordWitness> words;
    bool all_found = false; ///< over a finite window "false" means "not yet observed"
};

/// Scans the materialized window for every alphabet word of length <=
/// word_len. Throws BudgetExceededError when the word count exceeds 1e6.
PseudoergodicReport verify_pseudoergodic(const DiagonalField& field, int word_len, double eps);

} // namespace fsm_jacobi
