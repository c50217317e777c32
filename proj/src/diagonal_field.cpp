#include "fsm_jacobi/diagonal_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <tuple>

namespace fsm_jacobi {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double to_unit(std::uint64_t h) {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Counter-based draw: a pure function of (seed, diagonal tag, index), so
// extension is deterministic and order-independent.
Cplx draw_from_set(const SymbolSet& set, SampleLaw law, std::uint64_t seed, int tag, Index i) {
    std::uint64_t h = splitmix64(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(tag + 1)));
    h = splitmix64(h ^ static_cast<std::uint64_t>(i));
    const double r = to_unit(h);

    if (const auto* fp = std::get_if<SymbolSet::FinitePoints>(&set.variant())) {
        const auto n = fp->points.size();
        auto idx = static_cast<std::size_t>(r * static_cast<double>(n));
        if (idx >= n) idx = n - 1;
        return fp->points[idx];
    }
    if (const auto* iv = std::get_if<SymbolSet::RealInterval>(&set.variant())) {
        double t = r;
        if (law == SampleLaw::ArcsineEndpoints) {
            const double s = std::sin(std::numbers::pi * r / 2.0);
            t = s * s;
        }
        return Cplx(iv->lo + t * (iv->hi - iv->lo), 0.0);
    }
    const auto& ca = std::get<SymbolSet::CircleArc>(set.variant());
    const double a = ca.angle_lo + r * (ca.angle_hi - ca.angle_lo);
    return Cplx(ca.radius * std::cos(a), ca.radius * std::sin(a));
}

// Letter of the enumeration sequence at 0-based position `pos`: all words of
// length 1, then 2, ... over an alphabet of size m, lexicographic within each
// block.
std::size_t enumeration_letter(std::uint64_t pos, std::size_t m) {
    std::uint64_t block_start = 0;
    std::uint64_t words = m; // m^len
    for (std::uint64_t len = 1;; ++len) {
        const std::uint64_t block_size = len * words;
        if (pos < block_start + block_size) {
            const std::uint64_t offset = pos - block_start;
            const std::uint64_t word_index = offset / len;
            const std::uint64_t letter_pos = offset % len;
            // digit of word_index in base m, most significant first
            std::uint64_t divisor = 1;
            for (std::uint64_t j = 0; j + 1 < len - letter_pos; ++j) divisor *= m;
            return static_cast<std::size_t>((word_index / divisor) % m);
        }
        block_start += block_size;
        words *= m;
    }
}

bool triple_less(const Triple& a, const Triple& b) {
    return std::make_tuple(a.u.real(), a.u.imag(), a.v.real(), a.v.imag(), a.w.real(),
                           a.w.imag()) < std::make_tuple(b.u.real(), b.u.imag(), b.v.real(),
                                                         b.v.imag(), b.w.real(), b.w.imag());
}

} // namespace

std::vector<Triple> enumerate_words_sequence(const std::vector<Triple>& alphabet, Index length) {
    if (alphabet.empty()) throw InvalidSetError("enumeration alphabet is empty");
    std::vector<Triple> out;
    out.reserve(static_cast<std::size_t>(length));
    for (Index p = 0; p < length; ++p)
        out.push_back(alphabet[enumeration_letter(static_cast<std::uint64_t>(p), alphabet.size())]);
    return out;
}

DiagonalField::DiagonalField(Generator gen, Index lo, Index hi, FieldOrientation orientation)
    : generator_(std::move(gen)), lo_(lo), hi_(hi), orientation_(orientation) {
    if (lo_ > hi_) throw OutOfRangeError("field window requires lo <= hi");
    if (orientation_ == FieldOrientation::SemiInfinite && lo_ < 1)
        throw OutOfRangeError("semi-infinite fields start at index 1");
    if (orientation_ == FieldOrientation::BiInfinite && (lo_ > 0 || hi_ < 0))
        throw OutOfRangeError("bi-infinite field windows must straddle index 0");
    if (!std::holds_alternative<ExplicitGen>(generator_)) {
        triples_.reserve(static_cast<std::size_t>(hi_ - lo_ + 1));
        for (Index i = lo_; i <= hi_; ++i) triples_.push_back(generate(i));
    }
}

Triple DiagonalField::generate(Index i) const {
    if (const auto* we = std::get_if<WordEnumerationGen>(&generator_)) {
        // i >= 1 reads the enumeration forward; i <= 0 mirrors it so both
        // half-axes of a bi-infinite field carry the full enumeration.
        const std::uint64_t pos =
            i >= 1 ? static_cast<std::uint64_t>(i - 1) : static_cast<std::uint64_t>(-i);
        return we->alphabet[enumeration_letter(pos, we->alphabet.size())];
    }
    const auto& iid = std::get<IidGen>(generator_);
    Triple t;
    t.u = draw_from_set(iid.sets->U, iid.laws[0], iid.seed, 0, i);
    t.v = draw_from_set(iid.sets->V, iid.laws[1], iid.seed, 1, i);
    t.w = draw_from_set(iid.sets->W, iid.laws[2], iid.seed, 2, i);
    return t;
}

DiagonalField DiagonalField::explicit_field(Index lo, std::vector<Triple> triples,
                                            FieldOrientation orientation) {
    if (triples.empty()) throw OutOfRangeError("explicit field requires at least one triple");
    const Index hi = lo + static_cast<Index>(triples.size()) - 1;
    DiagonalField f(ExplicitGen{}, lo, hi, orientation);
    f.triples_ = std::move(triples);
    return f;
}

DiagonalField DiagonalField::word_enumeration(std::vector<Triple> alphabet, Index lo, Index hi,
                                              FieldOrientation orientation) {
    if (alphabet.empty()) throw InvalidSetError("enumeration alphabet is empty");
    return DiagonalField(WordEnumerationGen{std::move(alphabet)}, lo, hi, orientation);
}

DiagonalField DiagonalField::sample_iid(const TriSymbolSet& sets, std::uint64_t seed, Index lo,
                                        Index hi, FieldOrientation orientation,
                                        std::array<SampleLaw, 3> laws) {
    auto shared = std::make_shared<const TriSymbolSet>(sets);
    return DiagonalField(IidGen{std::move(shared), seed, laws}, lo, hi, orientation);
}

const Triple& DiagonalField::at(Index i) const {
    if (i < lo_ || i > hi_) throw OutOfRangeError("field index outside materialized window");
    return triples_[static_cast<std::size_t>(i - lo_)];
}

const TriSymbolSet* DiagonalField::governing_sets() const {
    if (const auto* iid = std::get_if<IidGen>(&generator_)) return iid->sets.get();
    return nullptr;
}

std::vector<Triple> DiagonalField::verification_alphabet() const {
    if (const auto* we = std::get_if<WordEnumerationGen>(&generator_)) return we->alphabet;
    if (const auto* iid = std::get_if<IidGen>(&generator_)) {
        const auto& us = iid->sets->U.samples();
        const auto& vs = iid->sets->V.samples();
        const auto& ws = iid->sets->W.samples();
        const std::size_t product = us.size() * vs.size() * ws.size();
        if (product > 1'000'000)
            throw BudgetExceededError("sampled alphabet product exceeds 1e6 triples");
        std::vector<Triple> alphabet;
        alphabet.reserve(product);
        for (Cplx u : us)
            for (Cplx v : vs)
                for (Cplx w : ws) alphabet.push_back({u, v, w});
        return alphabet;
    }
    std::set<Triple, bool (*)(const Triple&, const Triple&)> distinct(&triple_less);
    for (const Triple& t : triples_) distinct.insert(t);
    return std::vector<Triple>(distinct.begin(), distinct.end());
}

DiagonalField extend(const DiagonalField& field, Index new_lo, Index new_hi) {
    if (new_lo > field.lo_ || new_hi < field.hi_)
        throw OutOfRangeError("extend may only enlarge the window");
    if (new_lo == field.lo_ && new_hi == field.hi_) return field;
    if (!field.extendable())
        throw CannotExtendError("explicit fields cannot be extended");
    if (field.orientation_ == FieldOrientation::SemiInfinite && new_lo < 1)
        throw OutOfRangeError("semi-infinite fields start at index 1");

    DiagonalField out = field;
    out.lo_ = new_lo;
    out.hi_ = new_hi;
    out.triples_.clear();
    out.triples_.reserve(static_cast<std::size_t>(new_hi - new_lo + 1));
    for (Index i = new_lo; i < field.lo_; ++i) out.triples_.push_back(out.generate(i));
    out.triples_.insert(out.triples_.end(), field.triples_.begin(), field.triples_.end());
    for (Index i = field.hi_ + 1; i <= new_hi; ++i) out.triples_.push_back(out.generate(i));
    return out;
}

PseudoergodicReport verify_pseudoergodic(const DiagonalField& field, int word_len, double eps) {
    const std::vector<Triple> alphabet = field.verification_alphabet();
    const auto m = alphabet.size();

    double word_count = 0.0;
    double block = 1.0;
    for (int len = 1; len <= word_len; ++len) {
        block *= static_cast<double>(m);
        word_count += block;
    }
    if (std::pow(static_cast<double>(m), word_len) > 1e6 || word_count > 2e6)
        throw BudgetExceededError("word sweep exceeds the 1e6 budget");

    PseudoergodicReport report;
    report.word_len = word_len;
    report.eps = eps;
    report.all_found = true;

    std::vector<std::size_t> digits;
    for (int len = 1; len <= word_len; ++len) {
        digits.assign(static_cast<std::size_t>(len), 0);
        while (true) {
            WordWitness ww;
            ww.word.reserve(static_cast<std::size_t>(len));
            for (std::size_t d : digits) ww.word.push_back(alphabet[d]);

            // find k in the window with d(a_{k+i}, b_i) < eps for i = 1..len
            for (Index k = field.lo(); k + len <= field.hi(); ++k) {
                bool match = true;
                for (int i = 1; i <= len; ++i) {
                    if (triple_distance(field.at(k + i), ww.word[static_cast<std::size_t>(i - 1)]) >=
                        eps) {
                        match = false;
                        break;
                    }
                }
                if (match) {
                    ww.found = true;
                    ww.witness_k = k;
                    break;
                }
            }
            report.all_found = report.all_found && ww.found;
            report.words.push_back(std::move(ww));

            // next word in lexicographic order
            int pos = len - 1;
            while (pos >= 0 && ++digits[static_cast<std::size_t>(pos)] == m) {
                digits[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
    return report;
}

} // namespace fsm_jacobi
