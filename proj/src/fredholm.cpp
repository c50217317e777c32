#include "fsm_jacobi/fredholm.hpp"

#include "fsm_jacobi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace fsm_jacobi {

namespace {

// Stratified selection of at most `want` sample indices: the modulus-extremal
// samples first (they catch boundary failures first), then a uniform stride.
std::vector<std::size_t> stratified_indices(const std::vector<Cplx>& samples, std::size_t want) {
    const std::size_t n = samples.size();
    if (want >= n) {
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = i;
        return all;
    }
    std::set<std::size_t> chosen;
    std::size_t arg_min = 0;
    std::size_t arg_max = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(samples[i]) < std::abs(samples[arg_min])) arg_min = i;
        if (std::abs(samples[i]) > std::abs(samples[arg_max])) arg_max = i;
    }
    chosen.insert(arg_min);
    chosen.insert(arg_max);
    chosen.insert(0);
    chosen.insert(n - 1);
    for (std::size_t k = 0; chosen.size() < want && k < want; ++k)
        chosen.insert(k * (n - 1) / (want - 1));
    while (chosen.size() > want) chosen.erase(std::prev(chosen.end()));
    return {chosen.begin(), chosen.end()};
}

} // namespace

std::optional<int> plus_index_of(FredholmCase c) {
    switch (c) {
    case FredholmCase::A: return 0;
    case FredholmCase::B: return -1;
    case FredholmCase::C: return 1;
    case FredholmCase::NotFredholm: return std::nullopt;
    }
    return std::nullopt;
}

const char* to_string(FredholmCase c) {
    switch (c) {
    case FredholmCase::A: return "A";
    case FredholmCase::B: return "B";
    case FredholmCase::C: return "C";
    case FredholmCase::NotFredholm: return "NotFredholm";
    }
    return "NotFredholm";
}

FredholmCase classify_triple(Cplx u, Cplx v, Cplx w, double tol) {
    const double f = ellipse_eval(u, w, v);
    if (f > tol) return FredholmCase::A;
    if (f < -tol) {
        const double gap = std::abs(u) - std::abs(w);
        if (gap > tol) return FredholmCase::B;
        if (gap < -tol) return FredholmCase::C;
    }
    return FredholmCase::NotFredholm;
}

FredholmClassification classify_sets(const TriSymbolSet& sets, double tol, std::int64_t budget) {
    if (budget < 64) throw BudgetExceededError("classification budget below the minimal cover");

    const auto& us = sets.U.samples();
    const auto& vs = sets.V.samples();
    const auto& ws = sets.W.samples();

    const double full = static_cast<double>(us.size()) * static_cast<double>(vs.size()) *
                        static_cast<double>(ws.size());
    std::size_t per_set = us.size();
    if (full > static_cast<double>(budget)) {
        per_set = static_cast<std::size_t>(std::cbrt(static_cast<double>(budget)));
        per_set = std::max<std::size_t>(per_set, 4);
    }

    const auto ui = stratified_indices(us, full > static_cast<double>(budget) ? per_set : us.size());
    const auto vi = stratified_indices(vs, full > static_cast<double>(budget) ? per_set : vs.size());
    const auto wi = stratified_indices(ws, full > static_cast<double>(budget) ? per_set : ws.size());

    FredholmClassification out;
    out.exhaustive = ui.size() == us.size() && vi.size() == vs.size() && wi.size() == ws.size();
    out.consistent = true;

    bool have_case = false;
    FredholmCase agreed = FredholmCase::NotFredholm;
    TripleWitness first_witness;

    for (std::size_t a : ui) {
        for (std::size_t b : vi) {
            for (std::size_t c : wi) {
                const Cplx u = us[a];
                const Cplx v = vs[b];
                const Cplx w = ws[c];
                const FredholmCase verdict = classify_triple(u, v, w, tol);
                ++out.triples_checked;

                TripleWitness witness{u, v, w, ellipse_eval(u, w, v), std::abs(u) - std::abs(w),
                                      verdict};
                if (!have_case) {
                    have_case = true;
                    agreed = verdict;
                    first_witness = witness;
                }
                if (verdict == FredholmCase::NotFredholm) {
                    out.kase = FredholmCase::NotFredholm;
                    out.consistent = verdict == agreed;
                    out.witnesses.push_back(witness);
                    return out;
                }
                if (verdict != agreed) {
                    // mirrors step 2: a (u,v,w)-dependent outcome means not Fredholm
                    out.kase = FredholmCase::NotFredholm;
                    out.consistent = false;
                    out.witnesses.push_back(first_witness);
                    out.witnesses.push_back(witness);
                    return out;
                }
            }
        }
    }

    out.kase = agreed;
    out.plus_index = plus_index_of(agreed);
    return out;
}

std::optional<double> delta_certificate(const TriSymbolSet& sets) {
    if (sets.delta > 0.0) return 1.0 / sets.delta;
    return std::nullopt;
}

std::optional<DominanceCertificate> dominance_certificate(const TriSymbolSet& sets) {
    const double sub_gap = sets.u_min - (sets.v_max + sets.w_max);
    const double super_gap = sets.w_min - (sets.v_max + sets.u_max);
    if (sub_gap > 0.0) return DominanceCertificate{DominantDiagonal::Sub, sub_gap};
    if (super_gap > 0.0) return DominanceCertificate{DominantDiagonal::Super, super_gap};
    return std::nullopt;
}

} // namespace fsm_jacobi
