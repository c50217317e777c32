// Acceptance suite: every criterion prints one pass/fail line and the
// process exits nonzero if any executed criterion fails.
//   acceptance        -> run all criteria
//   acceptance <k>    -> run criterion k only

#include "fsm_jacobi/adaptive_fsm.hpp"
#include "fsm_jacobi/cli.hpp"
#include "fsm_jacobi/io.hpp"
#include "fsm_jacobi/spectra.hpp"
#include "fsm_jacobi/toeplitz.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

using namespace fsm_jacobi;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

const double kE = std::exp(1.0);
const double kEInv = std::exp(-1.0);

TriSymbolSet hatano_nelson_sets() {
    return make_tri_symbol_set(SymbolSet::points({Cplx(kE, 0)}), SymbolSet::interval(-2.0, 2.0),
                               SymbolSet::points({Cplx(kEInv, 0)}));
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "fsm_jacobi_acceptance";
    fs::create_directories(dir);
    return dir;
}

std::map<Index, Cplx> manufacture_rhs(const DiagonalField& field,
                                      const std::map<Index, Cplx>& solution) {
    std::map<Index, Cplx> rhs;
    const Index s_lo = solution.begin()->first;
    const Index s_hi = solution.rbegin()->first;
    for (Index i = s_lo - 1; i <= s_hi + 1; ++i) {
        if (field.orientation() == FieldOrientation::SemiInfinite && i < 1) continue;
        const Triple& t = field.at(i);
        const auto get = [&](Index j) {
            const auto it = solution.find(j);
            return it == solution.end() ? Cplx{} : it->second;
        };
        Cplx acc = t.v * get(i) + t.w * get(i + 1);
        if (!(field.orientation() == FieldOrientation::SemiInfinite && i == 1))
            acc += t.u * get(i - 1);
        if (acc != Cplx{}) rhs[i] = acc;
    }
    return rhs;
}

// 1. Hatano-Nelson classification: case B, plus-index -1, consistent.
Outcome criterion_1() {
    Outcome out;
    const FredholmClassification cls = classify_sets(hatano_nelson_sets());
    out.require(cls.kase == FredholmCase::B, "case != B");
    out.require(cls.plus_index.has_value() && *cls.plus_index == -1, "plus index != -1");
    out.require(cls.consistent, "not consistent");

    const fs::path sets = scratch_dir() / "hn_sets.json";
    io::atomic_write(sets.string(), io::sets_to_json(hatano_nelson_sets()).dump());
    const fs::path verdict = scratch_dir() / "hn_verdict.json";
    out.require(run_cli({"classify", "--sets", sets.string(), "--out", verdict.string()}) == 0,
                "classify exit code");
    std::ifstream in(verdict);
    io::json j;
    in >> j;
    out.require(j.at("case") == "B" && j.at("plus_index") == -1 && j.at("consistent") == true,
                "CLI verdict mismatch");
    return out;
}

// 2. Hatano-Nelson model constants from the reproduce pipeline, within 1e-4.
Outcome criterion_2() {
    Outcome out;
    const HatanoNelsonBundle bundle = run_hatano_nelson(1.0, 2.0, 0, 0);
    out.require(std::abs(bundle.c - 3.0862) <= 1e-4, "c mismatch");
    out.require(std::abs(bundle.s - 2.3504) <= 1e-4, "s mismatch");
    out.require(std::abs(bundle.toeplitz_floor - 0.9207) <= 1e-4, "(c-2)^-1 mismatch");
    out.require(std::abs(bundle.cap - 2.8539) <= 1e-4, "(s-2)^-1 mismatch");
    out.require(run_cli({"reproduce", "--g", "1", "--a", "2", "--seed", "0", "--nmax", "0"}) == 0,
                "reproduce exit code");
    return out;
}

// 3. Stability-cap compliance across five seeds, windows up to size 5000.
Outcome criterion_3() {
    Outcome out;
    const double cap = 1.0 / (2.0 * std::sinh(1.0) - 2.0);
    int computed = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const HatanoNelsonBundle bundle = run_hatano_nelson(1.0, 2.0, seed, 4, 5000);
        out.require(bundle.classification.kase == FredholmCase::B, "classification drifted");
        for (const SolveRecord& rec : bundle.report.records) {
            if (!rec.inverse_norm) continue;
            ++computed;
            std::ostringstream what;
            what << "seed " << seed << " n " << rec.n << " norm " << *rec.inverse_norm;
            out.require(*rec.inverse_norm >= 0.5, "norm below 0.5: " + what.str());
            out.require(*rec.inverse_norm <= cap + 0.01, "norm above cap: " + what.str());
        }
    }
    out.require(computed >= 10, "too few computed inverse norms");
    return out;
}

// 4. Delta certificate honored by 200 random finite truncations.
Outcome criterion_4() {
    Outcome out;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<Index> size_dist(10, 500);
    const auto spin = [&](double radius) {
        const double a = 2.0 * std::numbers::pi * unit(rng);
        return Cplx(radius * std::cos(a), radius * std::sin(a));
    };
    int checked = 0;
    for (int cfg = 0; cfg < 10; ++cfg) {
        const double u_r = 0.2 + 0.5 * unit(rng);
        const double w_r = 0.2 + 0.5 * unit(rng);
        const double v_r = u_r + w_r + 0.3 + 2.0 * unit(rng);
        const TriSymbolSet sets = make_tri_symbol_set(
            SymbolSet::points({spin(u_r), spin(0.8 * u_r)}),
            SymbolSet::points({spin(v_r), spin(v_r + 0.2)}),
            SymbolSet::points({spin(w_r)}));
        const auto bound = delta_certificate(sets);
        out.require(bound.has_value(), "configuration lost its delta certificate");
        if (!bound) continue;
        for (int t = 0; t < 20; ++t) {
            const Index n = size_dist(rng);
            DiagonalField field = DiagonalField::sample_iid(sets, rng(), 0, n - 1,
                                                            FieldOrientation::BiInfinite);
            const BandedSystem sys(field, 0, n - 1, 0);
            const double norm = inverse_norm(sys);
            ++checked;
            std::ostringstream what;
            what << "cfg " << cfg << " size " << n << " norm " << norm << " bound " << *bound;
            out.require(norm <= *bound + 1e-8, what.str());
        }
    }
    out.require(checked == 200, "expected 200 truncations");
    return out;
}

// 5. Selfadjoint Hausdorff convergence of Anderson eigenvalue clouds.
Outcome criterion_5() {
    Outcome out;
    const TriSymbolSet anderson = make_tri_symbol_set(
        SymbolSet::points({Cplx(1, 0)}), SymbolSet::points({Cplx(0, 0), Cplx(2, 0)}),
        SymbolSet::points({Cplx(1, 0)}));
    DiagonalField field = DiagonalField::sample_iid(anderson, 14, -64, 64,
                                                    FieldOrientation::BiInfinite);
    std::vector<Cplx> target;
    for (int k = 0; k <= 1200; ++k) target.emplace_back(-2.0 + 6.0 * k / 1200.0, 0.0);
    const std::vector<Index> sizes{250, 500, 1000, 2000};
    const ConvergenceStudy study = convergence_study(field, sizes, StudyMode::Eigenvalues, target);
    std::ostringstream seq;
    for (double d : study.distances) seq << d << " ";
    out.require(study.decreasing, "distances not decreasing: " + seq.str());
    out.require(study.final_distance <= 0.25, "final distance " +
                                                  std::to_string(study.final_distance) + " > 0.25");
    return out;
}

// 6. Circulant eigenvalues approximate the Laurent curve at rate 10/n.
Outcome criterion_6() {
    Outcome out;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto draw = [&](double radius) {
        const double a = 2.0 * std::numbers::pi * unit(rng);
        const double r = radius * std::sqrt(unit(rng));
        return Cplx(r * std::cos(a), r * std::sin(a));
    };
    for (int t = 0; t < 20; ++t) {
        const Cplx u = draw(1.5);
        const Cplx v = draw(2.0);
        const Cplx w = draw(1.5);
        const auto curve = laurent_spectrum(u, v, w, 8192);
        for (int n : {64, 256, 1024}) {
            const double d = hausdorff(circulant_spectrum(u, v, w, n), curve);
            std::ostringstream what;
            what << "trial " << t << " n " << n << " d_H " << d;
            out.require(d <= 10.0 / n, what.str());
        }
    }
    return out;
}

// 7. Adaptive-FSM componentwise convergence with manufactured solutions.
Outcome criterion_7() {
    Outcome out;

    const auto run_case = [&](const TriSymbolSet& sets, FieldOrientation orientation,
                              FredholmCase expected, int n_max, const char* label) {
        std::map<Index, Cplx> truth;
        const Index lo = orientation == FieldOrientation::SemiInfinite ? 1 : -2;
        const Index hi = orientation == FieldOrientation::SemiInfinite ? 5 : 2;
        double phase = 0.4;
        for (Index i = lo; i <= hi; ++i) {
            truth[i] = Cplx(std::cos(phase), std::sin(2.0 * phase));
            phase += 0.9;
        }
        DiagonalField field = DiagonalField::sample_iid(
            sets, 5, orientation == FieldOrientation::SemiInfinite ? 1 : -64, 64, orientation);
        const auto rhs_map = manufacture_rhs(field, truth);
        double rhs_inf = 0.0;
        for (const auto& [i, b] : rhs_map) rhs_inf = std::max(rhs_inf, std::abs(b));
        const RhsFn rhs = [&rhs_map](Index i) {
            const auto it = rhs_map.find(i);
            return it == rhs_map.end() ? Cplx{} : it->second;
        };
        SolveReport report;
        try {
            report = orientation == FieldOrientation::SemiInfinite
                         ? solve_adaptive_semi(field, rhs, n_max)
                         : solve_adaptive_bi(field, rhs, n_max);
        } catch (const Error& e) {
            out.require(false, std::string(label) + ": " + e.what());
            return;
        }
        out.require(report.kase == expected, std::string(label) + ": unexpected case");
        double best = 1e9;
        for (const SolveRecord& rec : report.records) {
            out.require(rec.residual_inf <= 1e-9 * (1.0 + rec.rhs_inf),
                        std::string(label) + ": residual gate failed at n=" +
                            std::to_string(rec.n));
            if (rec.l > lo || rec.r < hi) continue;
            double err = 0.0;
            for (const auto& [i, x] : truth)
                err = std::max(err,
                               std::abs(rec.solution[static_cast<std::size_t>(i - rec.l)] - x));
            best = std::min(best, err);
        }
        out.require(best <= 1e-6, std::string(label) + ": central error " + std::to_string(best));
    };

    run_case(make_tri_symbol_set(SymbolSet::points({Cplx(0.5, 0)}),
                                 SymbolSet::points({Cplx(3, 0), Cplx(4, 0)}),
                                 SymbolSet::points({Cplx(0.25, 0)})),
             FieldOrientation::BiInfinite, FredholmCase::A, 8, "case A bi");
    run_case(make_tri_symbol_set(SymbolSet::points({Cplx(2, 0)}),
                                 SymbolSet::points({Cplx(0, 0), Cplx(0.5, 0)}),
                                 SymbolSet::points({Cplx(0.5, 0)})),
             FieldOrientation::BiInfinite, FredholmCase::B, 10, "case B bi");
    run_case(make_tri_symbol_set(SymbolSet::points({Cplx(0.5, 0)}),
                                 SymbolSet::points({Cplx(0, 0), Cplx(0.5, 0)}),
                                 SymbolSet::points({Cplx(2, 0)})),
             FieldOrientation::BiInfinite, FredholmCase::C, 10, "case C bi");
    run_case(make_tri_symbol_set(SymbolSet::points({Cplx(0.5, 0)}),
                                 SymbolSet::points({Cplx(3, 0), Cplx(4, 0)}),
                                 SymbolSet::points({Cplx(0.25, 0)})),
             FieldOrientation::SemiInfinite, FredholmCase::A, 8, "case A semi");
    return out;
}

// 8. Thomas and substitution paths agree with a dense pivoted-LU oracle.
Outcome criterion_8() {
    Outcome out;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::uniform_int_distribution<Index> size_dist(10, 500);
    for (int t = 0; t < 100; ++t) {
        const Index n = size_dist(rng);
        const int shift = t % 3 - 1;
        std::vector<Triple> triples;
        for (Index i = 0; i < n + 4; ++i) {
            Triple tr;
            // keep each candidate pivot away from zero
            tr.u = Cplx(dist(rng), dist(rng)) + Cplx(shift == -1 ? 3.0 : 0.0, 0);
            tr.w = Cplx(dist(rng), dist(rng)) + Cplx(shift == +1 ? 3.0 : 0.0, 0);
            tr.v = Cplx(dist(rng) + (shift == 0 ? 4.0 : 0.0), dist(rng));
            triples.push_back(tr);
        }
        DiagonalField field = DiagonalField::explicit_field(-2, std::move(triples),
                                                            FieldOrientation::BiInfinite);
        const BandedSystem sys(field, 0, n - 1, shift);
        std::vector<Cplx> rhs(static_cast<std::size_t>(n));
        for (auto& z : rhs) z = Cplx(dist(rng), dist(rng));

        const auto fast = solve_window(sys, rhs);

        Eigen::VectorXcd b(static_cast<Eigen::Index>(n));
        for (Eigen::Index k = 0; k < b.size(); ++k) b(k) = rhs[static_cast<std::size_t>(k)];
        const Eigen::VectorXcd oracle =
            Eigen::PartialPivLU<Eigen::MatrixXcd>(sys.dense()).solve(b);

        double num = 0.0;
        double den = 0.0;
        for (Eigen::Index k = 0; k < b.size(); ++k) {
            num = std::max(num, std::abs(fast[static_cast<std::size_t>(k)] - oracle(k)));
            den = std::max(den, std::abs(oracle(k)));
        }
        std::ostringstream what;
        what << "trial " << t << " size " << n << " shift " << shift << " rel err "
             << num / std::max(den, 1e-300);
        out.require(num <= 1e-10 * std::max(den, 1.0), what.str());
    }
    return out;
}

// 9. Degeneracy handling: boundary triples classify NotFredholm and the
// adaptive solver refuses with exit code 4.
Outcome criterion_9() {
    Outcome out;
    out.require(classify_triple(Cplx(1, 0), Cplx(2, 0), Cplx(1, 0)) == FredholmCase::NotFredholm,
                "(1,2,1) not flagged");
    // boundary samples v = 2 cosh(g + i theta) on E(e^g, e^-g), g = 0 and 1
    for (double g : {0.0, 1.0}) {
        for (int k = 0; k < 32; ++k) {
            const double theta = 2.0 * std::numbers::pi * k / 32;
            const Cplx v = 2.0 * std::cosh(Cplx(g, theta));
            const FredholmCase c =
                classify_triple(Cplx(std::exp(g), 0), v, Cplx(std::exp(-g), 0));
            std::ostringstream what;
            what << "g " << g << " theta " << theta << " -> " << to_string(c);
            out.require(c == FredholmCase::NotFredholm, what.str());
        }
    }

    const fs::path dir = scratch_dir();
    const fs::path sets = dir / "degenerate_sets.json";
    io::atomic_write(sets.string(), R"({"U": {"kind":"points","points":[[1,0]]},
"V": {"kind":"points","points":[[2,0]]},
"W": {"kind":"points","points":[[1,0]]}})");
    const fs::path field = dir / "degenerate_field.jsonl";
    out.require(run_cli({"generate", "--sets", sets.string(), "--range", "-32..32", "--out",
                         field.string()}) == 0,
                "generate failed");
    out.require(run_cli({"solve", "--field", field.string(), "--nmax", "2", "--out",
                         (dir / "degenerate_report.json").string()}) == 4,
                "solve exit code != 4");
    return out;
}

// 10. Pseudoergodicity of the enumeration generator.
Outcome criterion_10() {
    Outcome out;
    const std::vector<Triple> alphabet{{Cplx(1, 0), Cplx(0, 0), Cplx(1, 0)},
                                       {Cplx(1, 0), Cplx(2, 0), Cplx(1, 0)}};
    DiagonalField field = DiagonalField::word_enumeration(alphabet, 1, 100,
                                                          FieldOrientation::SemiInfinite);
    const PseudoergodicReport report = verify_pseudoergodic(field, 3, 1e-12);
    out.require(report.words.size() == 14, "expected 14 words");
    int found = 0;
    for (const WordWitness& w : report.words)
        if (w.found) ++found;
    out.require(found == 14, "only " + std::to_string(found) + " of 14 words found");
    out.require(report.all_found, "verdict not all-found");
    return out;
}

struct Criterion {
    int id;
    const char* description;
    double budget_seconds;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "Hatano-Nelson classification (case B, ind A_+ = -1, consistent)", 1.0, criterion_1},
    {2, "model constants c, s, (c-2)^-1, (s-2)^-1 within 1e-4", 1.0, criterion_2},
    {3, "inverse norms within [0.5, (s-2)^-1 + 0.01] across 5 seeds", 300.0, criterion_3},
    {4, "delta certificate bounds 200 random truncations", 120.0, criterion_4},
    {5, "selfadjoint Hausdorff convergence to [-2, 4]", 180.0, criterion_5},
    {6, "circulant vs Laurent Hausdorff rate 10/n", 60.0, criterion_6},
    {7, "adaptive FSM componentwise convergence, cases A/B/C and semi", 300.0, criterion_7},
    {8, "solver paths match the dense pivoted-LU oracle", 60.0, criterion_8},
    {9, "degenerate triples refuse with NotFredholm and exit code 4", 1.0, criterion_9},
    {10, "enumeration generator contains all 14 short words", 1.0, criterion_10},
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    int failures = 0;
    for (const Criterion& c : kCriteria) {
        if (only != 0 && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (out.pass && elapsed > c.budget_seconds) {
            out.pass = false;
            out.detail = "runtime budget exceeded";
        }
        std::printf("[%s] criterion %d: %s (%.2fs, budget %.0fs)%s%s\n", out.pass ? "PASS" : "FAIL",
                    c.id, c.description, elapsed, c.budget_seconds, out.pass ? "" : " -- ",
                    out.detail.c_str());
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
