#include "fsm_jacobi/adaptive_fsm.hpp"
#include "fsm_jacobi/cli.hpp"
#include "fsm_jacobi/errors.hpp"
#include "fsm_jacobi/spectra.hpp"
#include "fsm_jacobi/toeplitz.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <random>

namespace fsm_jacobi {

namespace {

struct Harness {
    int failures = 0;

    void check(bool ok, const std::string& name) {
        std::cout << (ok ? "  ok   " : "  FAIL ") << name << "\n";
        if (!ok) ++failures;
    }
};

Cplx random_complex(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> dist(-radius, radius);
    return Cplx(dist(rng), dist(rng));
}

void suite_symbol_sets(Harness& h, int trials) {
    std::mt19937_64 rng(7);
    bool parametrization = true;
    bool symmetry = true;
    bool rotation = true;
    bool branch = true;
    for (int t = 0; t < trials; ++t) {
        const Cplx u = random_complex(rng, 10.0);
        const Cplx w = random_complex(rng, 10.0);
        const Cplx v = random_complex(rng, 10.0);
        for (int k = 0; k < 256; ++k) {
            const double phi = 2.0 * std::numbers::pi * k / 256;
            const Cplx e(std::cos(phi), std::sin(phi));
            if (std::abs(ellipse_eval(u, w, u * e + w / e)) > 1e-10) parametrization = false;
        }
        if (std::abs(ellipse_eval(u, w, v) - ellipse_eval(w, u, v)) > 1e-12) symmetry = false;
        if (std::abs(ellipse_eval(u, w, v) - ellipse_eval(u, w, -v)) > 1e-12) symmetry = false;
        const double theta = 0.973;
        const Cplx rot(std::cos(theta), std::sin(theta));
        if (std::abs(ellipse_eval(u * rot, w / rot, v) - ellipse_eval(u, w, v)) > 1e-9)
            rotation = false;
        const Cplx f = 2.0 * std::sqrt(u * w);
        const double with_other_branch =
            std::abs(v - f) + std::abs(v + f) - 2.0 * (std::abs(u) + std::abs(w));
        if (std::abs(with_other_branch - ellipse_eval(u, w, v)) != 0.0) branch = false;
    }
    h.check(parametrization, "ellipse parametrization lies on the curve");
    h.check(symmetry, "ellipse_eval symmetric in (u,w) and v -> -v");
    h.check(rotation, "ellipse_eval rotation invariant");
    h.check(branch, "ellipse_eval branch independent");
}

void suite_bounds(Harness& h) {
    const TriSymbolSet hn = make_tri_symbol_set(
        SymbolSet::points({Cplx(std::exp(1.0), 0.0)}), SymbolSet::interval(-2.0, 2.0),
        SymbolSet::points({Cplx(std::exp(-1.0), 0.0)}));
    const auto cloud = lower_spectral_bound(hn, 64);
    bool ordered = true;
    for (const Cplx& p : cloud)
        if (!upper_spectral_bound_contains(hn, p)) ordered = false;
    h.check(ordered, "lower bound samples inside the upper bound");

    bool disjoint = true;
    if (spectral_hole(hn, Cplx{})) {
        for (const Cplx& p : cloud)
            if (std::abs(p) < 1e-9) disjoint = false;
    }
    h.check(disjoint, "spectral hole avoids the lower bound");
}

void suite_laurent(Harness& h) {
    std::mt19937_64 rng(11);
    bool on_curve = true;
    bool circulant_subset = true;
    for (int t = 0; t < 8; ++t) {
        const Cplx u = random_complex(rng, 2.0);
        const Cplx v = random_complex(rng, 2.0);
        const Cplx w = random_complex(rng, 2.0);
        for (const Cplx& p : laurent_spectrum(u, v, w, 97))
            if (std::abs(ellipse_eval(u, w, p - v)) > 1e-10) on_curve = false;
        const auto circ = circulant_spectrum(u, v, w, 16);
        const auto laur = laurent_spectrum(u, v, w, 16);
        for (std::size_t k = 0; k < circ.size(); ++k)
            if (std::abs(circ[k] - laur[k]) > 1e-12) circulant_subset = false;
    }
    h.check(on_curve, "laurent spectrum lies on v + E(u,w)");
    h.check(circulant_subset, "circulant eigenvalues sit on the laurent curve");
}

void suite_enumeration(Harness& h) {
    const std::vector<Triple> alphabet{{Cplx(1, 0), Cplx(0, 0), Cplx(1, 0)},
                                       {Cplx(1, 0), Cplx(2, 0), Cplx(1, 0)}};
    DiagonalField field = DiagonalField::word_enumeration(alphabet, 1, 100,
                                                          FieldOrientation::SemiInfinite);
    const auto report = verify_pseudoergodic(field, 3, 1e-9);
    h.check(report.all_found && report.words.size() == 14,
            "all 14 words of length <= 3 found in the enumeration prefix");

    DiagonalField again = DiagonalField::word_enumeration(alphabet, 1, 40,
                                                          FieldOrientation::SemiInfinite);
    DiagonalField grown = extend(again, 1, 100);
    bool deterministic = true;
    for (Index i = 1; i <= 100; ++i)
        if (!(grown.at(i) == field.at(i))) deterministic = false;
    h.check(deterministic, "extension reproduces the enumeration exactly");
}

void suite_solver(Harness& h, int trials) {
    std::mt19937_64 rng(23);
    bool residuals = true;
    bool shifted = true;
    for (int t = 0; t < trials; ++t) {
        std::uniform_int_distribution<int> size_dist(4, 80);
        const Index n = size_dist(rng);
        std::vector<Triple> triples;
        for (Index i = 0; i < n + 4; ++i) {
            Triple tr;
            tr.u = random_complex(rng, 1.0);
            tr.w = random_complex(rng, 1.0);
            tr.v = random_complex(rng, 1.0) + Cplx(4.0, 0.0); // diagonally dominant
            triples.push_back(tr);
        }
        DiagonalField field =
            DiagonalField::explicit_field(-2, std::move(triples), FieldOrientation::BiInfinite);
        const BandedSystem sys(field, 0, n - 1, 0);
        std::vector<Cplx> b(static_cast<std::size_t>(n));
        for (auto& z : b) z = random_complex(rng, 1.0);
        const auto x = solve_window(sys, b);
        const auto ax = sys.apply(x);
        double res = 0.0;
        double bn = 0.0;
        for (std::size_t k = 0; k < b.size(); ++k) {
            res = std::max(res, std::abs(ax[k] - b[k]));
            bn = std::max(bn, std::abs(b[k]));
        }
        if (res > 1e-9 * (1.0 + bn)) residuals = false;

        // negative control: a corrupted solution must trip the residual gate
        auto bad = x;
        bad[bad.size() / 2] += Cplx(1.0, 0.0);
        const auto abad = sys.apply(bad);
        double res_bad = 0.0;
        for (std::size_t k = 0; k < b.size(); ++k)
            res_bad = std::max(res_bad, std::abs(abad[k] - b[k]));
        if (res_bad <= 1e-9 * (1.0 + bn)) residuals = false;

        // shifted window rows equal unshifted rows one step over
        const BandedSystem up(field, 0, n - 1, -1);
        const BandedSystem flat(field, 0, n - 1, 0);
        for (Index i = 1; i < n - 1; ++i)
            for (Index j = 0; j < n; ++j)
                if (std::abs(up.entry(i - 1, j) - flat.entry(i, j)) != 0.0) shifted = false;
    }
    h.check(residuals, "direct solves satisfy the residual gate (and it catches faults)");
    h.check(shifted, "shifted rows equal unshifted rows over the common window");
}

void suite_reflection(Harness& h) {
    std::mt19937_64 rng(31);
    std::vector<Triple> triples;
    for (int i = 0; i < 24; ++i)
        triples.push_back({random_complex(rng, 2.0), random_complex(rng, 2.0),
                           random_complex(rng, 2.0)});
    DiagonalField field =
        DiagonalField::explicit_field(1, std::move(triples), FieldOrientation::SemiInfinite);
    const BandedSystem sys(field, 1, 20, 0);
    const BandedSystem ref = sys.reflected();
    const BandedSystem back = ref.reflected();
    bool involution = true;
    for (Index i = 1; i <= 20; ++i)
        for (Index j = 1; j <= 20; ++j)
            if (sys.entry(i, j) != back.entry(i, j)) involution = false;
    h.check(involution, "reflection is an involution");

    const auto sv1 = singular_values(sys).points;
    const auto sv2 = singular_values(ref).points;
    bool preserved = sv1.size() == sv2.size();
    for (std::size_t k = 0; preserved && k < sv1.size(); ++k)
        if (std::abs(sv1[k].real() - sv2[k].real()) > 1e-10) preserved = false;
    h.check(preserved, "reflection preserves singular values");
}

void suite_hausdorff(Harness& h, int trials) {
    std::mt19937_64 rng(41);
    bool axioms = true;
    for (int t = 0; t < trials; ++t) {
        std::uniform_int_distribution<int> size_dist(1, 12);
        const auto mk = [&] {
            std::vector<Cplx> c(static_cast<std::size_t>(size_dist(rng)));
            for (auto& z : c) z = random_complex(rng, 5.0);
            return c;
        };
        const auto A = mk(), B = mk(), C = mk();
        if (std::abs(hausdorff(A, B) - hausdorff(B, A)) > 1e-12) axioms = false;
        if (hausdorff(A, A) != 0.0) axioms = false;
        if (hausdorff(A, C) > hausdorff(A, B) + hausdorff(B, C) + 1e-12) axioms = false;
    }
    h.check(axioms, "hausdorff symmetry, identity and triangle inequality");
}

void suite_certificates(Harness& h, int truncations) {
    std::mt19937_64 rng(53);
    const TriSymbolSet sets = make_tri_symbol_set(
        SymbolSet::points({Cplx(0.4, 0.2), Cplx(-0.3, 0.1)}),
        SymbolSet::points({Cplx(3.0, 1.0), Cplx(-2.5, 2.0)}),
        SymbolSet::points({Cplx(0.2, -0.4)}));
    const auto bound = delta_certificate(sets);
    bool honored = bound.has_value();
    for (int t = 0; honored && t < truncations; ++t) {
        std::uniform_int_distribution<int> size_dist(5, 60);
        std::uniform_int_distribution<std::uint64_t> seed_dist;
        const Index n = size_dist(rng);
        DiagonalField field = DiagonalField::sample_iid(sets, seed_dist(rng), 0, n,
                                                        FieldOrientation::BiInfinite);
        const BandedSystem sys(field, 0, n, 0);
        if (inverse_norm(sys) > *bound + 1e-8) honored = false;
    }
    h.check(honored, "delta certificate bounds finite truncation inverses");

    bool agrees = classify_sets(sets).kase == FredholmCase::A;
    h.check(agrees, "delta certificate implies case (a)");
}

void suite_pseudospectra(Harness& h) {
    std::vector<Triple> triples(9, Triple{Cplx(0, 0), Cplx(2, 0), Cplx(0, 0)});
    DiagonalField field =
        DiagonalField::explicit_field(1, std::move(triples), FieldOrientation::SemiInfinite);
    const BandedSystem sys(field, 1, 9, 0);
    const GridSpec grid{1.0, 3.0, -1.0, 1.0, 21, 21};
    const double levels_arr[] = {0.25, 0.5};
    const auto result = pseudospectrum_grid(sys, grid, levels_arr);
    const bool nested = result.levels[0].points.size() <= result.levels[1].points.size();
    h.check(nested, "pseudospectrum level sets nested in eps");

    bool exact = true;
    for (const Cplx& node : result.levels[1].points)
        if (std::abs(node - Cplx(2.0, 0.0)) > 0.5 + 1e-6) exact = false;
    h.check(exact, "diagonal window pseudospectrum is the expected disk");
}

} // namespace

int run_selftest(bool fast) {
    Harness h;
    const int trials = fast ? 4 : 16;
    std::cout << "symbol sets\n";
    suite_symbol_sets(h, trials);
    suite_bounds(h);
    std::cout << "operator\n";
    suite_laurent(h);
    suite_reflection(h);
    std::cout << "pseudoergodic\n";
    suite_enumeration(h);
    std::cout << "solvers\n";
    suite_solver(h, fast ? 8 : 32);
    std::cout << "spectra\n";
    suite_hausdorff(h, fast ? 16 : 64);
    suite_pseudospectra(h);
    std::cout << "certificates\n";
    suite_certificates(h, fast ? 16 : 64);
    std::cout << (h.failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
    return h.failures;
}

} // namespace fsm_jacobi
