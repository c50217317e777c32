#pragma once

#include "fsm_jacobi/errors.hpp"
#include "fsm_jacobi/types.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace fsm_jacobi {

/// A non-empty compact coefficient set in the complex plane.
///
/// Three variants are supported: a finite point list, a real interval
/// [lo, hi], and a circular arc of given radius centered at the origin.
/// Continuous variants are discretized on a uniform grid that includes both
/// endpoints, so the modulus extremes of the sample list coincide with the
/// closed-form extremes of the set.
class SymbolSet {
public:
    struct FinitePoints {
        std::vector<Cplx> points;
    };
    struct RealInterval {
        double lo;
        double hi;
    };
    struct CircleArc {
        double radius;
        double angle_lo;
        double angle_hi;
    };
    using Variant = std::variant<FinitePoints, RealInterval, CircleArc>;

    static SymbolSet points(std::vector<Cplx> pts);
    static SymbolSet interval(double lo, double hi, int sample_count = kDefaultSampleCount);
    static SymbolSet circle(double radius, int sample_count = kDefaultSampleCount);
    static SymbolSet arc(double radius, double angle_lo, double angle_hi,
                         int sample_count = kDefaultSampleCount);

    const Variant& variant() const { return variant_; }
    int sample_count() const { return sample_count_; }

    /// Discretization of the set; exact for FinitePoints, endpoint-inclusive
    /// uniform grids for the parametric variants.
    const std::vector<Cplx>& samples() const { return samples_; }

    /// Closed-form modulus extremes (not sample-based), so that the delta
    /// certificate is exact.
    double max_modulus() const { return max_modulus_; }
    double min_modulus() const { return min_modulus_; }

    /// Closed-form distance from z to the set (sample-min for FinitePoints,
    /// where the samples are the set).
    double distance(Cplx z) const;

    /// Largest |z - v| over the sampled set.
    double max_sample_distance(Cplx z) const;

    /// True when every member of the set is real (interval, or points with
    /// zero imaginary part).
    bool is_real() const;

    bool contains_sample(Cplx z, double tol) const;

private:
    SymbolSet(Variant v, int sample_count);

    Variant variant_;
    int sample_count_;
    std::vector<Cplx> samples_;
    double min_modulus_ = 0.0;
    double max_modulus_ = 0.0;
};

/// The coefficient data (U, V, W) with cached modulus extremes and the
/// certificate quantity delta = v_min - (u_max + w_max).
struct TriSymbolSet {
    SymbolSet U;
    SymbolSet V;
    SymbolSet W;

    double u_max; ///< max |u| over U
    double u_min; ///< min |u| over U
    double v_max; ///< max |v| over V
    double v_min; ///< min |v| over V
    double w_max; ///< max |w| over W
    double w_min; ///< min |w| over W
    double delta; ///< v_min - (u_max + w_max)

    TriSymbolSet(SymbolSet u_set, SymbolSet v_set, SymbolSet w_set);
};

TriSymbolSet make_tri_symbol_set(SymbolSet u_set, SymbolSet v_set, SymbolSet w_set);

enum class EllipseOrientation { CCW, CW, Degenerate };

/// Geometry of the ellipse traced by phi -> u e^{i phi} + w e^{-i phi}:
/// center 0, half-axes |u|+|w| and ||u|-|w||, foci +-2 sqrt(uw).
struct EllipseGeometry {
    Cplx u;
    Cplx w;
    double semi_major;
    double semi_minor;
    Cplx focus; ///< one of the pair +-focus
    EllipseOrientation orientation;
};

EllipseGeometry ellipse(Cplx u, Cplx w);

/// Signed ellipse membership test:
/// f = |v + 2 sqrt(uw)| + |v - 2 sqrt(uw)| - 2(|u| + |w|).
/// Negative inside, zero on the curve, positive outside. Branch-independent.
double ellipse_eval(Cplx u, Cplx w, Cplx v);

/// Point samples of the union of curves v + u e^{i phi} + w e^{-i phi} over
/// the sampled triples; every returned point is spectrum for any
/// pseudoergodic operator over the set triple. `angles` defaults to the
/// V-set sample count.
std::vector<Cplx> lower_spectral_bound(const TriSymbolSet& sets, int angles = 0);

/// True iff dist(lambda, V) <= u_max + w_max. False certifies that lambda is
/// a resolvent point of every operator with diagonals in (U, V, W).
bool upper_spectral_bound_contains(const TriSymbolSet& sets, Cplx lambda);

/// True certifies that lambda lies in the spectral hole
/// (the intersection of disks around V with the dominance radius), hence in
/// the resolvent set of every bi-infinite operator over the sets.
bool spectral_hole(const TriSymbolSet& sets, Cplx lambda);

struct Interval {
    double lo;
    double hi;
};

/// Merged union of [v - 2 u_max, v + 2 u_max] over the sampled v; equals the
/// spectrum for pseudoergodic selfadjoint operators (w_i = conj(u_{i+1})).
/// Throws NotSelfadjointError when V is not real.
std::vector<Interval> selfadjoint_spectrum(const SymbolSet& U, const SymbolSet& V);

} // namespace fsm_jacobi
