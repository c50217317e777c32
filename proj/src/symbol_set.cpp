#include "fsm_jacobi/symbol_set.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fsm_jacobi {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool finite(Cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Wraps angle into [base, base + 2*pi).
double wrap_from(double angle, double base) {
    double t = std::fmod(angle - base, kTwoPi);
    if (t < 0) t += kTwoPi;
    return base + t;
}

} // namespace

SymbolSet::SymbolSet(Variant v, int sample_count)
    : variant_(std::move(v)), sample_count_(sample_count) {
    if (sample_count_ < 1) throw InvalidSetError("sample_count must be positive");

    if (const auto* fp = std::get_if<FinitePoints>(&variant_)) {
        if (fp->points.empty()) throw InvalidSetError("finite point set is empty");
        for (Cplx p : fp->points) {
            if (!finite(p)) throw InvalidSetError("finite point set contains non-finite value");
        }
        samples_ = fp->points;
        min_modulus_ = max_modulus_ = std::abs(samples_.front());
        for (Cplx p : samples_) {
            min_modulus_ = std::min(min_modulus_, std::abs(p));
            max_modulus_ = std::max(max_modulus_, std::abs(p));
        }
    } else if (const auto* iv = std::get_if<RealInterval>(&variant_)) {
        if (!std::isfinite(iv->lo) || !std::isfinite(iv->hi) || iv->lo > iv->hi)
            throw InvalidSetError("real interval requires finite lo <= hi");
        const int n = (iv->lo == iv->hi) ? 1 : std::max(2, sample_count_);
        samples_.reserve(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            const double t = (n == 1) ? 0.0 : static_cast<double>(k) / (n - 1);
            samples_.emplace_back(iv->lo + t * (iv->hi - iv->lo), 0.0);
        }
        max_modulus_ = std::max(std::abs(iv->lo), std::abs(iv->hi));
        min_modulus_ = (iv->lo <= 0.0 && 0.0 <= iv->hi)
                           ? 0.0
                           : std::min(std::abs(iv->lo), std::abs(iv->hi));
    } else {
        const auto& ca = std::get<CircleArc>(variant_);
        if (!(ca.radius >= 0.0) || !std::isfinite(ca.radius))
            throw InvalidSetError("circle arc requires radius >= 0");
        if (!std::isfinite(ca.angle_lo) || !std::isfinite(ca.angle_hi) || ca.angle_lo > ca.angle_hi)
            throw InvalidSetError("circle arc requires angle_lo <= angle_hi");
        const int n = (ca.angle_lo == ca.angle_hi) ? 1 : std::max(2, sample_count_);
        samples_.reserve(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            const double t = (n == 1) ? 0.0 : static_cast<double>(k) / (n - 1);
            const double a = ca.angle_lo + t * (ca.angle_hi - ca.angle_lo);
            samples_.emplace_back(ca.radius * std::cos(a), ca.radius * std::sin(a));
        }
        min_modulus_ = max_modulus_ = ca.radius;
    }
}

SymbolSet SymbolSet::points(std::vector<Cplx> pts) {
    return SymbolSet(FinitePoints{std::move(pts)}, 1);
}

SymbolSet SymbolSet::interval(double lo, double hi, int sample_count) {
    return SymbolSet(RealInterval{lo, hi}, sample_count);
}

SymbolSet SymbolSet::circle(double radius, int sample_count) {
    return SymbolSet(CircleArc{radius, 0.0, kTwoPi}, sample_count);
}

SymbolSet SymbolSet::arc(double radius, double angle_lo, double angle_hi, int sample_count) {
    return SymbolSet(CircleArc{radius, angle_lo, angle_hi}, sample_count);
}

double SymbolSet::distance(Cplx z) const {
    if (const auto* fp = std::get_if<FinitePoints>(&variant_)) {
        double best = std::abs(z - fp->points.front());
        for (Cplx p : fp->points) best = std::min(best, std::abs(z - p));
        return best;
    }
    if (const auto* iv = std::get_if<RealInterval>(&variant_)) {
        const double dx = std::max({iv->lo - z.real(), 0.0, z.real() - iv->hi});
        return std::hypot(dx, z.imag());
    }
    const auto& ca = std::get<CircleArc>(variant_);
    if (ca.angle_hi - ca.angle_lo >= kTwoPi)
        return std::abs(std::abs(z) - ca.radius);
    const double theta = wrap_from(std::atan2(z.imag(), z.real()), ca.angle_lo);
    if (theta <= ca.angle_hi && std::abs(z) > 0.0)
        return std::abs(std::abs(z) - ca.radius);
    const Cplx e_lo = Cplx(ca.radius * std::cos(ca.angle_lo), ca.radius * std::sin(ca.angle_lo));
    const Cplx e_hi = Cplx(ca.radius * std::cos(ca.angle_hi), ca.radius * std::sin(ca.angle_hi));
    return std::min(std::abs(z - e_lo), std::abs(z - e_hi));
}

double SymbolSet::max_sample_distance(Cplx z) const {
    double worst = 0.0;
    for (Cplx p : samples_) worst = std::max(worst, std::abs(z - p));
    return worst;
}

bool SymbolSet::is_real() const {
    if (std::holds_alternative<RealInterval>(variant_)) return true;
    if (const auto* fp = std::get_if<FinitePoints>(&variant_)) {
        return std::all_of(fp->points.begin(), fp->points.end(),
                           [](Cplx p) { return p.imag() == 0.0; });
    }
    return false;
}

bool SymbolSet::contains_sample(Cplx z, double tol) const {
    for (Cplx p : samples_) {
        if (std::abs(z - p) <= tol) return true;
    }
    return false;
}

TriSymbolSet::TriSymbolSet(SymbolSet u_set, SymbolSet v_set, SymbolSet w_set)
    : U(std::move(u_set)), V(std::move(v_set)), W(std::move(w_set)),
      u_max(U.max_modulus()), u_min(U.min_modulus()),
      v_max(V.max_modulus()), v_min(V.min_modulus()),
      w_max(W.max_modulus()), w_min(W.min_modulus()),
      delta(v_min - (u_max + w_max)) {}

TriSymbolSet make_tri_symbol_set(SymbolSet u_set, SymbolSet v_set, SymbolSet w_set) {
    return TriSymbolSet(std::move(u_set), std::move(v_set), std::move(w_set));
}

EllipseGeometry ellipse(Cplx u, Cplx w) {
    EllipseGeometry g;
    g.u = u;
    g.w = w;
    g.semi_major = std::abs(u) + std::abs(w);
    g.semi_minor = std::abs(std::abs(u) - std::abs(w));
    g.focus = 2.0 * std::sqrt(u * w);
    const double gap = std::abs(u) - std::abs(w);
    if (gap > kCaseTol)
        g.orientation = EllipseOrientation::CCW;
    else if (gap < -kCaseTol)
        g.orientation = EllipseOrientation::CW;
    else
        g.orientation = EllipseOrientation::Degenerate;
    return g;
}

double ellipse_eval(Cplx u, Cplx w, Cplx v) {
    const Cplx focus = 2.0 * std::sqrt(u * w);
    return std::abs(v + focus) + std::abs(v - focus) - 2.0 * (std::abs(u) + std::abs(w));
}

std::vector<Cplx> lower_spectral_bound(const TriSymbolSet& sets, int angles) {
    const int n_angles = angles > 0 ? angles : std::max(kDefaultSampleCount, sets.V.sample_count());
    std::vector<Cplx> cloud;
    cloud.reserve(sets.U.samples().size() * sets.W.samples().size() *
                  sets.V.samples().size() * static_cast<std::size_t>(n_angles));
    for (Cplx u : sets.U.samples()) {
        for (Cplx w : sets.W.samples()) {
            for (Cplx v : sets.V.samples()) {
                for (int k = 0; k < n_angles; ++k) {
                    const double phi = kTwoPi * k / n_angles;
                    const Cplx e(std::cos(phi), std::sin(phi));
                    cloud.push_back(v + u * e + w / e);
                }
            }
        }
    }
    return cloud;
}

bool upper_spectral_bound_contains(const TriSymbolSet& sets, Cplx lambda) {
    return sets.V.distance(lambda) <= sets.u_max + sets.w_max;
}

bool spectral_hole(const TriSymbolSet& sets, Cplx lambda) {
    double radius = 0.0;
    if (sets.u_min > sets.w_max)
        radius = sets.u_min - sets.w_max;
    else if (sets.w_min > sets.u_max)
        radius = sets.w_min - sets.u_max;
    else
        return false;
    return sets.V.max_sample_distance(lambda) < radius;
}

std::vector<Interval> selfadjoint_spectrum(const SymbolSet& U, const SymbolSet& V) {
    if (!V.is_real())
        throw NotSelfadjointError("selfadjoint spectrum requires a real main-diagonal set");
    const double half_width = 2.0 * U.max_modulus();
    std::vector<Interval> raw;
    raw.reserve(V.samples().size());
    for (Cplx v : V.samples()) raw.push_back({v.real() - half_width, v.real() + half_width});
    std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
        return a.lo < b.lo;
    });
    std::vector<Interval> merged;
    for (const Interval& iv : raw) {
        if (!merged.empty() && iv.lo <= merged.back().hi)
            merged.back().hi = std::max(merged.back().hi, iv.hi);
        else
            merged.push_back(iv);
    }
    return merged;
}

} // namespace fsm_jacobi
