#include "gossim/theory.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace gossim {

const char* to_string(PredictionKind kind) {
    switch (kind) {
        case PredictionKind::OrderOnly: return "order";
        case PredictionKind::ClosedForm: return "closed-form";
        case PredictionKind::Approximation: return "approximation";
    }
    return "?";
}

double static_phi(double n) {
    if (!(n >= 2.0)) throw std::invalid_argument("static_phi: n must be >= 2");
    return std::sqrt(std::log(n) / n);
}

Prediction table1_phi(const MobilitySpec& spec, int n, double r) {
    spec.validate(n);
    Prediction p;
    p.model = spec;
    const double dn = n;
    switch (spec.kind) {
        case MobilityKind::Static:
            p.phi = static_phi(dn);
            p.kind = PredictionKind::OrderOnly;
            break;
        case MobilityKind::FullyRandom:
            p.phi = 1.0;
            p.kind = PredictionKind::OrderOnly;
            break;
        case MobilityKind::PartiallyRandom: {
            const double k = spec.k;
            const double frac = (dn - k) / dn;
            p.phi = frac * frac * static_phi(dn) + k * (2.0 * dn - k) / (2.0 * dn * dn);
            p.kind = PredictionKind::ClosedForm;
            break;
        }
        case MobilityKind::VelocityConstrained:
            p.phi = std::max(spec.v_max, r);
            p.kind = PredictionKind::OrderOnly;
            break;
        case MobilityKind::AreaConstrained1D: {
            const double nv = spec.n_v, nh = spec.n_h;
            p.phi = (nv * nv + nh * nh) / (dn * dn) * static_phi(dn) +
                    nv * nh / (dn * dn);
            p.kind = PredictionKind::ClosedForm;
            break;
        }
        case MobilityKind::AreaConstrained2D:
            p.phi = std::max(spec.r_c, r);
            p.kind = PredictionKind::OrderOnly;
            break;
    }
    return p;
}

double density_profile(double l, double v_max) {
    if (!(v_max > 0.0))
        throw std::invalid_argument("density_profile: v_max must be > 0");
    if (l <= -v_max) return 1.0;
    if (l >= v_max) return 0.0;
    // Fraction of the radius-v disk around the landing point that lies on the
    // cut side: circular-segment area normalized by pi.
    const double u = l / v_max;
    return (std::acos(u) - u * std::sqrt(1.0 - u * u)) / M_PI;
}

namespace {

using Fn = std::function<double(double)>;

double simpson(const Fn& f, double a, double fa, double b, double fb, double& fm) {
    const double m = 0.5 * (a + b);
    fm = f(m);
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const Fn& f, double a, double fa, double b, double fb, double fm,
             double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    double flm, frm;
    const double left = simpson(f, a, fa, m, fm, flm);
    const double right = simpson(f, m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adapt(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

// Piecewise adaptive Simpson; breakpoints split the domain at kinks and
// discontinuities so each piece is smooth inside.
double integrate(const Fn& f, double a, double b, std::vector<double> breaks,
                 double rel_tol) {
    breaks.push_back(a);
    breaks.push_back(b);
    std::sort(breaks.begin(), breaks.end());
    std::vector<double> pts;
    for (double x : breaks) {
        if (x < a || x > b) continue;
        if (pts.empty() || x - pts.back() > 1e-14) pts.push_back(x);
    }
    if (pts.size() < 2) return 0.0;

    // First pass sets the absolute tolerance scale.
    double rough = 0.0;
    std::vector<double> fvals(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) fvals[i] = f(pts[i]);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double fm;
        rough += simpson(f, pts[i], fvals[i], pts[i + 1], fvals[i + 1], fm);
    }
    const double scale = std::max(std::abs(rough), 1e-12);

    constexpr int kMaxDepth = 40;  // hard subdivision cap
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double w = (pts[i + 1] - pts[i]) / (pts.back() - pts.front());
        double fm;
        const double whole = simpson(f, pts[i], fvals[i], pts[i + 1], fvals[i + 1], fm);
        total += adapt(f, pts[i], fvals[i], pts[i + 1], fvals[i + 1], fm, whole,
                       rel_tol * scale * std::max(w, 1e-3), kMaxDepth);
    }
    return total;
}

}  // namespace

double contact_pairs_integral(double v_max, double r, double n) {
    if (v_max < 0.0)
        throw std::invalid_argument("contact_pairs_integral: v_max must be >= 0");
    if (!(r > 0.0))
        throw std::invalid_argument("contact_pairs_integral: r must be > 0");

    const auto profile = [v_max](double l) {
        if (v_max > 0.0) return density_profile(l, v_max);
        return l < 0.0 ? 1.0 : (l > 0.0 ? 0.0 : 0.5);
    };

    constexpr double kRelTol = 1e-6;
    const auto inner = [&](double x) {
        const Fn g = [&](double l) {
            const double dl = l - x;
            const double chord2 = r * r - dl * dl;
            if (chord2 <= 0.0) return 0.0;
            return (1.0 - profile(l)) * 2.0 * std::sqrt(chord2);
        };
        return integrate(g, x - r, x + r, {-v_max, v_max, 0.0}, kRelTol * 0.1);
    };

    const Fn outer = [&](double x) { return profile(x) * inner(x); };
    const double hi = v_max + r;
    const double val = integrate(outer, -hi, hi,
                                 {-v_max, v_max, 0.0, v_max - r, r - v_max}, kRelTol);
    const double result = n * n * val;
    if (!std::isfinite(result))
        throw std::runtime_error("contact_pairs_integral: non-finite result");
    return result;
}

double velocity_phi(double v_max, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("velocity_phi: r must be > 0");
    if (v_max < 0.0) throw std::invalid_argument("velocity_phi: v_max must be >= 0");
    if (v_max <= 0.5 * r) return 0.5 * r + v_max * v_max / (3.0 * r);
    return -r * r * r / (48.0 * v_max * v_max) + r * r / (6.0 * v_max) +
           (2.0 / 3.0) * v_max;
}

std::int64_t spreading_time_bound(int n, double epsilon, double phi, double c) {
    if (!(phi > 0.0))
        throw std::invalid_argument("spreading_time_bound: phi must be > 0");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("spreading_time_bound: epsilon must be in (0,1)");
    if (!(c > 0.0)) throw std::invalid_argument("spreading_time_bound: c must be > 0");
    const double bound =
        c * (std::log(static_cast<double>(n)) + std::log(1.0 / epsilon)) / phi;
    return static_cast<std::int64_t>(std::ceil(bound - 1e-12));
}

int optimal_time_floor(int n) {
    if (n < 2) throw std::invalid_argument("optimal_time_floor: n must be >= 2");
    return std::bit_width(static_cast<unsigned>(n - 1));  // ceil(log2 n)
}

}  // namespace gossim
