#ifndef TORSIONLAB_CURVES_HPP
#define TORSIONLAB_CURVES_HPP

// C^1 essential curves: tangent-angle variation, complexity, max-height
// argmax under a pushed isotopy, the torsion/variation balance at max-height
// preimages, and graph tests.

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "torsionlab/errors.hpp"
#include "torsionlab/geometry.hpp"
#include "torsionlab/torsion.hpp"

namespace torsionlab {

// Essential curve T -> A through its plane lift Gamma, which satisfies
// Gamma(S+1) = Gamma(S) + (homotopy_sign, 0).
class EssentialCurve {
public:
    virtual ~EssentialCurve() = default;

    virtual PlanePoint lifted_position(double s) const = 0;
    virtual Vec2 derivative(double s) const = 0;  // 1-periodic in s
    virtual int homotopy_sign() const = 0;
    virtual int resolution() const { return 4096; }
    virtual std::string name() const = 0;

    AnnulusPoint position(double s) const { return project_point(lifted_position(s)); }
    double height(double s) const { return lifted_position(s).y; }
};

namespace detail {

inline double golden_max(const std::function<double(double)>& f, double a, double b,
                         double tol = 1e-12) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace detail

// Curves with trigonometric coordinate series. Covers the built-in families:
//   circle(r):      Gamma(s) = (s, r)
//   graph(coeffs):  Gamma(s) = (s, psi(s)) for a trigonometric psi
//   loop(...):      both coordinates trigonometric around the drift term
class FourierCurve final : public EssentialCurve {
public:
    struct Series {
        double constant = 0.0;
        std::vector<double> cos_coeffs;  // j = 1..
        std::vector<double> sin_coeffs;

        double value(double s) const {
            double v = constant;
            for (std::size_t j = 0; j < cos_coeffs.size(); ++j)
                v += cos_coeffs[j] * std::cos(two_pi * (j + 1) * s);
            for (std::size_t j = 0; j < sin_coeffs.size(); ++j)
                v += sin_coeffs[j] * std::sin(two_pi * (j + 1) * s);
            return v;
        }

        double slope(double s) const {
            double v = 0.0;
            for (std::size_t j = 0; j < cos_coeffs.size(); ++j)
                v -= cos_coeffs[j] * two_pi * (j + 1) * std::sin(two_pi * (j + 1) * s);
            for (std::size_t j = 0; j < sin_coeffs.size(); ++j)
                v += sin_coeffs[j] * two_pi * (j + 1) * std::cos(two_pi * (j + 1) * s);
            return v;
        }

        bool empty() const { return cos_coeffs.empty() && sin_coeffs.empty(); }
    };

    static FourierCurve circle(double r) {
        FourierCurve c;
        c.y_.constant = r;
        c.label_ = "circle(r=" + std::to_string(r) + ")";
        return c;
    }

    static FourierCurve graph(Series heights) {
        FourierCurve c;
        c.y_ = std::move(heights);
        c.label_ = "graph";
        c.validate();
        return c;
    }

    static FourierCurve loop(int sign, Series x_wiggle, Series heights, int resolution = 4096) {
        if (sign != 1 && sign != -1)
            throw std::domain_error("FourierCurve: lifted displacement must be +1 or -1");
        FourierCurve c;
        c.sign_ = sign;
        c.x_ = std::move(x_wiggle);
        c.y_ = std::move(heights);
        c.resolution_ = resolution;
        c.label_ = "loop";
        c.validate();
        c.check_embedded();
        return c;
    }

    PlanePoint lifted_position(double s) const override {
        return {sign_ * s + x_.value(s), y_.value(s)};
    }

    Vec2 derivative(double s) const override {
        return {static_cast<double>(sign_) + x_.slope(s), y_.slope(s)};
    }

    int homotopy_sign() const override { return sign_; }
    int resolution() const override { return resolution_; }
    std::string name() const override { return label_; }

private:
    FourierCurve() = default;

    void validate() const {
        for (int i = 0; i < resolution_; ++i) {
            const double s = static_cast<double>(i) / resolution_;
            if (derivative(s).norm() < 1e-9)
                throw std::domain_error("FourierCurve: vanishing tangent at s=" + std::to_string(s));
        }
    }

    // Approximate embeddedness test: pairwise intersection of the sampled
    // polyline (adjacent segments skipped), in annulus coordinates.
    void check_embedded() const {
        const int m = 1024;
        std::vector<PlanePoint> pts(m + 1);
        for (int i = 0; i <= m; ++i)
            pts[i] = lifted_position(static_cast<double>(i) / m);
        auto seg_intersect = [](PlanePoint a, PlanePoint b, PlanePoint c, PlanePoint d) {
            const auto orient = [](PlanePoint p, PlanePoint q, PlanePoint r) {
                return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
            };
            const double o1 = orient(a, b, c), o2 = orient(a, b, d);
            const double o3 = orient(c, d, a), o4 = orient(c, d, b);
            return o1 * o2 < 0 && o3 * o4 < 0;
        };
        for (int i = 0; i < m; ++i) {
            for (int j = i + 2; j < m; ++j) {
                if (i == 0 && j == m - 1) continue;
                // Compare against the neighbour copy as well: the annulus
                // identifies x with x + 1.
                for (int shift = -1; shift <= 1; ++shift) {
                    PlanePoint c = pts[j], d = pts[j + 1];
                    c.x += shift;
                    d.x += shift;
                    if (shift == 0 && (j == i + 1 || (i == 0 && j == m - 1))) continue;
                    if (seg_intersect(pts[i], pts[i + 1], c, d))
                        throw std::domain_error("FourierCurve: loop is not embedded");
                }
            }
        }
    }

    int sign_ = 1;
    Series x_;
    Series y_;
    int resolution_ = 4096;
    std::string label_ = "curve";
};

// Level curve {H = h} of the pendulum above the separatrix (h > c), a graph
// over the angle coordinate and invariant under the flow.
class PendulumLevelCurve final : public EssentialCurve {
public:
    PendulumLevelCurve(double stiffness, double energy_level, int resolution = 1024)
        : c_(stiffness), h_(energy_level), resolution_(resolution) {
        if (!(h_ > c_))
            throw std::domain_error("PendulumLevelCurve: level must lie above the separatrix");
    }

    PlanePoint lifted_position(double s) const override {
        return {s, height_at(s)};
    }

    Vec2 derivative(double s) const override {
        return {1.0, two_pi * c_ * std::sin(two_pi * s) / height_at(s)};
    }

    int homotopy_sign() const override { return 1; }
    int resolution() const override { return resolution_; }
    std::string name() const override { return "pendulum-level"; }

private:
    double height_at(double s) const {
        return std::sqrt(2.0 * (h_ + c_ * std::cos(two_pi * s)));
    }

    double c_, h_;
    int resolution_;
};

struct CurveUnwrapOptions {
    int min_samples = 8;
    double max_step_turns = 0.125;
    double ds_floor = 1e-12;
};

// Unwrapped variation of angle(vertical, gamma') over the lifted arc
// [s_lo, s_hi]. Running extrema of the determination are reported so the
// complexity scan can reuse a single pass.
struct ArcVariation {
    double total = 0.0;
    double max_above_start = 0.0;  // max over the arc of lift(s) - lift(s_lo)
    double min_below_start = 0.0;
};

inline ArcVariation angle_variation_arc(const EssentialCurve& curve, double s_lo, double s_hi,
                                        const CurveUnwrapOptions& opts = {}) {
    auto tangent = [&curve](double s) {
        const Vec2 d = curve.derivative(s);
        if (d.norm() < 1e-12)
            throw numeric_error("angle variation: degenerate tangent");
        return d;
    };
    const int n = std::max<int>(opts.min_samples,
                                static_cast<int>(std::ceil((s_hi - s_lo) * curve.resolution())));
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        grid.push_back(s_lo + (s_hi - s_lo) * static_cast<double>(i) / n);
    grid.back() = s_hi;
    UnwrapOptions uo;
    uo.max_step_turns = opts.max_step_turns;
    uo.dt_floor = opts.ds_floor;
    const AngleDetermination det = detail::unwrap_along(tangent, std::move(grid), s_lo, uo);
    ArcVariation out;
    const double lift0 = det.initial_lift();
    out.total = det.final_lift() - lift0;
    for (const AngleSample& s : det.samples) {
        out.max_above_start = std::max(out.max_above_start, s.lift - lift0);
        out.min_below_start = std::min(out.min_below_start, s.lift - lift0);
    }
    return out;
}

// Var between two points of the curve: the second parameter is lifted into
// (s1, s1 + 1], so coincident parameters traverse the whole loop (where the
// tangent winding of an embedded essential curve vanishes).
inline double angle_variation(const EssentialCurve& curve, double s1, double s2,
                              const CurveUnwrapOptions& opts = {}) {
    double d = frac(s2 - s1);
    if (d == 0.0) d = 1.0;
    return angle_variation_arc(curve, s1, s1 + d, opts).total;
}

// Parameter of the maximal height of the curve itself (t = 0 anchor).
inline double max_height_anchor(const EssentialCurve& curve) {
    const int m = std::max(curve.resolution(), 4096);
    double best_s = 0.0, best_h = curve.height(0.0);
    for (int i = 1; i < m; ++i) {
        const double s = static_cast<double>(i) / m;
        const double h = curve.height(s);
        if (h > best_h) {
            best_h = h;
            best_s = s;
        }
    }
    const double w = 1.0 / m;
    return detail::golden_max([&curve](double s) { return curve.height(s); },
                              best_s - w, best_s + w);
}

// Complexity: the maximal |Var| from a max-height anchor over one period.
inline double curve_complexity(const EssentialCurve& curve,
                               std::optional<double> anchor = std::nullopt,
                               const CurveUnwrapOptions& opts = {}) {
    const double s0 = anchor.value_or(max_height_anchor(curve));
    const ArcVariation arc = angle_variation_arc(curve, s0, s0 + 1.0, opts);
    return std::max(arc.max_above_start, -arc.min_below_start);
}

struct ArgmaxResult {
    std::vector<double> params;  // one polished representative per cluster
    double max_height = 0.0;
    bool plateau = false;        // more than half of the samples tie the max
};

// All parameters achieving the maximal height of f_t(gamma), found by a
// dense scan polished with golden section. Ties within height_tol cluster
// into one representative each.
inline ArgmaxResult max_height_argmax(const IsotopyModel& model, const EssentialCurve& curve,
                                      double t, double height_tol = 1e-9,
                                      std::optional<int> scan_resolution = std::nullopt) {
    const int m = scan_resolution.value_or(curve.resolution());
    auto pushed_height = [&](double s) {
        return model.lifted_evaluate(t, curve.lifted_position(s)).y;
    };
    std::vector<double> h(static_cast<std::size_t>(m));
    double raw_max = -1e300;
    for (int i = 0; i < m; ++i) {
        h[static_cast<std::size_t>(i)] = pushed_height(static_cast<double>(i) / m);
        raw_max = std::max(raw_max, h[static_cast<std::size_t>(i)]);
    }

    std::vector<char> near(static_cast<std::size_t>(m));
    int near_count = 0;
    for (int i = 0; i < m; ++i) {
        near[static_cast<std::size_t>(i)] = h[static_cast<std::size_t>(i)] >= raw_max - height_tol;
        near_count += near[static_cast<std::size_t>(i)];
    }

    ArgmaxResult out;
    if (near_count * 2 > m) {
        out.plateau = true;
        out.params.push_back(0.0);
        out.max_height = raw_max;
        return out;
    }

    // Group circularly adjacent near-max samples and polish one
    // representative per group.
    std::vector<char> visited(static_cast<std::size_t>(m), 0);
    const double w = 1.0 / m;
    for (int i = 0; i < m; ++i) {
        if (!near[static_cast<std::size_t>(i)] || visited[static_cast<std::size_t>(i)]) continue;
        int best = i;
        int j = i;
        while (near[static_cast<std::size_t>(j)] && !visited[static_cast<std::size_t>(j)]) {
            visited[static_cast<std::size_t>(j)] = 1;
            if (h[static_cast<std::size_t>(j)] > h[static_cast<std::size_t>(best)]) best = j;
            j = (j + 1) % m;
        }
        const double sb = static_cast<double>(best) / m;
        const double polished = detail::golden_max(pushed_height, sb - w, sb + w);
        out.params.push_back(frac(polished));
        out.max_height = std::max(out.max_height, pushed_height(polished));
    }

    // Re-filter: keep only clusters whose polished height ties the best.
    std::vector<double> kept;
    for (const double s : out.params)
        if (pushed_height(s) >= out.max_height - height_tol) kept.push_back(s);
    std::sort(kept.begin(), kept.end());
    out.params = std::move(kept);
    return out;
}

struct MaxHeightBalance {
    double value = 0.0;   // t*Torsion_t at the argmax + Var from the anchor
    double s_t = 0.0;     // argmax representative used
    bool plateau = false;
};

// The combination t*Torsion_t(f, gamma(s_t), gamma'(s_t)) + Var(s_0, s_t)
// evaluated at a max-height preimage s_t. It is integer-valued and vanishes
// identically; the computed value is returned unrounded.
inline MaxHeightBalance max_height_balance(const IsotopyModel& model, const EssentialCurve& curve,
                                           double t, double s0,
                                           const UnwrapOptions& opts = {}) {
    MaxHeightBalance out;
    if (t < 0.0) throw std::domain_error("max_height_balance: negative time");
    const ArgmaxResult am = max_height_argmax(model, curve, t);
    out.plateau = am.plateau;
    out.s_t = am.params.front();
    double torsion_part = 0.0;
    if (t > 0.0)
        torsion_part = torsion_total_turns(model, curve.lifted_position(out.s_t),
                                           curve.derivative(out.s_t), t, opts);
    double var_part = 0.0;
    const double gap = std::abs(principal_turns(out.s_t - s0));
    if (gap > 1e-12) var_part = angle_variation(curve, s0, out.s_t);
    out.value = torsion_part + var_part;
    return out;
}

struct GraphCheck {
    bool is_graph = false;
    double margin = 0.0;                 // min |horizontal tangent component|
    std::optional<double> witness;       // parameter with a vertical tangent
};

// A curve transversal to the vertical everywhere is a graph: checks the sign
// of the horizontal derivative component over all samples.
inline GraphCheck graph_check(const EssentialCurve& curve) {
    const int m = curve.resolution();
    GraphCheck out;
    out.margin = 1e300;
    int sign = 0;
    double prev = curve.derivative(0.0).dx;
    for (int i = 0; i < m; ++i) {
        const double s = static_cast<double>(i) / m;
        const double dx = curve.derivative(s).dx;
        out.margin = std::min(out.margin, std::abs(dx));
        const int here = dx > 0 ? 1 : (dx < 0 ? -1 : 0);
        if (here == 0 || (sign != 0 && here != sign)) {
            // Bisect the bracketing interval for the vertical-tangent witness.
            double a = s - 1.0 / m, b = s;
            double fa = prev;
            for (int it = 0; it < 100 && b - a > 1e-14; ++it) {
                const double mid = 0.5 * (a + b);
                const double fm = curve.derivative(mid).dx;
                if ((fa <= 0) == (fm <= 0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            out.witness = frac(0.5 * (a + b));
            out.is_graph = false;
            out.margin = 0.0;
            return out;
        }
        sign = here;
        prev = dx;
    }
    out.is_graph = true;
    return out;
}

struct VarZeroReport {
    bool applicable = false;  // at least two isolated max-height parameters
    bool plateau = false;
    bool pass = true;
    double max_abs_variation = 0.0;
    std::vector<double> params;
};

// Var between every pair of isolated max-height parameters must vanish.
inline VarZeroReport max_height_variation_report(const EssentialCurve& curve,
                                                 double tolerance = 1e-6) {
    VarZeroReport out;
    IdentityModel id;
    const ArgmaxResult am = max_height_argmax(id, curve, 0.0);
    out.plateau = am.plateau;
    out.params = am.params;
    if (am.plateau || am.params.size() < 2) return out;
    out.applicable = true;
    for (std::size_t i = 0; i < am.params.size(); ++i) {
        for (std::size_t j = 0; j < am.params.size(); ++j) {
            if (i == j) continue;
            const double v = angle_variation(curve, am.params[i], am.params[j]);
            out.max_abs_variation = std::max(out.max_abs_variation, std::abs(v));
        }
    }
    out.pass = out.max_abs_variation < tolerance;
    return out;
}

// Parameter of the curve point nearest to a target (annulus metric), used to
// locate f^N(gamma(s)) back on an invariant curve.
inline double locate_parameter(const EssentialCurve& curve, PlanePoint target,
                               std::optional<int> scan_resolution = std::nullopt) {
    const int m = scan_resolution.value_or(std::max(curve.resolution(), 4096));
    const AnnulusPoint tgt = project_point(target);
    auto dist2 = [&](double s) {
        const AnnulusPoint p = curve.position(s);
        const double dx = principal_turns(p.x - tgt.x);
        const double dy = p.y - tgt.y;
        return -(dx * dx + dy * dy);
    };
    double best_s = 0.0, best = dist2(0.0);
    for (int i = 1; i < m; ++i) {
        const double s = static_cast<double>(i) / m;
        const double v = dist2(s);
        if (v > best) {
            best = v;
            best_s = s;
        }
    }
    const double w = 1.0 / m;
    return frac(detail::golden_max(dist2, best_s - w, best_s + w));
}

}  // namespace torsionlab

#endif
