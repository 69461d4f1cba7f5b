#ifndef TORSIONLAB_TORSION_HPP
#define TORSIONLAB_TORSION_HPP

// Continuous angle determinations along isotopies, finite-time and
// asymptotic torsion, linking numbers of lifted orbits, and the tilt
// determination of embedded curves.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "torsionlab/errors.hpp"
#include "torsionlab/geometry.hpp"
#include "torsionlab/models.hpp"

namespace torsionlab {

struct UnwrapOptions {
    int samples_per_unit = 8;       // initial time grid per unit interval
    double max_step_turns = 0.25;   // accepted principal increment bound
    double dt_floor = 1e-9;         // refinement floor before giving up
    long branch_shift = 0;          // integer added to the initial lift
};

struct AngleSample {
    double t;
    double lift;  // continuous determination value, in turns
};

struct AngleDetermination {
    std::vector<AngleSample> samples;  // ordered by t, starts at t0
    PlanePoint base_point;
    Vec2 base_vector;
    double max_step_rotation = 0.0;  // largest accepted per-step increment
    double branch_offset = 0.0;      // integer branch choice; cancels in spans

    double initial_lift() const { return samples.front().lift + branch_offset; }
    double final_lift() const { return samples.back().lift + branch_offset; }

    // Lift at a sampled time (the base grid always contains the integers).
    double lift_at(double t, double tol = 1e-9) const {
        return raw_at(t, tol) + branch_offset;
    }

    // Lift change between two sampled times; independent of the branch.
    double span(double t_from, double t_to) const { return raw_at(t_to) - raw_at(t_from); }

private:
    double raw_at(double t, double tol = 1e-9) const {
        auto it = std::lower_bound(samples.begin(), samples.end(), t - tol,
                                   [](const AngleSample& s, double v) { return s.t < v; });
        if (it == samples.end() || std::abs(it->t - t) > tol)
            throw std::domain_error("AngleDetermination: time not sampled");
        return it->lift;
    }
};

namespace detail {

// Unwraps the angle-from-vertical of vec(t) over the target grid, bisecting
// any step whose principal increment reaches max_step_turns.
template <typename VecFn>
AngleDetermination unwrap_along(VecFn&& vec, std::vector<double> targets, double t0,
                                const UnwrapOptions& opts) {
    AngleDetermination det;
    const Vec2 v0 = vec(t0);
    det.base_vector = v0;
    det.branch_offset = static_cast<double>(opts.branch_shift);
    double lift = principal_turns(angle_from_vertical(v0));
    det.samples.push_back({t0, lift});

    std::vector<double> pending(targets.rbegin(), targets.rend());
    double t = t0;
    while (!pending.empty()) {
        const double tn = pending.back();
        const double ang = angle_from_vertical(vec(tn));
        const double cand = nearest_lift(lift, ang);
        const double inc = std::abs(cand - lift);
        if (inc >= opts.max_step_turns) {
            if (tn - t <= opts.dt_floor) {
                char buf[128];
                std::snprintf(buf, sizeof(buf),
                              "angle unwrap: rotation too fast near t=%.12g (dt floor hit)", tn);
                throw numeric_error(buf);
            }
            pending.push_back(0.5 * (t + tn));
            continue;
        }
        det.max_step_rotation = std::max(det.max_step_rotation, inc);
        det.samples.push_back({tn, cand});
        lift = cand;
        t = tn;
        pending.pop_back();
    }
    return det;
}

// Sample times for [0, horizon]: samples_per_unit per unit interval, always
// landing exactly on the integers and on the horizon itself.
inline std::vector<double> time_grid(double horizon, int samples_per_unit) {
    std::vector<double> ts;
    const int spu = std::max(1, samples_per_unit);
    for (long unit = 0;; ++unit) {
        for (int j = 1; j <= spu; ++j) {
            const double t = static_cast<double>(unit) + static_cast<double>(j) / spu;
            if (t >= horizon) {
                if (ts.empty() || ts.back() < horizon) ts.push_back(horizon);
                return ts;
            }
            ts.push_back(t);
        }
    }
}

// Df_t(x) * xi along the orbit of x, with per-integer checkpoints so each
// query costs at most one unit-time flow from the last integer.
class TangentPath {
public:
    TangentPath(const IsotopyModel& model, PlanePoint x, Vec2 xi)
        : model_(model), xi_(xi) {
        checkpoints_.push_back({x, Mat2::identity()});
    }

    Vec2 operator()(double t) const {
        const long n = static_cast<long>(std::floor(t));
        const double s = t - static_cast<double>(n);
        ensure(n);
        const FlowSample& cp = checkpoints_[static_cast<std::size_t>(n)];
        if (s <= 0.0) return cp.tangent.apply(xi_);
        const FlowSample step = model_.unit_flow(s, cp.point);
        return (step.tangent * cp.tangent).apply(xi_);
    }

    PlanePoint point_at(double t) const {
        const long n = static_cast<long>(std::floor(t));
        const double s = t - static_cast<double>(n);
        ensure(n);
        const PlanePoint base = checkpoints_[static_cast<std::size_t>(n)].point;
        return s > 0.0 ? model_.unit_point(s, base) : base;
    }

private:
    void ensure(long n) const {
        while (static_cast<long>(checkpoints_.size()) <= n) {
            const FlowSample& last = checkpoints_.back();
            const FlowSample step = model_.unit_flow(1.0, last.point);
            checkpoints_.push_back({step.point, step.tangent * last.tangent});
        }
    }

    const IsotopyModel& model_;
    Vec2 xi_;
    mutable std::vector<FlowSample> checkpoints_;
};

// F_t(y) - F_t(x) for two lifted orbits.
class ChordPath {
public:
    ChordPath(const IsotopyModel& model, PlanePoint x, PlanePoint y)
        : model_(model) {
        x_.push_back(x);
        y_.push_back(y);
    }

    Vec2 operator()(double t) const {
        const long n = static_cast<long>(std::floor(t));
        const double s = t - static_cast<double>(n);
        ensure(n);
        PlanePoint a = x_[static_cast<std::size_t>(n)];
        PlanePoint b = y_[static_cast<std::size_t>(n)];
        if (s > 0.0) {
            a = model_.unit_point(s, a);
            b = model_.unit_point(s, b);
        }
        const Vec2 chord = b - a;
        if (chord.norm() < 1e-12)
            throw numeric_error("linking: orbits collide (chord below 1e-12)");
        return chord;
    }

private:
    void ensure(long n) const {
        while (static_cast<long>(x_.size()) <= n) {
            x_.push_back(model_.unit_point(1.0, x_.back()));
            y_.push_back(model_.unit_point(1.0, y_.back()));
        }
    }

    const IsotopyModel& model_;
    mutable std::vector<PlanePoint> x_;
    mutable std::vector<PlanePoint> y_;
};

}  // namespace detail

// Sampled continuous determination of t -> angle(vertical, Df_t(x) xi).
inline AngleDetermination angle_determination(const IsotopyModel& model, PlanePoint x,
                                              Vec2 xi, double horizon,
                                              const UnwrapOptions& opts = {}) {
    if (xi.dx == 0.0 && xi.dy == 0.0)
        throw std::domain_error("angle_determination: zero tangent vector");
    if (!(horizon > 0.0))
        throw std::domain_error("angle_determination: horizon must be positive");
    detail::TangentPath path(model, x, xi);
    AngleDetermination det =
        detail::unwrap_along(path, detail::time_grid(horizon, opts.samples_per_unit), 0.0, opts);
    det.base_point = x;
    return det;
}

inline AngleDetermination angle_determination(const IsotopyModel& model, AnnulusPoint x,
                                              Vec2 xi, double horizon,
                                              const UnwrapOptions& opts = {}) {
    return angle_determination(model, lift_point(x, 0), xi, horizon, opts);
}

struct TorsionValue {
    double horizon = 0.0;       // n (or a real horizon t)
    double turns_per_time = 0.0;
    double total_turns = 0.0;   // horizon * turns_per_time
};

inline TorsionValue torsion_from(const AngleDetermination& det, double horizon) {
    const double total = det.lift_at(horizon) - det.initial_lift();
    return {horizon, total / horizon, total};
}

// Torsion_n = (lift(n) - lift(0)) / n.
inline TorsionValue torsion_finite(const IsotopyModel& model, PlanePoint x, Vec2 xi, long n,
                                   const UnwrapOptions& opts = {}) {
    if (n <= 0) throw std::domain_error("torsion_finite: n must be positive");
    const AngleDetermination det =
        angle_determination(model, x, xi, static_cast<double>(n), opts);
    return torsion_from(det, static_cast<double>(n));
}

inline TorsionValue torsion_finite(const IsotopyModel& model, AnnulusPoint x, Vec2 xi, long n,
                                   const UnwrapOptions& opts = {}) {
    return torsion_finite(model, lift_point(x, 0), xi, n, opts);
}

// Total angle variation lift(t) - lift(0) over a real horizon.
inline double torsion_total_turns(const IsotopyModel& model, PlanePoint x, Vec2 xi, double t,
                                  const UnwrapOptions& opts = {}) {
    if (t == 0.0) return 0.0;
    const AngleDetermination det = angle_determination(model, x, xi, t, opts);
    return det.lift_at(t) - det.initial_lift();
}

struct AsymptoticTorsion {
    double estimate = 0.0;   // Torsion_{n_max}
    bool converged = false;  // spread over the tail window below tolerance
    std::vector<double> tail;  // Torsion_n for n = 1..n_max
};

// Finite-horizon estimate of the asymptotic torsion. Convergence is a
// reported diagnostic, never a claim that the limit exists.
inline AsymptoticTorsion torsion_asymptotic(const IsotopyModel& model, AnnulusPoint x, Vec2 xi,
                                            long n_max, int window = 10, double tol = 1e-3,
                                            const UnwrapOptions& opts = {}) {
    if (n_max < 2 * window)
        throw std::domain_error("torsion_asymptotic: n_max must be at least twice the window");
    const AngleDetermination det =
        angle_determination(model, x, xi, static_cast<double>(n_max), opts);
    AsymptoticTorsion out;
    out.tail.reserve(static_cast<std::size_t>(n_max));
    const double lift0 = det.initial_lift();
    for (long n = 1; n <= n_max; ++n)
        out.tail.push_back((det.lift_at(static_cast<double>(n)) - lift0) / static_cast<double>(n));
    out.estimate = out.tail.back();
    const auto [lo, hi] =
        std::minmax_element(out.tail.end() - window, out.tail.end());
    out.converged = (*hi - *lo) < tol;
    return out;
}

// Linking_n = unwrapped rotation of the chord F_t(y) - F_t(x), per unit time.
inline double linking_finite(const IsotopyModel& model, PlanePoint x, PlanePoint y, long n,
                             const UnwrapOptions& opts = {}) {
    if (n <= 0) throw std::domain_error("linking_finite: n must be positive");
    if (x.x == y.x && x.y == y.y) throw std::domain_error("linking_finite: x == y");
    detail::ChordPath chord(model, x, y);
    AngleDetermination det = detail::unwrap_along(
        chord, detail::time_grid(static_cast<double>(n), opts.samples_per_unit), 0.0, opts);
    return (det.lift_at(static_cast<double>(n)) - det.initial_lift()) / static_cast<double>(n);
}

// A C^1 curve R -> A given through its lift, with heights unbounded in both
// directions. `point` alone serves the height scans; `with_tangent` is the
// full evaluation.
struct SpaceCurve {
    std::function<PlanePoint(double)> point;
    std::function<std::pair<PlanePoint, Vec2>(double)> with_tangent;
};

struct TiltOptions {
    double initial_depth = 5.0;  // first scan window is [t* - depth, t*]
    int max_doublings = 8;
    int scan_samples = 256;      // per initial_depth of window length
    double branch_band = 1e-6;   // slack accepted around the [-1/4, 1/4] window
    UnwrapOptions unwrap{16, 0.125, 1e-9, 0};
};

struct TiltResult {
    double value = 0.0;            // tilt determination at t*
    double record_parameter = 0.0; // certified height-record parameter used
    double record_height = 0.0;
};

// Tilt determination at t*: the continuous branch of angle(vertical, psi')
// normalized to lie in [-1/4, 1/4] at height-record parameters. A record in
// [t* - L, t*] is certified by scanning and by probe points below the
// window; the window is doubled (up to max_doublings) until one is found.
inline TiltResult tilt_determination(const SpaceCurve& curve, double t_star,
                                     const TiltOptions& opts = {}) {
    double depth = opts.initial_depth;
    std::optional<double> record;
    double record_height = 0.0;
    for (int attempt = 0; attempt <= opts.max_doublings; ++attempt, depth *= 2.0) {
        const double t_lo = t_star - depth;
        const long m = std::lround(opts.scan_samples * std::max(1.0, depth / opts.initial_depth));
        std::vector<double> heights(static_cast<std::size_t>(m) + 1);
        long best = -1;
        for (long i = 0; i <= m; ++i) {
            const double t = t_lo + (t_star - t_lo) * static_cast<double>(i) / m;
            heights[static_cast<std::size_t>(i)] = curve.point(t).y;
            if (best < 0 || heights[static_cast<std::size_t>(i)] > heights[static_cast<std::size_t>(best)])
                best = i;
        }
        // Reject if the maximum sits in the leading edge of the window or if
        // anything at or below the window start competes with it.
        const long guard = std::max<long>(1, m / 20);
        if (best <= guard) continue;
        bool dominated = false;
        for (long i = 0; i <= guard && !dominated; ++i)
            dominated = heights[static_cast<std::size_t>(i)] >= heights[static_cast<std::size_t>(best)];
        for (const double probe : {1.25, 1.5, 2.0})
            if (curve.point(t_star - depth * probe).y >= heights[static_cast<std::size_t>(best)])
                dominated = true;
        if (dominated) continue;

        // Golden-section polish of the record inside its bracket.
        double a = t_lo + (t_star - t_lo) * static_cast<double>(best - 1) / m;
        double b = t_lo + (t_star - t_lo) * static_cast<double>(std::min(best + 1, m)) / m;
        constexpr double invphi = 0.6180339887498949;
        double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
        double f1 = curve.point(x1).y, f2 = curve.point(x2).y;
        while (b - a > 1e-12 * std::max(1.0, std::abs(t_star))) {
            if (f1 < f2) {
                a = x1; x1 = x2; f1 = f2;
                x2 = a + invphi * (b - a);
                f2 = curve.point(x2).y;
            } else {
                b = x2; x2 = x1; f2 = f1;
                x1 = b - invphi * (b - a);
                f1 = curve.point(x1).y;
            }
        }
        record = std::min(0.5 * (a + b), t_star);
        record_height = curve.point(*record).y;
        break;
    }
    if (!record)
        throw numeric_error("tilt: no certified height record in the truncated domain");

    const auto [rec_pt, rec_tan] = curve.with_tangent(*record);
    (void)rec_pt;
    const double lift0 = principal_turns(angle_from_vertical(rec_tan));
    if (std::abs(lift0) > 0.25 + opts.branch_band)
        throw numeric_error("tilt: tangent at the height record is outside the quarter window");

    TiltResult out;
    out.record_parameter = *record;
    out.record_height = record_height;
    if (*record >= t_star) {
        out.value = lift0;
        return out;
    }
    auto tangent_at = [&curve](double t) { return curve.with_tangent(t).second; };
    const double span = t_star - *record;
    const int nsteps = std::max(16, static_cast<int>(std::ceil(span * opts.unwrap.samples_per_unit)));
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(nsteps));
    for (int i = 1; i <= nsteps; ++i)
        grid.push_back(*record + span * static_cast<double>(i) / nsteps);
    grid.back() = t_star;
    const AngleDetermination det = detail::unwrap_along(tangent_at, std::move(grid), *record, opts.unwrap);
    out.value = det.final_lift();
    return out;
}

// Torsion_1(f, z, vertical) computed through the tilt of the image of the
// vertical line through z under the time-one map; an independent route that
// must agree with the isotopy determination.
inline double torsion_via_tilt(const IsotopyModel& model, AnnulusPoint z,
                               const TiltOptions& opts = {}) {
    const double x0 = z.x;
    SpaceCurve image;
    image.point = [&model, x0](double t) {
        return model.lifted_evaluate(1.0, PlanePoint{x0, t});
    };
    image.with_tangent = [&model, x0](double t) {
        const FlowSample fs = model.flow(1.0, PlanePoint{x0, t});
        return std::make_pair(fs.point, fs.tangent.apply(vertical()));
    };
    return tilt_determination(image, z.y, opts).value;
}

}  // namespace torsionlab

#endif
