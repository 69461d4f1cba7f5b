#ifndef TORSIONLAB_HARNESS_HPP
#define TORSIONLAB_HARNESS_HPP

// Executable forms of the negative-torsion results: grid certification,
// zero-torsion witnesses on essential curves, confinement windows, the
// linking/torsion intermediate-value search, cone bounds, and the
// graph-theorem verification for invariant curves.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "torsionlab/curves.hpp"
#include "torsionlab/errors.hpp"
#include "torsionlab/geometry.hpp"
#include "torsionlab/models.hpp"
#include "torsionlab/parallel.hpp"
#include "torsionlab/torsion.hpp"

namespace torsionlab {

struct GridSpec {
    int nx = 64;
    int ny = 64;
    double y_lo = -3.0;
    double y_hi = 3.0;
};

struct TorsionCertificate {
    GridSpec grid;
    double min_torsion = 0.0;
    double max_torsion = 0.0;
    double margin = 0.0;  // -max_torsion when the grid is fully negative
    bool pass = false;
    std::vector<double> values;  // row-major (iy * nx + ix)
};

// Evaluates Torsion_1(f, z, vertical) on the grid. Pass requires the grid
// maximum to stay strictly below -margin_floor; behaviour outside the grid
// is never extrapolated.
inline TorsionCertificate certify_negative_torsion(const IsotopyModel& model,
                                                   const GridSpec& grid,
                                                   double margin_floor = 0.0,
                                                   int threads = 0) {
    if (grid.nx < 2 || grid.ny < 2)
        throw std::domain_error("certify: grid resolution must be at least 2");
    TorsionCertificate cert;
    cert.grid = grid;
    cert.values.assign(static_cast<std::size_t>(grid.nx) * grid.ny,
                       std::numeric_limits<double>::quiet_NaN());
    parallel_for(cert.values.size(), threads, [&](std::size_t idx) {
        const int ix = static_cast<int>(idx) % grid.nx;
        const int iy = static_cast<int>(idx) / grid.nx;
        const double x = static_cast<double>(ix) / grid.nx;
        const double y = grid.y_lo + (grid.y_hi - grid.y_lo) * iy / (grid.ny - 1);
        try {
            cert.values[idx] =
                torsion_finite(model, AnnulusPoint{x, y}, vertical(), 1).turns_per_time;
        } catch (const std::exception&) {
            // leave NaN; treated as a failed point below
        }
    });
    cert.min_torsion = 1e300;
    cert.max_torsion = -1e300;
    bool all_finite = true;
    for (const double v : cert.values) {
        if (!std::isfinite(v)) {
            all_finite = false;
            continue;
        }
        cert.min_torsion = std::min(cert.min_torsion, v);
        cert.max_torsion = std::max(cert.max_torsion, v);
    }
    cert.margin = -cert.max_torsion;
    cert.pass = all_finite && cert.max_torsion < -margin_floor;
    return cert;
}

// [y_min, y_max] visited by the first n_max iterates of the sampled curve,
// padded; the band a certification grid has to cover.
inline std::pair<double, double> iterate_height_band(const IsotopyModel& model,
                                                     const EssentialCurve& curve, long n_max,
                                                     int samples = 256) {
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < samples; ++i) {
        PlanePoint p = curve.lifted_position(static_cast<double>(i) / samples);
        lo = std::min(lo, p.y);
        hi = std::max(hi, p.y);
        for (long n = 0; n < n_max; ++n) {
            p = model.unit_point(1.0, p);
            lo = std::min(lo, p.y);
            hi = std::max(hi, p.y);
        }
    }
    const double pad = 0.05 * (hi - lo) + 0.1;
    return {lo - pad, hi + pad};
}

struct FindZeroOptions {
    int threads = 0;
    double bound_slack = 1e-6;     // slack on |n Torsion_n| <= C(gamma)
    double window_slack = 1e-9;    // slack on the closed end of [-K/2N, 0)
    int scan_per_horizon = 48;     // argmax scan density grows like 48*n
    int cluster_bins = 1024;
    bool assume_negative_torsion = false;
    int certify_nx = 48;
    int certify_ny = 48;
};

struct ZeroTorsionReport {
    std::string model_name;
    std::string curve_name;
    long n_max = 0;
    double complexity = 0.0;
    long k_bounded_before = 0;  // floor(2C) + 2: window constant for C itself
    long k_theorem = 0;         // floor(2C + 1) + 2: constant after the
                                // vertical-vector swap; used for residuals
    std::vector<double> s_seq;          // max-height preimages s_n
    std::vector<double> tangent_total;  // n*Torsion_n at (gamma(s_n), gamma'(s_n))
    bool building_bound_ok = false;
    double s_limit = 0.0;  // witness: largest-n member of the densest cell
    long limit_from_n = 0;
    int cluster_cell = 0;
    int cluster_count = 0;
    double cluster_spread = 0.0;
    std::vector<double> residual_torsion;  // Torsion_N(f, gamma(s_limit), vertical)
    bool windows_ok = false;
    bool certified = false;
    bool assumed = false;
    TorsionCertificate certificate;
};

// The witness construction behind the zero-torsion theorem: for each n take
// a max-height preimage s_n of f^n(gamma), check the complexity bound on the
// tangent torsion, cluster the sequence, and verify the [-K/(2N), 0)
// residual windows at the selected witness.
inline ZeroTorsionReport find_zero_torsion_on_curve(const IsotopyModel& model,
                                                    const EssentialCurve& curve, long n_max,
                                                    const FindZeroOptions& opts = {}) {
    ZeroTorsionReport rep;
    rep.model_name = model.name();
    rep.curve_name = curve.name();
    rep.n_max = n_max;
    if (n_max < 1) throw std::domain_error("find_zero: n_max must be positive");

    if (opts.assume_negative_torsion) {
        rep.assumed = true;
    } else {
        const auto [lo, hi] = iterate_height_band(model, curve, n_max);
        GridSpec grid{opts.certify_nx, opts.certify_ny, lo, hi};
        rep.certificate = certify_negative_torsion(model, grid, 0.0, opts.threads);
        rep.certified = rep.certificate.pass;
        if (!rep.certified) {
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "find_zero: model not certified negative-torsion on y in [%.6g, %.6g] "
                          "(grid max Torsion_1 = %.6g)",
                          lo, hi, rep.certificate.max_torsion);
            throw precondition_error(buf);
        }
    }

    rep.complexity = curve_complexity(curve);
    rep.k_bounded_before = static_cast<long>(std::floor(2.0 * rep.complexity)) + 2;
    rep.k_theorem = static_cast<long>(std::floor(2.0 * rep.complexity + 1.0)) + 2;

    rep.s_seq.assign(static_cast<std::size_t>(n_max), 0.0);
    rep.tangent_total.assign(static_cast<std::size_t>(n_max), 0.0);
    std::vector<std::string> errors(static_cast<std::size_t>(n_max));
    parallel_for(static_cast<std::size_t>(n_max), opts.threads, [&](std::size_t i) {
        const long n = static_cast<long>(i) + 1;
        try {
            const int scan = std::max<int>(curve.resolution(),
                                           opts.scan_per_horizon * static_cast<int>(n));
            const ArgmaxResult am = max_height_argmax(model, curve, static_cast<double>(n),
                                                      1e-9, scan);
            const double sn = am.params.front();
            rep.s_seq[i] = sn;
            rep.tangent_total[i] = torsion_total_turns(
                model, curve.lifted_position(sn), curve.derivative(sn), static_cast<double>(n));
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (const std::string& e : errors)
        if (!e.empty()) throw numeric_error("find_zero: " + e);

    rep.building_bound_ok = true;
    for (const double total : rep.tangent_total)
        if (std::abs(total) > rep.complexity + opts.bound_slack) rep.building_bound_ok = false;

    // Densest 1/cluster_bins cell of (s_n); the witness is its largest-n
    // member, an exact max-height preimage, so the window below is the
    // confinement statement itself rather than a continuity estimate.
    std::vector<int> counts(static_cast<std::size_t>(opts.cluster_bins), 0);
    for (const double s : rep.s_seq) {
        const int cell = std::min<int>(opts.cluster_bins - 1,
                                       static_cast<int>(frac(s) * opts.cluster_bins));
        ++counts[static_cast<std::size_t>(cell)];
    }
    rep.cluster_cell = static_cast<int>(
        std::max_element(counts.begin(), counts.end()) - counts.begin());
    rep.cluster_count = counts[static_cast<std::size_t>(rep.cluster_cell)];
    double cell_lo = 1e300, cell_hi = -1e300;
    for (std::size_t i = 0; i < rep.s_seq.size(); ++i) {
        const double s = frac(rep.s_seq[i]);
        const int cell = std::min<int>(opts.cluster_bins - 1,
                                       static_cast<int>(s * opts.cluster_bins));
        if (cell != rep.cluster_cell) continue;
        cell_lo = std::min(cell_lo, s);
        cell_hi = std::max(cell_hi, s);
        rep.s_limit = s;
        rep.limit_from_n = static_cast<long>(i) + 1;
    }
    rep.cluster_spread = cell_hi - cell_lo;

    const AngleDetermination det = angle_determination(
        model, curve.lifted_position(rep.s_limit), vertical(), static_cast<double>(n_max));
    rep.residual_torsion.assign(static_cast<std::size_t>(n_max), 0.0);
    rep.windows_ok = true;
    const double lift0 = det.initial_lift();
    for (long n = 1; n <= n_max; ++n) {
        const double value = (det.lift_at(static_cast<double>(n)) - lift0) / n;
        rep.residual_torsion[static_cast<std::size_t>(n - 1)] = value;
        const double bound = static_cast<double>(rep.k_theorem) / (2.0 * n);
        if (!(value < 0.0 && value >= -bound - opts.window_slack)) rep.windows_ok = false;
    }
    return rep;
}

struct BoundedBeforeReport {
    double c_bound = 0.0;
    long k = 0;  // floor(2C) + 2
    bool precondition_ok = false;
    double n_total = 0.0;                // n*Torsion_n(f, z, vertical)
    std::vector<double> partial_totals;  // m*Torsion_m for m = 1..n
    bool pass = false;
    std::string note;
};

// Confinement of the whole torsion history: |n Torsion_n| <= C forces
// m Torsion_m in [-K/2, 0) for every m <= n, K = floor(2C) + 2.
inline BoundedBeforeReport bounded_before_check(const IsotopyModel& model, AnnulusPoint z,
                                                long n, double c_bound, double slack = 1e-9) {
    if (n < 1) throw std::domain_error("bounded_before: n must be positive");
    BoundedBeforeReport rep;
    rep.c_bound = c_bound;
    rep.k = static_cast<long>(std::floor(2.0 * c_bound)) + 2;
    const AngleDetermination det =
        angle_determination(model, z, vertical(), static_cast<double>(n));
    const double lift0 = det.initial_lift();
    rep.partial_totals.reserve(static_cast<std::size_t>(n));
    for (long m = 1; m <= n; ++m)
        rep.partial_totals.push_back(det.lift_at(static_cast<double>(m)) - lift0);
    rep.n_total = rep.partial_totals.back();
    rep.precondition_ok = std::abs(rep.n_total) <= c_bound + slack;
    if (!rep.precondition_ok) {
        rep.pass = false;
        rep.note = "precondition failed: |n Torsion_n| exceeds the stated bound";
        return rep;
    }
    rep.pass = true;
    for (const double total : rep.partial_totals) {
        if (!(total < 0.0 && total >= -0.5 * static_cast<double>(rep.k) - slack)) {
            rep.pass = false;
            rep.note = "window violated";
            break;
        }
    }
    return rep;
}

struct SegmentRootResult {
    PlanePoint z;
    double s = 0.0;  // position along the segment
    double torsion = 0.0;
    double residual = 0.0;
};

// Intermediate-value search for a point on [x, y] whose Torsion_n with
// respect to the chord direction equals the linking number l.
inline SegmentRootResult segment_torsion_root(const IsotopyModel& model, PlanePoint x,
                                              PlanePoint y, long n, double l,
                                              double residual_tol = 1e-8,
                                              double param_floor = 1e-10) {
    const Vec2 dir = y - x;
    if (dir.norm() == 0.0) throw std::domain_error("segment_torsion_root: x == y");
    auto g = [&](double s) {
        const PlanePoint z{x.x + s * dir.dx, x.y + s * dir.dy};
        return torsion_finite(model, z, dir, n).turns_per_time - l;
    };

    auto finish = [&](double s, double gs) {
        SegmentRootResult out;
        out.s = s;
        out.z = {x.x + s * dir.dx, x.y + s * dir.dy};
        out.torsion = gs + l;
        out.residual = std::abs(gs);
        return out;
    };

    double a = 0.0, b = 1.0;
    double ga = g(a), gb = g(b);
    if (std::abs(ga) < residual_tol) return finish(a, ga);
    if (std::abs(gb) < residual_tol) return finish(b, gb);
    if (ga * gb > 0.0) {
        // No endpoint bracket; scan at increasing density for a crossing.
        bool found = false;
        for (int m = 64; m <= 4096 && !found; m *= 2) {
            double prev_s = 0.0, prev_g = ga;
            for (int i = 1; i <= m; ++i) {
                const double s = static_cast<double>(i) / m;
                const double gs = g(s);
                if (std::abs(gs) < residual_tol) return finish(s, gs);
                if (prev_g * gs < 0.0) {
                    a = prev_s;
                    b = s;
                    ga = prev_g;
                    gb = gs;
                    found = true;
                    break;
                }
                prev_s = s;
                prev_g = gs;
            }
        }
        if (!found)
            throw numeric_error(
                "segment_torsion_root: no sign change found on the segment; "
                "the mean-value crossing predicted by the linking number is missing");
    }
    while (b - a > param_floor) {
        const double mid = 0.5 * (a + b);
        const double gm = g(mid);
        if (std::abs(gm) < residual_tol) return finish(mid, gm);
        if (ga * gm <= 0.0) {
            b = mid;
            gb = gm;
        } else {
            a = mid;
            ga = gm;
        }
    }
    const double s = 0.5 * (a + b);
    const double gs = g(s);
    if (std::abs(gs) >= residual_tol)
        throw numeric_error("segment_torsion_root: bisection floor reached before the "
                            "residual tolerance");
    return finish(s, gs);
}

struct QuarterBoundReport {
    std::vector<double> totals;  // n*Torsion_n(f, gamma(s_n), vertical)
    double worst = 0.0;
    bool pass = false;
};

// On graph curves the max-height preimages keep |n Torsion_n| within a
// quarter turn for every n.
inline QuarterBoundReport graph_quarter_bound(const IsotopyModel& model,
                                              const EssentialCurve& curve, long n_max,
                                              double slack = 1e-6, int threads = 0,
                                              int scan_per_horizon = 48) {
    const GraphCheck gc = graph_check(curve);
    if (!gc.is_graph)
        throw precondition_error("graph_quarter_bound: curve is not a graph"
                                 + std::string(gc.witness ? " (vertical tangent found)" : ""));
    QuarterBoundReport rep;
    rep.totals.assign(static_cast<std::size_t>(n_max), 0.0);
    std::vector<std::string> errors(static_cast<std::size_t>(n_max));
    parallel_for(static_cast<std::size_t>(n_max), threads, [&](std::size_t i) {
        const long n = static_cast<long>(i) + 1;
        try {
            const int scan = std::max<int>(curve.resolution(),
                                           scan_per_horizon * static_cast<int>(n));
            const ArgmaxResult am =
                max_height_argmax(model, curve, static_cast<double>(n), 1e-9, scan);
            rep.totals[i] = torsion_total_turns(model, curve.lifted_position(am.params.front()),
                                                vertical(), static_cast<double>(n));
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (const std::string& e : errors)
        if (!e.empty()) throw numeric_error("graph_quarter_bound: " + e);
    rep.worst = 0.0;
    for (const double total : rep.totals) rep.worst = std::max(rep.worst, std::abs(total));
    rep.pass = rep.worst <= 0.25 + slack;
    return rep;
}

struct ConeBoundReport {
    double epsilon = 0.0;  // -max Torsion_1 over the sampled cone bundle
    double delta = 0.0;
    long n_max = 0;
    double worst_total = -1e300;  // max over samples of N*Torsion_N
    bool pass = false;
};

// Uniform torsion bound on a sampled invariant set: estimate epsilon from
// time-one torsion over the vertical cone, then verify
// N*Torsion_N < -epsilon/2 for all sampled (x, v) and N <= n_max.
inline ConeBoundReport cone_torsion_bound(const IsotopyModel& model,
                                          const std::vector<AnnulusPoint>& samples,
                                          double delta, long n_max, int cone_rays = 9) {
    if (samples.empty()) throw std::domain_error("cone_torsion_bound: no samples");
    if (!(delta >= 0.0 && delta < 0.25))
        throw std::domain_error("cone_torsion_bound: delta must lie in [0, 1/4)");
    ConeBoundReport rep;
    rep.delta = delta;
    rep.n_max = n_max;

    std::vector<Vec2> dirs;
    const int rays = delta == 0.0 ? 1 : cone_rays;
    for (int i = 0; i < rays; ++i) {
        const double a = rays == 1 ? 0.0 : -delta + 2.0 * delta * i / (rays - 1);
        const Mat2 rot = Mat2::rotation_turns(a);
        dirs.push_back(rot.apply(vertical()));
        dirs.push_back(rot.apply({0.0, -1.0}));
    }

    double max_t1 = -1e300;
    for (const AnnulusPoint& x : samples)
        for (const Vec2& v : dirs)
            max_t1 = std::max(max_t1, torsion_finite(model, x, v, 1).turns_per_time);
    rep.epsilon = -max_t1;
    if (rep.epsilon <= 0.0)
        throw precondition_error("cone_torsion_bound: model is not negative-torsion "
                                 "on the sampled set");
    if (!(delta < rep.epsilon / 4.0))
        throw precondition_error("cone_torsion_bound: delta is not below epsilon/4");

    rep.pass = true;
    for (const AnnulusPoint& x : samples) {
        for (const Vec2& v : dirs) {
            const AngleDetermination det =
                angle_determination(model, x, v, static_cast<double>(n_max));
            const double lift0 = det.initial_lift();
            for (long nn = 1; nn <= n_max; ++nn) {
                const double total = det.lift_at(static_cast<double>(nn)) - lift0;
                rep.worst_total = std::max(rep.worst_total, total);
                if (!(total < -rep.epsilon / 2.0)) rep.pass = false;
            }
        }
    }
    return rep;
}

struct BirkhoffSample {
    double s = 0.0;
    double s_n = 0.0;
    double torsion_total = 0.0;  // N*Torsion_N along the curve tangent
    double variation = 0.0;      // Var(gamma(s), gamma(s_N))
    double gap = 0.0;
};

struct BirkhoffReport {
    double invariance_distance = 0.0;
    bool invariant = false;
    long n_horizon = 0;
    std::vector<BirkhoffSample> rows;
    double max_gap = 0.0;
    bool identity_ok = false;
    double complexity = 0.0;
    double max_total = 0.0;
    bool corollary_ok = false;  // |N Torsion_N| <= C(gamma) on the curve
    GraphCheck graph;
    bool nonwandering_assumed = false;
    bool verdict = false;
};

// Verification attached to the graph theorem: on an f-invariant curve the
// torsion along the tangent equals the angle variation between the point and
// its N-th image, and the curve must test as a graph. The non-wandering
// hypothesis is an input flag, never inferred.
inline BirkhoffReport birkhoff_check(const IsotopyModel& model, const EssentialCurve& curve,
                                     double invariance_tol, long n_horizon,
                                     int sample_count = 32, bool nonwandering_assumed = true,
                                     double identity_tol = 1e-5, int threads = 0) {
    BirkhoffReport rep;
    rep.n_horizon = n_horizon;
    rep.nonwandering_assumed = nonwandering_assumed;

    // Sampled Hausdorff-type distance between f(gamma) and gamma.
    const int m_inv = 256;
    double worst = 0.0;
    for (int i = 0; i < m_inv; ++i) {
        const PlanePoint image = model.unit_point(1.0, curve.lifted_position(
                                                           static_cast<double>(i) / m_inv));
        const double s_near = locate_parameter(curve, image);
        const AnnulusPoint p = curve.position(s_near);
        const AnnulusPoint q = project_point(image);
        const double dx = principal_turns(q.x - p.x);
        worst = std::max(worst, std::hypot(dx, q.y - p.y));
    }
    rep.invariance_distance = worst;
    rep.invariant = worst < invariance_tol;
    if (!rep.invariant) {
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "birkhoff: curve is not f-invariant (sampled distance %.3g > %.3g)",
                      worst, invariance_tol);
        throw precondition_error(buf);
    }

    rep.complexity = curve_complexity(curve);
    rep.rows.assign(static_cast<std::size_t>(sample_count) * static_cast<std::size_t>(n_horizon),
                    BirkhoffSample{});
    std::vector<std::string> errors(static_cast<std::size_t>(sample_count));
    parallel_for(static_cast<std::size_t>(sample_count), threads, [&](std::size_t i) {
        try {
            const double s = static_cast<double>(i) / sample_count;
            const AngleDetermination det =
                angle_determination(model, curve.lifted_position(s), curve.derivative(s),
                                    static_cast<double>(n_horizon));
            const double lift0 = det.initial_lift();
            PlanePoint orbit = curve.lifted_position(s);
            for (long nn = 1; nn <= n_horizon; ++nn) {
                orbit = model.unit_point(1.0, orbit);
                BirkhoffSample row;
                row.s = s;
                row.s_n = locate_parameter(curve, orbit);
                row.torsion_total = det.lift_at(static_cast<double>(nn)) - lift0;
                row.variation = angle_variation(curve, s, row.s_n);
                row.gap = std::abs(row.torsion_total - row.variation);
                rep.rows[i * static_cast<std::size_t>(n_horizon) +
                         static_cast<std::size_t>(nn - 1)] = row;
            }
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (const std::string& e : errors)
        if (!e.empty()) throw numeric_error("birkhoff: " + e);

    for (const BirkhoffSample& row : rep.rows) {
        rep.max_gap = std::max(rep.max_gap, row.gap);
        rep.max_total = std::max(rep.max_total, std::abs(row.torsion_total));
    }
    rep.identity_ok = rep.max_gap < identity_tol;
    rep.corollary_ok = rep.max_total <= rep.complexity + 1e-6;
    rep.graph = graph_check(curve);
    rep.verdict = rep.invariant && rep.identity_ok && rep.graph.is_graph;
    return rep;
}

struct SweepRow {
    double r = 0.0;
    double witness_x = 0.0;
    double residual = 0.0;  // |Torsion_N| at the witness
    double bound = 0.0;     // K/(2N)
    bool pass = false;
    std::string error;
};

struct SweepTable {
    std::vector<SweepRow> rows;
    long n_horizon = 0;
    bool all_pass = false;
    TorsionCertificate certificate;
    bool assumed = false;
};

// Per-circle zero-torsion witnesses across a band of heights.
inline SweepTable zero_torsion_sweep(const IsotopyModel& model, double r_lo, double r_hi,
                                     int steps, long n_horizon,
                                     const FindZeroOptions& opts = {}) {
    if (steps < 1) throw std::domain_error("sweep: steps must be positive");
    SweepTable table;
    table.n_horizon = n_horizon;
    table.rows.assign(static_cast<std::size_t>(steps), SweepRow{});

    if (!opts.assume_negative_torsion) {
        // One certification across the whole band the sweep will touch.
        const double pad = 0.05 * std::abs(r_hi - r_lo) + 0.5;
        double lo = std::min(r_lo, r_hi) - pad, hi = std::max(r_lo, r_hi) + pad;
        for (int i = 0; i < steps; ++i) {
            const double r = steps == 1 ? r_lo : r_lo + (r_hi - r_lo) * i / (steps - 1);
            const FourierCurve circle = FourierCurve::circle(r);
            const auto band = iterate_height_band(model, circle, n_horizon, 32);
            lo = std::min(lo, band.first);
            hi = std::max(hi, band.second);
        }
        table.certificate =
            certify_negative_torsion(model, GridSpec{opts.certify_nx, opts.certify_ny, lo, hi},
                                     0.0, opts.threads);
        if (!table.certificate.pass)
            throw precondition_error("sweep: model not certified negative-torsion on the band");
    } else {
        table.assumed = true;
    }

    parallel_for(static_cast<std::size_t>(steps), opts.threads, [&](std::size_t i) {
        SweepRow& row = table.rows[i];
        row.r = steps == 1 ? r_lo
                           : r_lo + (r_hi - r_lo) * static_cast<double>(i) / (steps - 1);
        try {
            FindZeroOptions inner = opts;
            inner.threads = 1;
            inner.assume_negative_torsion = true;  // band already certified
            const FourierCurve circle = FourierCurve::circle(row.r);
            const ZeroTorsionReport rep =
                find_zero_torsion_on_curve(model, circle, n_horizon, inner);
            row.witness_x = frac(rep.s_limit);
            row.residual = std::abs(rep.residual_torsion.back());
            row.bound = static_cast<double>(rep.k_theorem) / (2.0 * n_horizon);
            row.pass = rep.windows_ok && rep.building_bound_ok;
        } catch (const std::exception& e) {
            row.error = e.what();
            row.pass = false;
        }
    });
    table.all_pass = std::all_of(table.rows.begin(), table.rows.end(),
                                 [](const SweepRow& r) { return r.pass; });
    return table;
}

}  // namespace torsionlab

#endif
