#ifndef TORSIONLAB_MODELS_HPP
#define TORSIONLAB_MODELS_HPP

// Concrete isotopies (f_t) on the annulus, evaluated through their plane
// lifts. Each model supplies the unit-time segment t in [0,1]; times beyond
// that are composed from whole applications of f = f_1 followed by the
// fractional tail, with tangent maps chained at the integer boundaries.

#include <array>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "torsionlab/errors.hpp"
#include "torsionlab/geometry.hpp"

namespace torsionlab {

struct FlowSample {
    PlanePoint point;
    Mat2 tangent;
};

class IsotopyModel {
public:
    virtual ~IsotopyModel() = default;

    // The isotopy restricted to s in [0,1], acting on plane lifts.
    virtual PlanePoint unit_point(double s, PlanePoint p) const = 0;
    virtual Mat2 unit_jacobian(double s, PlanePoint p) const = 0;

    // Point and tangent map together; override when computing both at once
    // is cheaper (the pendulum integrates state and variational jointly).
    virtual FlowSample unit_flow(double s, PlanePoint p) const {
        return {unit_point(s, p), unit_jacobian(s, p)};
    }

    virtual std::string name() const = 0;
    virtual std::string descriptor() const { return name(); }

    // True for oracle fixtures whose lift does not commute with the deck
    // translation (they are plane diffeomorphisms, not annulus maps).
    virtual bool plane_only() const { return false; }

    // f_t for any t >= 0: f_t = f_{frac(t)} o f^floor(t).
    FlowSample flow(double t, PlanePoint p) const {
        if (!(t >= 0.0)) throw std::domain_error("IsotopyModel: negative time");
        long n = static_cast<long>(std::floor(t));
        const double s = t - static_cast<double>(n);
        Mat2 acc = Mat2::identity();
        for (long i = 0; i < n; ++i) {
            const FlowSample step = unit_flow(1.0, p);
            p = step.point;
            acc = step.tangent * acc;
        }
        if (s > 0.0) {
            const FlowSample tail = unit_flow(s, p);
            p = tail.point;
            acc = tail.tangent * acc;
        }
        return {p, acc};
    }

    PlanePoint lifted_evaluate(double t, PlanePoint p) const {
        if (!(t >= 0.0)) throw std::domain_error("IsotopyModel: negative time");
        long n = static_cast<long>(std::floor(t));
        const double s = t - static_cast<double>(n);
        for (long i = 0; i < n; ++i) p = unit_point(1.0, p);
        if (s > 0.0) p = unit_point(s, p);
        return p;
    }

    AnnulusPoint evaluate(double t, AnnulusPoint p) const {
        return project_point(lifted_evaluate(t, lift_point(p, 0)));
    }

    Mat2 jacobian(double t, PlanePoint p) const { return flow(t, p).tangent; }
    Mat2 jacobian(double t, AnnulusPoint p) const { return flow(t, lift_point(p, 0)).tangent; }
};

class IdentityModel final : public IsotopyModel {
public:
    PlanePoint unit_point(double, PlanePoint p) const override { return p; }
    Mat2 unit_jacobian(double, PlanePoint) const override { return Mat2::identity(); }
    std::string name() const override { return "identity"; }
};

// f_t(x, y) = (x + alpha*t, y). Rigid horizontal translation.
class HorizontalTranslationModel final : public IsotopyModel {
public:
    explicit HorizontalTranslationModel(double alpha) : alpha_(alpha) {}

    PlanePoint unit_point(double s, PlanePoint p) const override {
        return {p.x + alpha_ * s, p.y};
    }
    Mat2 unit_jacobian(double, PlanePoint) const override { return Mat2::identity(); }
    std::string name() const override { return "translation"; }
    double rate() const { return alpha_; }

private:
    double alpha_;
};

// Rotation of the plane about a fixed center, alpha turns per unit time.
// Analytic oracle: every tangent vector and every chord turns at exactly
// alpha, so torsion and linking are alpha at every horizon.
class RigidRotationModel final : public IsotopyModel {
public:
    explicit RigidRotationModel(double alpha, PlanePoint center = {0.0, 0.0})
        : alpha_(alpha), center_(center) {}

    PlanePoint unit_point(double s, PlanePoint p) const override {
        const Vec2 r = p - center_;
        return center_ + Mat2::rotation_turns(alpha_ * s).apply(r);
    }
    Mat2 unit_jacobian(double s, PlanePoint) const override {
        return Mat2::rotation_turns(alpha_ * s);
    }
    std::string name() const override { return "rotation"; }
    bool plane_only() const override { return true; }
    double rate() const { return alpha_; }

private:
    double alpha_;
    PlanePoint center_;
};

enum class IsotopyOrder { vertical_first, horizontal_first };

// Lifted twist map F(X,Y) = (X + Y', Y') with Y' = Y - g(X), where the kick
// g is a trigonometric polynomial (the single-harmonic case g = k/2pi *
// sin(2piX) gives dX'/dY = 1 > 0, a positive twist).
//
// The isotopy joining the identity to F is the two-stage shear
// f_t = H_{a(t)} o V_{b(t)} with V_b(X,Y) = (X, Y - b*g(X)) and
// H_a(X,Y) = (X + a*Y, Y). The two stage orders ramp a and b on opposite
// halves of [0,1]; both reach a = b = 1 at t = 1, so they are distinct
// isotopies of the same map.
class TwistMapModel final : public IsotopyModel {
public:
    struct Kick {
        std::vector<double> sin_coeffs;  // coefficient of sin(2*pi*j*X), j = 1..
        std::vector<double> cos_coeffs;  // coefficient of cos(2*pi*j*X), j = 1..
    };

    explicit TwistMapModel(double k, IsotopyOrder order = IsotopyOrder::vertical_first)
        : order_(order), k_label_(k) {
        kick_.sin_coeffs = {k / two_pi};
    }

    TwistMapModel(Kick kick, IsotopyOrder order = IsotopyOrder::vertical_first)
        : kick_(std::move(kick)), order_(order) {}

    PlanePoint unit_point(double s, PlanePoint p) const override {
        const auto [a, b] = schedule(s);
        const double y1 = p.y - b * kick(p.x);
        return {p.x + a * y1, y1};
    }

    Mat2 unit_jacobian(double s, PlanePoint p) const override {
        const auto [a, b] = schedule(s);
        const double bg = b * kick_slope(p.x);
        return {1.0 - a * bg, a, -bg, 1.0};
    }

    std::string name() const override { return "twist"; }
    std::string descriptor() const override {
        return "twist(k=" + std::to_string(k_label_) + "," +
               (order_ == IsotopyOrder::vertical_first ? "vertical-first" : "horizontal-first") + ")";
    }

    IsotopyOrder order() const { return order_; }
    TwistMapModel with_order(IsotopyOrder order) const {
        TwistMapModel copy = *this;
        copy.order_ = order;
        return copy;
    }

    double kick(double x) const {
        const double u = frac(x);
        double g = 0.0;
        for (std::size_t j = 0; j < kick_.sin_coeffs.size(); ++j)
            g += kick_.sin_coeffs[j] * std::sin(two_pi * (j + 1) * u);
        for (std::size_t j = 0; j < kick_.cos_coeffs.size(); ++j)
            g += kick_.cos_coeffs[j] * std::cos(two_pi * (j + 1) * u);
        return g;
    }

    double kick_slope(double x) const {
        const double u = frac(x);
        double g = 0.0;
        for (std::size_t j = 0; j < kick_.sin_coeffs.size(); ++j)
            g += kick_.sin_coeffs[j] * two_pi * (j + 1) * std::cos(two_pi * (j + 1) * u);
        for (std::size_t j = 0; j < kick_.cos_coeffs.size(); ++j)
            g -= kick_.cos_coeffs[j] * two_pi * (j + 1) * std::sin(two_pi * (j + 1) * u);
        return g;
    }

private:
    // Shear amounts (a, b) at stage time s.
    std::pair<double, double> schedule(double s) const {
        const double ramp_first = std::min(1.0, 2.0 * s);
        const double ramp_second = std::max(0.0, 2.0 * s - 1.0);
        if (order_ == IsotopyOrder::vertical_first) return {ramp_second, ramp_first};
        return {ramp_first, ramp_second};
    }

    Kick kick_;
    IsotopyOrder order_ = IsotopyOrder::vertical_first;
    double k_label_ = 0.0;
};

inline TwistMapModel isotopy_variant(const TwistMapModel& model, IsotopyOrder order) {
    return model.with_order(order);
}

// Pendulum Hamiltonian H(x, y) = y^2/2 - c*cos(2*pi*x); the isotopy is the
// flow itself. State and variational matrix integrate jointly with a fixed
// step classical RK4. With the default step the energy drift stays below
// 1e-8 per unit time by a wide margin.
class PendulumModel final : public IsotopyModel {
public:
    // The paper's Hamiltonian has c = 1/(4pi^2); c = 1 makes the linearized
    // oscillation at the elliptic point have period one.
    static constexpr double paper_stiffness = 1.0 / (two_pi * two_pi);

    explicit PendulumModel(double stiffness = paper_stiffness, double step = 1e-3)
        : c_(stiffness), h_(step) {
        if (!(c_ > 0.0)) throw std::domain_error("PendulumModel: stiffness must be positive");
        if (!(h_ > 0.0)) throw std::domain_error("PendulumModel: step must be positive");
    }

    double stiffness() const { return c_; }
    double step() const { return h_; }

    double energy(AnnulusPoint p) const { return energy(PlanePoint{p.x, p.y}); }
    double energy(PlanePoint p) const {
        return 0.5 * p.y * p.y - c_ * std::cos(two_pi * frac(p.x));
    }

    // Energy on the separatrix through the hyperbolic point (1/2, 0).
    double separatrix_energy() const { return c_; }

    PlanePoint unit_point(double s, PlanePoint p) const override {
        std::array<double, 2> st{p.x, p.y};
        advance_state(st, s);
        return {st[0], st[1]};
    }

    Mat2 unit_jacobian(double s, PlanePoint p) const override {
        return unit_flow(s, p).tangent;
    }

    FlowSample unit_flow(double s, PlanePoint p) const override {
        std::array<double, 6> st{p.x, p.y, 1.0, 0.0, 0.0, 1.0};
        advance_joint(st, s);
        return {{st[0], st[1]}, {st[2], st[4], st[3], st[5]}};
    }

    std::string name() const override { return "pendulum"; }
    std::string descriptor() const override {
        return "pendulum(c=" + std::to_string(c_) + ",h=" + std::to_string(h_) + ")";
    }

    // Integrates the plane state forward by dt (splitting into internal
    // steps of at most h). Used by the period finder.
    std::array<double, 2> advance(std::array<double, 2> state, double dt) const {
        advance_state(state, dt);
        return state;
    }

private:
    void rhs(const std::array<double, 2>& s, std::array<double, 2>& d) const {
        d[0] = s[1];
        d[1] = -two_pi * c_ * std::sin(two_pi * frac(s[0]));
    }

    void rhs_joint(const std::array<double, 6>& s, std::array<double, 6>& d) const {
        const double cs = std::cos(two_pi * frac(s[0]));
        const double curv = two_pi * two_pi * c_ * cs;  // -dF_y/dx of the field
        d[0] = s[1];
        d[1] = -two_pi * c_ * std::sin(two_pi * frac(s[0]));
        d[2] = s[3];
        d[3] = -curv * s[2];
        d[4] = s[5];
        d[5] = -curv * s[4];
    }

    template <std::size_t N, typename Rhs>
    void rk4(std::array<double, N>& s, double dt, Rhs&& f) const {
        std::array<double, N> k1, k2, k3, k4, tmp;
        f(s, k1);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = s[i] + 0.5 * dt * k1[i];
        f(tmp, k2);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = s[i] + 0.5 * dt * k2[i];
        f(tmp, k3);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = s[i] + dt * k3[i];
        f(tmp, k4);
        for (std::size_t i = 0; i < N; ++i)
            s[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }

    void advance_state(std::array<double, 2>& st, double span) const {
        if (span <= 0.0) return;
        const long n = std::max<long>(1, static_cast<long>(std::ceil(span / h_)));
        const double dt = span / static_cast<double>(n);
        for (long i = 0; i < n; ++i)
            rk4(st, dt, [this](const auto& s, auto& d) { rhs(s, d); });
    }

    void advance_joint(std::array<double, 6>& st, double span) const {
        if (span <= 0.0) return;
        const long n = std::max<long>(1, static_cast<long>(std::ceil(span / h_)));
        const double dt = span / static_cast<double>(n);
        for (long i = 0; i < n; ++i)
            rk4(st, dt, [this](const auto& s, auto& d) { rhs_joint(s, d); });
    }

    double c_;
    double h_;
};

// phi_t(p) together with the variational matrix along the orbit.
inline std::pair<AnnulusPoint, Mat2> flow_with_variational(const PendulumModel& model,
                                                           AnnulusPoint p, double t) {
    const FlowSample fs = model.flow(t, lift_point(p, 0));
    return {project_point(fs.point), fs.tangent};
}

struct PeriodOptions {
    double max_time = 1e4;
    double time_tolerance = 1e-9;
    double interior_margin = 1e-12;  // required gap below the separatrix energy
};

// First-return time of an interior (librating) orbit. The phase angle about
// the elliptic point decreases strictly along interior orbits, so the period
// is the time for its continuous determination to drop by one full turn;
// the crossing is bracketed by the integration grid and polished by
// bisection in time.
inline double orbit_period(const PendulumModel& model, AnnulusPoint p,
                           const PeriodOptions& opts = {}) {
    const double h_sep = model.separatrix_energy();
    const double theta0 = principal_turns(p.x);
    std::array<double, 2> state{theta0, p.y};
    if (model.energy(p) >= h_sep - opts.interior_margin)
        throw std::domain_error("orbit_period: point is not strictly inside the separatrix");
    if (std::abs(theta0) < 1e-15 && std::abs(p.y) < 1e-15)
        throw std::domain_error("orbit_period: elliptic fixed point has no return time");

    // Keep the per-sample phase change well under half a turn: the angular
    // velocity near the elliptic point is sqrt(c) turns per unit time.
    const double step = std::min(model.step(), 0.1 / std::sqrt(model.stiffness()));
    auto phase = [](const std::array<double, 2>& s) {
        return std::atan2(s[1], s[0]) / two_pi;
    };

    double lift = phase(state);
    const double target = lift - 1.0;
    double t = 0.0;
    std::array<double, 2> prev = state;
    double prev_lift = lift;
    while (t < opts.max_time) {
        prev = state;
        prev_lift = lift;
        state = model.advance(state, step);
        t += step;
        lift = nearest_lift(lift, phase(state));
        if (lift <= target) {
            // Bisect inside [t - step, t].
            double lo = 0.0, hi = step;
            double lo_lift = prev_lift;
            std::array<double, 2> lo_state = prev;
            while (hi - lo > opts.time_tolerance) {
                const double mid = 0.5 * (lo + hi);
                const auto mid_state = model.advance(lo_state, mid - lo);
                const double mid_lift = nearest_lift(lo_lift, phase(mid_state));
                if (mid_lift <= target) {
                    hi = mid;
                } else {
                    lo = mid;
                    lo_state = mid_state;
                    lo_lift = mid_lift;
                }
            }
            return (t - step) + 0.5 * (lo + hi);
        }
    }
    throw numeric_error("orbit_period: no return before max_time");
}

}  // namespace torsionlab

#endif
