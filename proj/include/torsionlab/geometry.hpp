#ifndef TORSIONLAB_GEOMETRY_HPP
#define TORSIONLAB_GEOMETRY_HPP

// Points on the annulus T x R (T = R/Z), their plane lifts, and oriented
// angles measured in turns (one full counterclockwise revolution = 1).

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace torsionlab {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

struct AnnulusPoint {
    double x = 0.0;  // angular coordinate in [0,1)
    double y = 0.0;  // height
};

struct PlanePoint {
    double x = 0.0;
    double y = 0.0;
};

struct Vec2 {
    double dx = 0.0;
    double dy = 0.0;

    double norm() const { return std::hypot(dx, dy); }
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.dx + b.dx, a.dy + b.dy}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.dx - b.dx, a.dy - b.dy}; }
inline Vec2 operator*(double c, Vec2 v) { return {c * v.dx, c * v.dy}; }
inline PlanePoint operator+(PlanePoint p, Vec2 v) { return {p.x + v.dx, p.y + v.dy}; }
inline Vec2 operator-(PlanePoint p, PlanePoint q) { return {p.x - q.x, p.y - q.y}; }

// The unit vertical vector (0,1).
inline Vec2 vertical() { return {0.0, 1.0}; }
// The unit horizontal vector (1,0).
inline Vec2 horizontal() { return {1.0, 0.0}; }

struct Mat2 {
    // Row-major: [[a, b], [c, d]].
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    static Mat2 identity() { return {}; }

    static Mat2 rotation_turns(double turns) {
        const double co = std::cos(two_pi * turns), si = std::sin(two_pi * turns);
        return {co, -si, si, co};
    }

    Vec2 apply(Vec2 v) const { return {a * v.dx + b * v.dy, c * v.dx + d * v.dy}; }
    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
};

inline Mat2 operator*(const Mat2& m, const Mat2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
            m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

// Fractional part in [0,1). Exact for the integer-translation identities we
// rely on: frac(x + 1) == frac(x) in floating point for |x| < 2^52.
inline double frac(double x) { return x - std::floor(x); }

// Wraps an angle (in turns) to its principal representative in (-1/2, 1/2].
// The antipode maps to +1/2 so the choice is single-valued.
inline double principal_turns(double turns) {
    return turns - std::ceil(turns - 0.5);
}

// Oriented angle from u to v in turns, counterclockwise positive,
// principal value in (-1/2, 1/2].
inline double oriented_angle_turns(Vec2 u, Vec2 v) {
    if ((u.dx == 0.0 && u.dy == 0.0) || (v.dx == 0.0 && v.dy == 0.0))
        throw std::domain_error("oriented_angle: zero vector");
    const double cross = u.dx * v.dy - u.dy * v.dx;
    const double dot = u.dx * v.dx + u.dy * v.dy;
    return principal_turns(std::atan2(cross, dot) / two_pi);
}

// Angle from the vertical vector to v; the measurement every continuous
// determination in this library unwraps.
inline double angle_from_vertical(Vec2 v) {
    return oriented_angle_turns(vertical(), v);
}

// The unique real L congruent to new_principal (mod 1) with
// |L - previous_lift| <= 1/2; ties at the antipode resolve upward.
inline double nearest_lift(double previous_lift, double new_principal) {
    return new_principal + std::floor(previous_lift - new_principal + 0.5);
}

inline PlanePoint lift_point(AnnulusPoint p, long sheet) {
    return {p.x + static_cast<double>(sheet), p.y};
}

inline AnnulusPoint project_point(PlanePoint p) {
    return {frac(p.x), p.y};
}

}  // namespace torsionlab

#endif
