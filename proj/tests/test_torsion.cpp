#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "torsionlab/curves.hpp"
#include "torsionlab/torsion.hpp"

using namespace torsionlab;

TEST_CASE("rigid rotation determination advances by alpha per unit time") {
    const RigidRotationModel rot(0.3);
    const AngleDetermination det = angle_determination(rot, PlanePoint{1.0, 0.5}, vertical(), 2.0);
    CHECK(det.final_lift() - det.initial_lift() == Catch::Approx(0.6).margin(1e-12));
    for (long n = 1; n <= 6; ++n) {
        const TorsionValue tv = torsion_finite(rot, PlanePoint{0.2, -1.0}, {0.3, 0.7}, n);
        CHECK(tv.turns_per_time == Catch::Approx(0.3).margin(1e-12));
    }
}

TEST_CASE("identity isotopy gives a constant determination and zero torsion") {
    const IdentityModel id;
    const AngleDetermination det =
        angle_determination(id, AnnulusPoint{0.1, 0.7}, {0.4, -0.2}, 3.0);
    for (const AngleSample& s : det.samples)
        CHECK(s.lift == Catch::Approx(det.initial_lift()).margin(1e-15));
    CHECK(torsion_finite(id, AnnulusPoint{0.9, -2.0}, vertical(), 7).turns_per_time == 0.0);
}

TEST_CASE("elliptic point determination matches the linearized flow") {
    const PendulumModel pend(1.0);
    const AngleDetermination det =
        angle_determination(pend, AnnulusPoint{0.0, 0.0}, vertical(), 1.0);
    CHECK(det.final_lift() - det.initial_lift() == Catch::Approx(-1.0).margin(1e-6));
    for (const double t : {0.25, 0.5, 0.75, 1.0}) {
        const double expected = oracles::elliptic_vertical_lift(1.0, t);
        CHECK(det.lift_at(t) == Catch::Approx(expected).margin(1e-6));
    }
}

TEST_CASE("plain shear torsion follows the two-stage trace") {
    const TwistMapModel shear(0.0);
    const TorsionValue t1 = torsion_finite(shear, AnnulusPoint{0.0, 0.0}, vertical(), 1);
    CHECK(t1.turns_per_time == Catch::Approx(-0.125).margin(1e-12));
    for (long n = 1; n <= 12; ++n) {
        const TorsionValue tv = torsion_finite(shear, AnnulusPoint{0.4, 1.3}, vertical(), n);
        CHECK(tv.total_turns == Catch::Approx(oracles::shear_total_turns(n)).margin(1e-12));
    }
}

TEST_CASE("time-one vertical torsion of the twist family is the shear angle everywhere") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> xs(0.0, 1.0);
    std::uniform_real_distribution<double> ys(-2.0, 2.0);
    for (const double k : {0.1, 0.5, 1.5}) {
        for (const IsotopyOrder ord :
             {IsotopyOrder::vertical_first, IsotopyOrder::horizontal_first}) {
            const TwistMapModel twist(k, ord);
            for (int trial = 0; trial < 5; ++trial) {
                const AnnulusPoint z{xs(rng), ys(rng)};
                CHECK(torsion_finite(twist, z, vertical(), 1).turns_per_time ==
                      Catch::Approx(-0.125).margin(1e-12));
            }
        }
    }
}

TEST_CASE("determination samples stay congruent to the measured angle") {
    const TwistMapModel twist(0.6);
    const AnnulusPoint z{0.3, 0.8};
    const Vec2 xi{0.2, 1.0};
    const AngleDetermination det = angle_determination(twist, z, xi, 5.0);
    CHECK(det.max_step_rotation < 0.25);
    for (std::size_t i = 1; i < det.samples.size(); ++i)
        CHECK(std::abs(det.samples[i].lift - det.samples[i - 1].lift) < 0.25);
    for (std::size_t i = 0; i < det.samples.size(); i += 7) {
        const AngleSample& s = det.samples[i];
        const Vec2 v = twist.flow(s.t, lift_point(z, 0)).tangent.apply(xi);
        const double residue = s.lift - angle_from_vertical(v);
        CHECK(std::abs(residue - std::round(residue)) < 1e-9);
    }
}

TEST_CASE("torsion is exactly invariant under integer branch shifts") {
    const TwistMapModel twist(0.4);
    const AnnulusPoint z{0.25, -0.6};
    UnwrapOptions shifted;
    shifted.branch_shift = 3;
    const TorsionValue base = torsion_finite(twist, z, vertical(), 4);
    const TorsionValue moved = torsion_finite(twist, z, vertical(), 4, shifted);
    CHECK(base.turns_per_time == moved.turns_per_time);
}

TEST_CASE("isotopy variants agree on torsion at integer times") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> xs(0.0, 1.0);
    std::uniform_real_distribution<double> ys(-1.5, 1.5);
    std::uniform_int_distribution<long> ns(1, 12);
    const TwistMapModel vert(0.35, IsotopyOrder::vertical_first);
    const TwistMapModel horiz(0.35, IsotopyOrder::horizontal_first);
    for (int trial = 0; trial < 25; ++trial) {
        const AnnulusPoint z{xs(rng), ys(rng)};
        const long n = ns(rng);
        const double a = torsion_finite(vert, z, vertical(), n).turns_per_time;
        const double b = torsion_finite(horiz, z, vertical(), n).turns_per_time;
        CHECK(a == Catch::Approx(b).margin(1e-9));
    }
}

TEST_CASE("finite-time torsion depends on the start vector by less than 1/(2n)") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> xs(0.0, 1.0);
    std::uniform_real_distribution<double> ys(-2.0, 2.0);
    std::uniform_real_distribution<double> angle(-0.5, 0.5);
    std::uniform_int_distribution<long> ns(1, 20);
    const TwistMapModel twist(0.45);
    const PendulumModel pend;
    const IsotopyModel* models[] = {&twist, &pend};
    for (const IsotopyModel* model : models) {
        for (int trial = 0; trial < 40; ++trial) {
            const AnnulusPoint z{xs(rng), ys(rng)};
            const Vec2 xi = Mat2::rotation_turns(angle(rng)).apply(vertical());
            const Vec2 delta = Mat2::rotation_turns(angle(rng)).apply(vertical());
            const long n = ns(rng);
            const double a = torsion_finite(*model, z, xi, n).turns_per_time;
            const double b = torsion_finite(*model, z, delta, n).turns_per_time;
            CHECK(std::abs(a - b) < 0.5 / static_cast<double>(n));
        }
    }
}

TEST_CASE("determinations that start ordered stay ordered") {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> xs(0.0, 1.0);
    std::uniform_real_distribution<double> ys(-1.2, 1.2);
    std::uniform_real_distribution<double> angle(-0.5, 0.5);
    const TwistMapModel twist(0.8);
    const PendulumModel pend(1.0);
    const IsotopyModel* models[] = {&twist, &pend};
    for (const IsotopyModel* model : models) {
        for (int trial = 0; trial < 10; ++trial) {
            const AnnulusPoint z{xs(rng), ys(rng)};
            const Vec2 xi1 = Mat2::rotation_turns(angle(rng)).apply(vertical());
            const Vec2 xi2 = Mat2::rotation_turns(angle(rng)).apply(vertical());
            UnwrapOptions below;
            below.branch_shift = -1;  // forces v2(0) < v1(0)
            const AngleDetermination d1 = angle_determination(*model, z, xi1, 3.0);
            const AngleDetermination d2 = angle_determination(*model, z, xi2, 3.0, below);
            REQUIRE(d1.initial_lift() > d2.initial_lift());
            for (int j = 0; j <= 24; ++j) {
                const double t = static_cast<double>(j) / 8.0;
                CHECK(d1.lift_at(t) > d2.lift_at(t));
            }
        }
    }
}

TEST_CASE("torsion below -k/2 persists for all later horizons") {
    const PendulumModel pend(1.0);  // unit preset: vertical torsion near -1 per step
    const AnnulusPoint z{0.02, 0.01};
    const AngleDetermination det = angle_determination(pend, z, vertical(), 30.0);
    const double first = det.lift_at(1.0) - det.initial_lift();
    REQUIRE(first < -0.5);  // m = 1 achieves the k = 1 hypothesis
    for (long n = 1; n <= 30; ++n)
        CHECK(det.lift_at(static_cast<double>(n)) - det.initial_lift() < -0.5);
}

TEST_CASE("legwise torsion bounds accumulate") {
    const PendulumModel pend(1.0);
    const AnnulusPoint a{0.03, -0.02};
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> angle(-0.5, 0.5);

    // Each unit leg turns the vertical vector by nearly a full turn, so
    // every leg satisfies the K_i = 1 hypothesis.
    const long legs = 6;
    PlanePoint orbit = lift_point(a, 0);
    for (long i = 0; i < legs; ++i) {
        const double leg = torsion_finite(pend, project_point(orbit), vertical(), 1).total_turns;
        REQUIRE(leg < -0.5);
        orbit = pend.unit_point(1.0, orbit);
    }
    const double total_chi = torsion_finite(pend, a, vertical(), legs).total_turns;
    CHECK(total_chi < -0.5 * legs);
    for (int trial = 0; trial < 8; ++trial) {
        const Vec2 xi = Mat2::rotation_turns(angle(rng)).apply(vertical());
        const double total = torsion_finite(pend, a, xi, legs).total_turns;
        CHECK(total < -0.5 * legs + 0.5);
    }
}

TEST_CASE("torsion at an interior pendulum point approaches minus one over the period") {
    const PendulumModel pend;
    const AnnulusPoint z{0.0, 0.15};
    const double period = orbit_period(pend, z);
    const long n = 10 * static_cast<long>(std::ceil(period));
    const TorsionValue tv = torsion_finite(pend, z, vertical(), n);
    CHECK(std::abs(tv.turns_per_time + 1.0 / period) < 5e-3);
}

TEST_CASE("asymptotic torsion estimates") {
    const RigidRotationModel rot(0.17);
    const AsymptoticTorsion a = torsion_asymptotic(rot, AnnulusPoint{0.5, 0.5}, vertical(), 40);
    CHECK(a.converged);
    CHECK(a.estimate == Catch::Approx(0.17).margin(1e-12));
    for (std::size_t i = 0; i < a.tail.size(); ++i)
        CHECK(a.tail[i] == Catch::Approx(0.17).margin(1e-12));

    const PendulumModel unit(1.0);
    const AsymptoticTorsion b = torsion_asymptotic(unit, AnnulusPoint{0.0, 0.0}, vertical(), 50);
    CHECK(b.converged);
    CHECK(b.estimate == Catch::Approx(-1.0).margin(1e-3));

    const PendulumModel pend;
    const AnnulusPoint exterior{0.3, 1.0};
    REQUIRE(pend.energy(exterior) > pend.separatrix_energy());
    const AsymptoticTorsion c = torsion_asymptotic(pend, exterior, vertical(), 400);
    CHECK(std::abs(c.estimate) < 5e-3);
    double sup_scaled = 0.0;
    for (std::size_t i = 9; i < c.tail.size(); ++i)
        sup_scaled = std::max(sup_scaled, std::abs(c.tail[i]) * static_cast<double>(i + 1));
    CHECK(sup_scaled < 2.0);  // the 1/n decay of a zero-torsion orbit
}

TEST_CASE("torsion asymptotic rejects too-short horizons") {
    const IdentityModel id;
    CHECK_THROWS_AS(torsion_asymptotic(id, AnnulusPoint{0, 0}, vertical(), 10, 10),
                    std::domain_error);
}

TEST_CASE("linking of deck-translated points vanishes") {
    const TwistMapModel twist(0.3);
    const PendulumModel pend;
    const IsotopyModel* models[] = {&twist, &pend};
    for (const IsotopyModel* model : models) {
        for (const double r : {-1.0, 0.0, 0.8}) {
            for (const long n : {1L, 5L}) {
                const double l = linking_finite(*model, {0.0, r}, {1.0, r}, n);
                CHECK(std::abs(l) < 1e-9);
            }
        }
    }
}

TEST_CASE("linking under a rigid rotation is the rotation rate") {
    const PlanePoint x{0.0, 0.0}, y{1.0, 1.0};
    const RigidRotationModel rot(0.21, PlanePoint{0.5, 0.5});
    for (const long n : {1L, 3L, 9L})
        CHECK(linking_finite(rot, x, y, n) == Catch::Approx(0.21).margin(1e-12));
    const IdentityModel id;
    CHECK(linking_finite(id, x, y, 4) == 0.0);
}

TEST_CASE("linking detects chord collapse") {
    const IdentityModel id;
    CHECK_THROWS_AS(linking_finite(id, {0.0, 0.0}, {1e-13, 0.0}, 1), numeric_error);
    CHECK_THROWS_AS(linking_finite(id, {0.2, 0.2}, {0.2, 0.2}, 1), std::domain_error);
}

TEST_CASE("unwrap reports rotation that outruns the refinement floor") {
    const RigidRotationModel wild(1e9);
    CHECK_THROWS_AS(angle_determination(wild, PlanePoint{0.0, 0.0}, vertical(), 1.0),
                    numeric_error);
}

TEST_CASE("tilt of a vertical line vanishes") {
    const IdentityModel id;
    SpaceCurve vertical_line;
    vertical_line.point = [](double t) { return PlanePoint{0.37, t}; };
    vertical_line.with_tangent = [](double t) {
        return std::make_pair(PlanePoint{0.37, t}, Vec2{0.0, 1.0});
    };
    const TiltResult r = tilt_determination(vertical_line, 0.8);
    CHECK(r.value == Catch::Approx(0.0).margin(1e-12));
    CHECK(torsion_via_tilt(id, {0.37, 0.8}) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("tilt of a diagonal line is minus an eighth") {
    SpaceCurve diag;
    diag.point = [](double t) { return PlanePoint{t, t}; };
    diag.with_tangent = [](double t) {
        return std::make_pair(PlanePoint{t, t}, Vec2{1.0, 1.0});
    };
    CHECK(tilt_determination(diag, 2.0).value == Catch::Approx(-0.125).margin(1e-12));
}

TEST_CASE("tilt route reproduces time-one torsion") {
    const TwistMapModel shear(0.0);
    CHECK(torsion_via_tilt(shear, {0.6, 0.4}) == Catch::Approx(-0.125).margin(1e-9));

    const PendulumModel pend;
    const AnnulusPoint z{0.25, 0.0};
    const double via_tilt = torsion_via_tilt(pend, z);
    const double via_isotopy = torsion_finite(pend, z, vertical(), 1).turns_per_time;
    CHECK(via_tilt == Catch::Approx(via_isotopy).margin(1e-6));

    for (const double x : {0.05, 0.35, 0.7}) {
        for (const double y : {-0.9, 0.1, 1.1}) {
            const AnnulusPoint p{x, y};
            const double tilt = torsion_via_tilt(pend, p);
            const double isotopy = torsion_finite(pend, p, vertical(), 1).turns_per_time;
            CHECK(tilt == Catch::Approx(isotopy).margin(1e-6));
        }
    }
}
