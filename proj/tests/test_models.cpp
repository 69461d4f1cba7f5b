#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "torsionlab/models.hpp"

using namespace torsionlab;

namespace {

double mat_distance(const Mat2& m, const Mat2& n) {
    return std::max({std::abs(m.a - n.a), std::abs(m.b - n.b), std::abs(m.c - n.c),
                     std::abs(m.d - n.d)});
}

}  // namespace

TEST_CASE("pendulum hyperbolic fixed point stays put with unit determinant") {
    const PendulumModel pend;
    for (const double t : {0.3, 1.0, 4.7}) {
        const auto [p, m] = flow_with_variational(pend, {0.5, 0.0}, t);
        CHECK(p.x == Catch::Approx(0.5).margin(1e-12));
        CHECK(p.y == Catch::Approx(0.0).margin(1e-12));
        CHECK(m.det() == Catch::Approx(1.0).margin(1e-6));
    }
}

TEST_CASE("pendulum variational trace at the elliptic point matches the linearization") {
    for (const double c : {PendulumModel::paper_stiffness, 1.0}) {
        const PendulumModel pend(c);
        for (const double t : {0.25, 1.0, 3.5, 10.0}) {
            const auto [p, m] = flow_with_variational(pend, {0.0, 0.0}, t);
            CHECK(p.x == Catch::Approx(0.0).margin(1e-12));
            CHECK(p.y == Catch::Approx(0.0).margin(1e-12));
            const double expected = 2.0 * std::cos(two_pi * std::sqrt(c) * t);
            CHECK(m.trace() == Catch::Approx(expected).margin(1e-6));
            CHECK(m.det() == Catch::Approx(1.0).margin(1e-6));
        }
    }
}

TEST_CASE("pendulum conserves energy along orbits") {
    const PendulumModel pend;
    const AnnulusPoint pts[] = {{0.1, 0.05}, {0.3, 0.0}, {0.0, 1.2}, {0.7, -0.8}};
    for (const AnnulusPoint p : pts) {
        const double h0 = pend.energy(p);
        const auto [image, m] = flow_with_variational(pend, p, 10.0);
        CHECK(std::abs(pend.energy(image) - h0) < 1e-8);
        CHECK(m.det() == Catch::Approx(1.0).margin(1e-6));
    }
}

TEST_CASE("pendulum integration agrees under step halving") {
    const PendulumModel coarse(PendulumModel::paper_stiffness, 1e-3);
    const PendulumModel fine(PendulumModel::paper_stiffness, 5e-4);
    const PlanePoint p{0.21, 0.6};
    const FlowSample a = coarse.flow(1.0, p);
    const FlowSample b = fine.flow(1.0, p);
    CHECK(std::abs(a.point.x - b.point.x) < 1e-9);
    CHECK(std::abs(a.point.y - b.point.y) < 1e-9);
    CHECK(mat_distance(a.tangent, b.tangent) < 1e-9);
}

TEST_CASE("isotopy extension rule composes through the integer part") {
    const PendulumModel pend;
    const TwistMapModel twist(0.3);
    const IsotopyModel* models[] = {&pend, &twist};
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> xs(0.0, 1.0);
    std::uniform_real_distribution<double> ys(-1.5, 1.5);
    std::uniform_real_distribution<double> ts(0.0, 4.0);
    for (const IsotopyModel* model : models) {
        for (int trial = 0; trial < 10; ++trial) {
            const PlanePoint p{xs(rng), ys(rng)};
            const double t = ts(rng);
            const double s = t - std::floor(t);
            PlanePoint iterated = p;
            for (long i = 0; i < static_cast<long>(std::floor(t)); ++i)
                iterated = model->unit_point(1.0, iterated);
            const PlanePoint tail =
                s > 0.0 ? model->unit_point(s, iterated) : iterated;
            const PlanePoint direct = model->lifted_evaluate(t, p);
            CHECK(std::abs(direct.x - tail.x) < 1e-9);
            CHECK(std::abs(direct.y - tail.y) < 1e-9);
        }
    }
}

TEST_CASE("jacobian at integer times is the ordered product of unit jacobians") {
    const PendulumModel pend;
    const TwistMapModel twist(0.4);
    const IsotopyModel* models[] = {&pend, &twist};
    for (const IsotopyModel* model : models) {
        const PlanePoint p{0.37, 0.42};
        const long n = 5;
        Mat2 product = Mat2::identity();
        PlanePoint orbit = p;
        for (long i = 0; i < n; ++i) {
            product = model->unit_jacobian(1.0, orbit) * product;
            orbit = model->unit_point(1.0, orbit);
        }
        const Mat2 direct = model->jacobian(static_cast<double>(n), p);
        const double scale = std::max(1.0, mat_distance(product, Mat2{0, 0, 0, 0}));
        CHECK(mat_distance(direct, product) / scale < 1e-6);
    }
}

TEST_CASE("lifts commute with the deck translation") {
    const PendulumModel pend;
    const TwistMapModel twist(0.7);
    const IsotopyModel* models[] = {&pend, &twist};
    for (const IsotopyModel* model : models) {
        for (const double t : {0.4, 1.0, 2.6}) {
            const PlanePoint p{0.81, -0.33};
            const PlanePoint a = model->lifted_evaluate(t, {p.x + 1.0, p.y});
            const PlanePoint b = model->lifted_evaluate(t, p);
            CHECK(std::abs(a.x - (b.x + 1.0)) < 1e-12);
            CHECK(std::abs(a.y - b.y) < 1e-12);
        }
    }
}

TEST_CASE("orbit period approaches the linearized period at the elliptic point") {
    for (const double c : {PendulumModel::paper_stiffness, 1.0}) {
        const PendulumModel pend(c);
        const double t = orbit_period(pend, {0.0, 1e-4 * std::sqrt(c)});
        CHECK(t == Catch::Approx(1.0 / std::sqrt(c)).epsilon(1e-5));
    }
}

TEST_CASE("orbit period matches the elliptic-integral value across energies") {
    const PendulumModel pend;
    const double c = pend.stiffness();
    for (const double ratio : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
        const double h = ratio * c;
        const double y = std::sqrt(2.0 * (h + c));  // point (0, y) has energy h
        const double measured = orbit_period(pend, {0.0, y});
        const double expected = oracles::pendulum_period(c, h);
        CHECK(measured == Catch::Approx(expected).margin(1e-6));
    }
}

TEST_CASE("orbit period grows monotonically toward the separatrix") {
    const PendulumModel pend;
    const double c = pend.stiffness();
    double last = 0.0;
    for (int k = 1; k <= 5; ++k) {
        const double h = c * (1.0 - std::pow(10.0, -k));
        const double y = std::sqrt(2.0 * (h + c));
        const double t = orbit_period(pend, {0.0, y});
        CHECK(t > last);
        CHECK(t == Catch::Approx(oracles::pendulum_period(c, h)).margin(1e-5));
        last = t;
    }
}

TEST_CASE("orbit period is symmetric under the phase-space involution") {
    const PendulumModel pend;
    const AnnulusPoint p{0.1, 0.12};
    const AnnulusPoint q{frac(-0.1), -0.12};
    CHECK(orbit_period(pend, p) == Catch::Approx(orbit_period(pend, q)).margin(1e-6));
}

TEST_CASE("orbit period rejects exterior points and the elliptic point") {
    const PendulumModel pend;
    CHECK_THROWS_AS(orbit_period(pend, {0.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(orbit_period(pend, {0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(orbit_period(pend, {0.5, 0.0}), std::domain_error);
}

TEST_CASE("twist isotopy variants end at the same map") {
    const TwistMapModel vert(0.5, IsotopyOrder::vertical_first);
    const TwistMapModel horiz(0.5, IsotopyOrder::horizontal_first);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> xs(0.0, 1.0);
    std::uniform_real_distribution<double> ys(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const PlanePoint p{xs(rng), ys(rng)};
        const PlanePoint a = vert.unit_point(1.0, p);
        const PlanePoint b = horiz.unit_point(1.0, p);
        CHECK(a.x == Catch::Approx(b.x).margin(1e-15));
        CHECK(a.y == Catch::Approx(b.y).margin(1e-15));
        // and both equal the stated lifted map
        const double kicked = p.y - (0.5 / two_pi) * std::sin(two_pi * p.x);
        CHECK(a.x == Catch::Approx(p.x + kicked).margin(1e-12));
        CHECK(a.y == Catch::Approx(kicked).margin(1e-12));
    }
}

TEST_CASE("twist with zero kick reduces to the plain shear at time one") {
    const TwistMapModel vert(0.0, IsotopyOrder::vertical_first);
    const TwistMapModel horiz(0.0, IsotopyOrder::horizontal_first);
    const PlanePoint p{0.3, 1.7};
    for (const TwistMapModel* m : {&vert, &horiz}) {
        const PlanePoint image = m->unit_point(1.0, p);
        CHECK(image.x == Catch::Approx(p.x + p.y).margin(1e-15));
        CHECK(image.y == Catch::Approx(p.y).margin(1e-15));
    }
}

TEST_CASE("twist jacobian is area preserving and positively twisted") {
    const TwistMapModel twist(0.8);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> xs(0.0, 1.0);
    std::uniform_real_distribution<double> ys(-3.0, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        const PlanePoint p{xs(rng), ys(rng)};
        const Mat2 j = twist.unit_jacobian(1.0, p);
        CHECK(j.det() == Catch::Approx(1.0).margin(1e-12));
        CHECK(j.b > 0.0);  // dX'/dY
    }
}

TEST_CASE("rigid rotation jacobian is the rotation matrix") {
    const RigidRotationModel rot(0.3);
    const Mat2 j = rot.jacobian(2.0, PlanePoint{1.0, 1.0});
    const Mat2 expected = Mat2::rotation_turns(0.6);
    CHECK(mat_distance(j, expected) < 1e-12);
    CHECK(rot.plane_only());
}
