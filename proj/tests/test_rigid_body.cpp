#include <catch2/catch_amalgamated.hpp>

#include <flightrl/rigid_body.hpp>
#include <flightrl/rng.hpp>

#ifdef HAVE_EIGEN_ORACLE
#include <Eigen/Dense>
#include <Eigen/Geometry>
#endif

using namespace flightrl;

namespace {

Quat random_unit_quat(Rng& rng) {
    Quat q{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
    return q.normalized();
}

InertialProperties diagonal_inertial(double m, double ixx, double iyy, double izz) {
    return make_inertial(m, Mat3{{ixx, 0, 0, 0, iyy, 0, 0, 0, izz}});
}

}  // namespace

TEST_CASE("quat_to_euler identity and axis rotations") {
    EulerAngles e = quat_to_euler(Quat::identity());
    CHECK(e.roll == 0.0);
    CHECK(e.pitch == 0.0);
    CHECK(e.yaw == 0.0);

    // pure x-axis rotation of pi/4
    Quat qx{std::cos(M_PI / 8.0), std::sin(M_PI / 8.0), 0.0, 0.0};
    e = quat_to_euler(qx);
    CHECK_THAT(e.roll, Catch::Matchers::WithinAbs(M_PI / 4.0, 1e-12));
    CHECK_THAT(e.pitch, Catch::Matchers::WithinAbs(0.0, 1e-12));
    CHECK_THAT(e.yaw, Catch::Matchers::WithinAbs(0.0, 1e-12));
}

TEST_CASE("euler/quat roundtrip equals +-q away from gimbal lock") {
    Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        Quat q = random_unit_quat(rng);
        EulerAngles e = quat_to_euler(q);
        if (std::abs(e.pitch) > M_PI / 2.0 - 0.05) continue;
        Quat r = euler_to_quat(e.roll, e.pitch, e.yaw);
        double s = (r.w * q.w + r.x * q.x + r.y * q.y + r.z * q.z) >= 0.0 ? 1.0 : -1.0;
        CHECK_THAT(r.w, Catch::Matchers::WithinAbs(s * q.w, 1e-9));
        CHECK_THAT(r.x, Catch::Matchers::WithinAbs(s * q.x, 1e-9));
        CHECK_THAT(r.y, Catch::Matchers::WithinAbs(s * q.y, 1e-9));
        CHECK_THAT(r.z, Catch::Matchers::WithinAbs(s * q.z, 1e-9));
    }
}

TEST_CASE("euler ranges and gimbal-lock convention") {
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        EulerAngles e = quat_to_euler(random_unit_quat(rng));
        CHECK(e.roll > -M_PI);
        CHECK(e.roll <= M_PI + 1e-15);
        CHECK(std::abs(e.pitch) <= M_PI / 2.0 + 1e-15);
        CHECK(e.yaw > -M_PI);
        CHECK(e.yaw <= M_PI + 1e-15);
    }
    // straight-up attitude: roll reported as zero
    Quat up = euler_to_quat(0.0, M_PI / 2.0, 0.3);
    EulerAngles e = quat_to_euler(up);
    CHECK(e.roll == 0.0);
    CHECK_THAT(e.pitch, Catch::Matchers::WithinAbs(M_PI / 2.0, 1e-9));
    CHECK_THAT(e.yaw, Catch::Matchers::WithinAbs(0.3, 1e-9));
}

TEST_CASE("rotation_matrix basics") {
    Mat3 r = rotation_matrix(Quat::identity());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK_THAT(r(i, j), Catch::Matchers::WithinAbs(i == j ? 1.0 : 0.0, 1e-15));

    // 90 degrees about z maps body x to NED y
    Quat qz{std::cos(M_PI / 4.0), 0.0, 0.0, std::sin(M_PI / 4.0)};
    Vec3 v = rotation_matrix(qz) * Vec3{1.0, 0.0, 0.0};
    CHECK_THAT(v.x, Catch::Matchers::WithinAbs(0.0, 1e-12));
    CHECK_THAT(v.y, Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(v.z, Catch::Matchers::WithinAbs(0.0, 1e-12));
}

TEST_CASE("skew matrix property a^T S(a) = 0") {
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        Vec3 a{rng.gaussian(), rng.gaussian(), rng.gaussian()};
        Vec3 res = skew(a).transpose_mul(a);  // (a^T S)^T = S^T a
        CHECK_THAT(res.norm(), Catch::Matchers::WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("rotation matrices orthonormal for random unit quaternions") {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        Quat q = random_unit_quat(rng);
        Mat3 r = rotation_matrix(q);
        Mat3 rtr = r.transpose() * r;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                CHECK_THAT(rtr(a, b), Catch::Matchers::WithinAbs(a == b ? 1.0 : 0.0, 1e-9));
        CHECK_THAT(r.det(), Catch::Matchers::WithinAbs(1.0, 1e-9));
    }
}

#ifdef HAVE_EIGEN_ORACLE
TEST_CASE("rotation_matrix matches an independent quaternion route") {
    Rng rng(1234);
    for (int i = 0; i < 200; ++i) {
        Quat q = random_unit_quat(rng);
        Eigen::Quaterniond eq(q.w, q.x, q.y, q.z);
        Eigen::Matrix3d er = eq.toRotationMatrix();
        Mat3 r = rotation_matrix(q);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                CHECK_THAT(r(a, b), Catch::Matchers::WithinAbs(er(a, b), 1e-12));
    }
}

TEST_CASE("quat_to_euler roundtrip against rotation-matrix composition oracle") {
    Rng rng(99);
    for (int i = 0; i < 200; ++i) {
        Quat q = random_unit_quat(rng);
        EulerAngles e = quat_to_euler(q);
        if (std::abs(e.pitch) > M_PI / 2.0 - 0.05) continue;
        Eigen::Matrix3d oracle =
            (Eigen::AngleAxisd(e.yaw, Eigen::Vector3d::UnitZ()) *
             Eigen::AngleAxisd(e.pitch, Eigen::Vector3d::UnitY()) *
             Eigen::AngleAxisd(e.roll, Eigen::Vector3d::UnitX()))
                .toRotationMatrix();
        Mat3 r = rotation_matrix(q);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                CHECK_THAT(r(a, b), Catch::Matchers::WithinAbs(oracle(a, b), 1e-9));
    }
}
#endif

TEST_CASE("state_derivative free fall from rest") {
    InertialProperties inertial = diagonal_inertial(2.0, 0.1, 0.2, 0.3);
    SimState s;
    BodyWrench w{{0.0, 0.0, inertial.mass * inertial.gravity}, {}};
    StateDerivative d = state_derivative(s, w, inertial);
    CHECK_THAT(d.velocity_dot.z, Catch::Matchers::WithinAbs(inertial.gravity, 1e-12));
    CHECK(d.velocity_dot.x == 0.0);
    CHECK(d.angular_rate_dot.norm() == 0.0);
    CHECK(d.attitude_dot.w == 0.0);
    CHECK(d.attitude_dot.x == 0.0);
}

TEST_CASE("state_derivative coriolis term") {
    InertialProperties inertial = diagonal_inertial(1.0, 0.1, 0.1, 0.1);
    SimState s;
    s.velocity = {10.0, 0.0, 0.0};
    s.angular_rate = {0.0, 0.0, 2.0};  // yaw rate r
    StateDerivative d = state_derivative(s, BodyWrench{}, inertial);
    // v_dot = -omega x v = -(0,0,r) x (u,0,0) = (0, -r*u, 0)
    CHECK_THAT(d.velocity_dot.y, Catch::Matchers::WithinAbs(-20.0, 1e-12));
    CHECK_THAT(d.velocity_dot.x, Catch::Matchers::WithinAbs(0.0, 1e-12));
}

TEST_CASE("state_derivative rejects non-finite input") {
    InertialProperties inertial = diagonal_inertial(1.0, 1, 1, 1);
    SimState s;
    s.velocity.x = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(state_derivative(s, BodyWrench{}, inertial), std::invalid_argument);
}

TEST_CASE("pure roll rate integrates to p*t") {
    InertialProperties inertial = diagonal_inertial(1.0, 0.2, 0.3, 0.4);
    SimState s;
    double p = 1.3;
    s.angular_rate = {p, 0.0, 0.0};
    auto no_wrench = [](const SimState&) { return BodyWrench{}; };
    double dt = 0.01;
    for (int i = 0; i < 100; ++i) {
        auto next = integrate_step(s, no_wrench, inertial, dt);
        REQUIRE(next.has_value());
        s = *next;
    }
    EulerAngles e = quat_to_euler(s.attitude);
    CHECK_THAT(e.roll, Catch::Matchers::WithinAbs(p * 1.0, 1e-9));
    CHECK_THAT(s.angular_rate.x, Catch::Matchers::WithinAbs(p, 1e-12));
}

TEST_CASE("integrate_step constant pi roll rate for one second") {
    InertialProperties inertial = diagonal_inertial(1.0, 0.2, 0.2, 0.2);
    SimState s;
    s.angular_rate = {M_PI, 0.0, 0.0};
    auto no_wrench = [](const SimState&) { return BodyWrench{}; };
    for (int i = 0; i < 100; ++i) s = *integrate_step(s, no_wrench, inertial, 0.01);
    // roll should be pi: quaternion (cos(pi/2), sin(pi/2), 0, 0) = (0,1,0,0)
    CHECK_THAT(std::abs(s.attitude.x), Catch::Matchers::WithinAbs(1.0, 1e-6));
    CHECK_THAT(s.attitude.w, Catch::Matchers::WithinAbs(0.0, 1e-6));
}

TEST_CASE("integrate_step zero wrench zero velocity fixed point") {
    InertialProperties inertial = diagonal_inertial(1.0, 1, 1, 1);
    SimState s;
    s.position = {5.0, -2.0, -100.0};
    auto no_wrench = [](const SimState&) { return BodyWrench{}; };
    auto next = integrate_step(s, no_wrench, inertial, 0.01);
    REQUIRE(next.has_value());
    CHECK(next->position.x == 5.0);
    CHECK(next->velocity.norm() == 0.0);
    CHECK(next->attitude.w == 1.0);
}

TEST_CASE("integrate_step rejects NaN wrench") {
    InertialProperties inertial = diagonal_inertial(1.0, 1, 1, 1);
    SimState s;
    auto bad = [](const SimState&) {
        return BodyWrench{{std::numeric_limits<double>::infinity(), 0, 0}, {}};
    };
    CHECK_FALSE(integrate_step(s, bad, inertial, 0.01).has_value());
}

TEST_CASE("quaternion renormalized every step") {
    InertialProperties inertial = diagonal_inertial(1.0, 0.3, 0.25, 0.5);
    SimState s;
    s.angular_rate = {2.0, -1.5, 0.7};
    s.velocity = {18.0, 0.0, 0.0};
    auto spring = [](const SimState& st) {
        BodyWrench w;
        w.moment = -0.05 * st.angular_rate;
        w.force = -0.01 * st.velocity;
        return w;
    };
    for (int i = 0; i < 2000; ++i) {
        s = *integrate_step(s, spring, inertial, 0.01);
        CHECK(std::abs(s.attitude.norm() - 1.0) <= 1e-9);
    }
}

TEST_CASE("RK4 convergence order at least 3.5") {
    // smooth nonlinear test trajectory: velocity-coupled moments and forces
    InertialProperties inertial = diagonal_inertial(2.0, 0.4, 0.3, 0.5);
    auto wrench = [](const SimState& st) {
        BodyWrench w;
        w.force = {std::sin(st.position.x) - 0.2 * st.velocity.x,
                   0.3 * st.velocity.z, -0.1 * st.velocity.y};
        w.moment = {0.02 * std::cos(st.position.y) - 0.05 * st.angular_rate.x,
                    -0.04 * st.angular_rate.y + 0.01 * st.velocity.x,
                    -0.03 * st.angular_rate.z};
        return w;
    };
    SimState init;
    init.velocity = {3.0, 0.5, -0.2};
    init.angular_rate = {0.4, -0.3, 0.2};

    auto run = [&](double dt, int steps) {
        SimState s = init;
        for (int i = 0; i < steps; ++i) s = *integrate_step(s, wrench, inertial, dt);
        return s;
    };
    auto state_diff = [](const SimState& a, const SimState& b) {
        double d = (a.position - b.position).norm() + (a.velocity - b.velocity).norm() +
                   (a.angular_rate - b.angular_rate).norm();
        d += std::abs(a.attitude.w - b.attitude.w) + std::abs(a.attitude.x - b.attitude.x) +
             std::abs(a.attitude.y - b.attitude.y) + std::abs(a.attitude.z - b.attitude.z);
        return d;
    };

    SimState coarse = run(0.02, 50);
    SimState medium = run(0.01, 100);
    SimState fine = run(0.005, 200);
    SimState reference = run(0.0005, 2000);

    double e_coarse = state_diff(coarse, reference);
    double e_medium = state_diff(medium, reference);
    double e_fine = state_diff(fine, reference);

    double order1 = std::log2(e_coarse / e_medium);
    double order2 = std::log2(e_medium / e_fine);
    CHECK(order1 >= 3.5);
    CHECK(order2 >= 3.5);
    // halving dt divides the error by roughly 16
    double ratio = e_coarse / e_medium;
    CHECK(ratio > 8.0);
    CHECK(ratio < 32.0);
}

TEST_CASE("angular momentum conserved under torque-free single-axis spin") {
    InertialProperties inertial = diagonal_inertial(1.5, 0.4, 0.3, 0.5);
    SimState s;
    s.angular_rate = {0.0, 3.0, 0.0};
    auto no_wrench = [](const SimState&) { return BodyWrench{}; };
    Vec3 h0 = inertial.inertia * s.angular_rate;
    for (int i = 0; i < 100; ++i) s = *integrate_step(s, no_wrench, inertial, 0.01);
    Vec3 h1 = inertial.inertia * s.angular_rate;
    CHECK((h1 - h0).norm() / h0.norm() <= 1e-6);
}
