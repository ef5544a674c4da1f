#pragma once

#include <functional>
#include <optional>

#include "math.hpp"

namespace flightrl {

/// Full dynamical state of the vehicle: NED position, unit-quaternion
/// attitude, body-frame linear and angular velocity.
struct SimState {
    Vec3 position;        // m, NED
    Quat attitude;        // unit quaternion, body -> NED
    Vec3 velocity;        // m/s, body frame (u, v, w)
    Vec3 angular_rate;    // rad/s, body frame (p, q, r)

    bool finite() const {
        return position.finite() && attitude.finite() && velocity.finite() &&
               angular_rate.finite();
    }
};

struct BodyWrench {
    Vec3 force;    // N, body frame
    Vec3 moment;   // N*m, body frame

    BodyWrench operator+(const BodyWrench& o) const {
        return {force + o.force, moment + o.moment};
    }
    bool finite() const { return force.finite() && moment.finite(); }
};

struct InertialProperties {
    double mass = 1.0;          // kg
    Mat3 inertia;               // kg*m^2, may carry off-diagonal coupling
    Mat3 inertia_inv;           // precomputed at load
    double gravity = 9.81;      // m/s^2, NED down
};

inline InertialProperties make_inertial(double mass, const Mat3& inertia, double gravity = 9.81) {
    if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
    return {mass, inertia, inertia.inverse(), gravity};
}

/// Rotation matrix body->NED from a unit quaternion,
/// R = I + 2*eta*S(eps) + 2*S(eps)^2.
inline Mat3 rotation_matrix(const Quat& q) {
    Mat3 s = skew(q.vec());
    return Mat3::identity() + s * (2.0 * q.w) + (s * s) * 2.0;
}

/// ZYX Euler angles from a unit quaternion. At the pitch singularity the
/// roll angle is set to zero and yaw absorbs the remaining rotation.
struct EulerAngles {
    double roll = 0.0, pitch = 0.0, yaw = 0.0;
};

inline EulerAngles quat_to_euler(const Quat& q) {
    double sinp = 2.0 * (q.w * q.y - q.z * q.x);
    constexpr double kLockTol = 1.0 - 1e-12;
    if (sinp >= kLockTol) return {0.0, M_PI / 2.0, -2.0 * std::atan2(q.x, q.w)};
    if (sinp <= -kLockTol) return {0.0, -M_PI / 2.0, 2.0 * std::atan2(q.x, q.w)};
    EulerAngles e;
    e.roll = std::atan2(2.0 * (q.w * q.x + q.y * q.z), 1.0 - 2.0 * (q.x * q.x + q.y * q.y));
    e.pitch = std::asin(sinp);
    e.yaw = std::atan2(2.0 * (q.w * q.z + q.x * q.y), 1.0 - 2.0 * (q.y * q.y + q.z * q.z));
    return e;
}

inline Quat euler_to_quat(double roll, double pitch, double yaw) {
    double cr = std::cos(roll * 0.5), sr = std::sin(roll * 0.5);
    double cp = std::cos(pitch * 0.5), sp = std::sin(pitch * 0.5);
    double cy = std::cos(yaw * 0.5), sy = std::sin(yaw * 0.5);
    return {cy * cp * cr + sy * sp * sr,
            cy * cp * sr - sy * sp * cr,
            cy * sp * cr + sy * cp * sr,
            sy * cp * cr - cy * sp * sr};
}

/// Time derivative of every SimState field. The wrench must already include
/// gravity resolved into the body frame alongside aero and propulsion.
struct StateDerivative {
    Vec3 position_dot;
    Quat attitude_dot;   // not a unit quaternion; plain component rates
    Vec3 velocity_dot;
    Vec3 angular_rate_dot;
};

inline StateDerivative state_derivative(const SimState& state, const BodyWrench& wrench,
                                        const InertialProperties& inertial) {
    if (!state.finite() || !wrench.finite())
        throw std::invalid_argument("state_derivative: non-finite input");

    StateDerivative d;
    d.position_dot = rotation_matrix(state.attitude) * state.velocity;

    const Vec3& w = state.angular_rate;
    const Quat& q = state.attitude;
    d.attitude_dot.w = -0.5 * (w.x * q.x + w.y * q.y + w.z * q.z);
    Vec3 ve = q.vec();
    Vec3 vdot = 0.5 * (q.w * w - w.cross(ve));
    d.attitude_dot.x = vdot.x;
    d.attitude_dot.y = vdot.y;
    d.attitude_dot.z = vdot.z;

    d.velocity_dot = wrench.force / inertial.mass - w.cross(state.velocity);
    d.angular_rate_dot = inertial.inertia_inv * (wrench.moment - w.cross(inertial.inertia * w));
    return d;
}

using WrenchProvider = std::function<BodyWrench(const SimState&)>;

namespace detail {

inline SimState state_add_scaled(const SimState& s, const StateDerivative& d, double h) {
    SimState r;
    r.position = s.position + d.position_dot * h;
    r.attitude = {s.attitude.w + d.attitude_dot.w * h, s.attitude.x + d.attitude_dot.x * h,
                  s.attitude.y + d.attitude_dot.y * h, s.attitude.z + d.attitude_dot.z * h};
    r.velocity = s.velocity + d.velocity_dot * h;
    r.angular_rate = s.angular_rate + d.angular_rate_dot * h;
    return r;
}

inline bool derivative_finite(const StateDerivative& d) {
    return d.position_dot.finite() && d.attitude_dot.finite() && d.velocity_dot.finite() &&
           d.angular_rate_dot.finite();
}

}  // namespace detail

/// One classical RK4 step. The quaternion is integrated componentwise and
/// renormalized afterwards. Returns nullopt when any stage derivative is
/// non-finite so the caller can flag the episode as diverged.
inline std::optional<SimState> integrate_step(const SimState& state, const WrenchProvider& wrench,
                                              const InertialProperties& inertial, double dt) {
    auto eval = [&](const SimState& s) { return state_derivative(s, wrench(s), inertial); };

    StateDerivative k1 = eval(state);
    if (!detail::derivative_finite(k1)) return std::nullopt;
    StateDerivative k2 = eval(detail::state_add_scaled(state, k1, 0.5 * dt));
    if (!detail::derivative_finite(k2)) return std::nullopt;
    StateDerivative k3 = eval(detail::state_add_scaled(state, k2, 0.5 * dt));
    if (!detail::derivative_finite(k3)) return std::nullopt;
    StateDerivative k4 = eval(detail::state_add_scaled(state, k3, dt));
    if (!detail::derivative_finite(k4)) return std::nullopt;

    SimState next = state;
    double h = dt / 6.0;
    auto blend = [h](double a, double b, double c, double d) { return h * (a + 2.0 * b + 2.0 * c + d); };
    next.position += {blend(k1.position_dot.x, k2.position_dot.x, k3.position_dot.x, k4.position_dot.x),
                      blend(k1.position_dot.y, k2.position_dot.y, k3.position_dot.y, k4.position_dot.y),
                      blend(k1.position_dot.z, k2.position_dot.z, k3.position_dot.z, k4.position_dot.z)};
    next.attitude.w += blend(k1.attitude_dot.w, k2.attitude_dot.w, k3.attitude_dot.w, k4.attitude_dot.w);
    next.attitude.x += blend(k1.attitude_dot.x, k2.attitude_dot.x, k3.attitude_dot.x, k4.attitude_dot.x);
    next.attitude.y += blend(k1.attitude_dot.y, k2.attitude_dot.y, k3.attitude_dot.y, k4.attitude_dot.y);
    next.attitude.z += blend(k1.attitude_dot.z, k2.attitude_dot.z, k3.attitude_dot.z, k4.attitude_dot.z);
    next.velocity += {blend(k1.velocity_dot.x, k2.velocity_dot.x, k3.velocity_dot.x, k4.velocity_dot.x),
                      blend(k1.velocity_dot.y, k2.velocity_dot.y, k3.velocity_dot.y, k4.velocity_dot.y),
                      blend(k1.velocity_dot.z, k2.velocity_dot.z, k3.velocity_dot.z, k4.velocity_dot.z)};
    next.angular_rate += {blend(k1.angular_rate_dot.x, k2.angular_rate_dot.x, k3.angular_rate_dot.x, k4.angular_rate_dot.x),
                          blend(k1.angular_rate_dot.y, k2.angular_rate_dot.y, k3.angular_rate_dot.y, k4.angular_rate_dot.y),
                          blend(k1.angular_rate_dot.z, k2.angular_rate_dot.z, k3.angular_rate_dot.z, k4.angular_rate_dot.z)};

    if (!next.finite() || next.attitude.norm() < 1e-12) return std::nullopt;
    next.attitude = next.attitude.normalized();
    return next;
}

}  // namespace flightrl
