#pragma once

#include <utility>

#include "math.hpp"

namespace flightrl {

/// Actuator travel, slew and dynamics constants. Elevons are modelled as
/// rate-limited, saturated second-order servos; the throttle as a first-order
/// lag.
struct ActuatorLimits {
    double elevon_limit = deg2rad(30.0);        // rad
    double elevon_rate_limit = deg2rad(200.0);  // rad/s
    double servo_natural_freq = 100.0;          // omega_0, rad/s
    double servo_damping = M_SQRT1_2;           // zeta
    double throttle_time_constant = 0.2;        // s

    void validate() const {
        if (!(elevon_limit > 0.0 && elevon_rate_limit > 0.0))
            throw std::invalid_argument("actuators: limits must be positive");
        if (!(servo_natural_freq > 0.0 && servo_damping > 0.0))
            throw std::invalid_argument("actuators: servo constants must be positive");
        if (!(throttle_time_constant > 0.0))
            throw std::invalid_argument("actuators: throttle time constant must be positive");
    }
};

/// Virtual aileron/elevator plus throttle, as commanded by a controller.
struct ControlCommand {
    double aileron = 0.0;   // delta_a^c, rad
    double elevator = 0.0;  // delta_e^c, rad
    double throttle = 0.0;  // delta_t^c, [0,1]

    bool finite() const {
        return std::isfinite(aileron) && std::isfinite(elevator) && std::isfinite(throttle);
    }
};

/// (delta_a, delta_e) of a right/left elevon pair.
inline std::pair<double, double> elevon_to_virtual(double right, double left) {
    return {-0.5 * right + 0.5 * left, 0.5 * right + 0.5 * left};
}

/// Exact inverse of elevon_to_virtual.
inline std::pair<double, double> virtual_to_elevon(double aileron, double elevator) {
    return {elevator - aileron, elevator + aileron};
}

/// Deflection plus deflection rate of one elevon servo.
struct ServoState {
    double deflection = 0.0;  // rad
    double rate = 0.0;        // rad/s
};

struct ActuatorState {
    ServoState elevon_right;
    ServoState elevon_left;
    double throttle = 0.0;
};

/// One simulation-step update of a second-order servo,
/// x1' = x2, x2' = w0^2 (u - x1) - 2 zeta w0 x2,
/// integrated with two explicit Euler substeps. Rate and deflection are
/// saturated after each substep, which is where the slew limit physically
/// acts.
inline ServoState step_elevon(ServoState s, double command, double dt, const ActuatorLimits& lim) {
    const int substeps = 2;
    double h = dt / substeps;
    double w0 = lim.servo_natural_freq;
    for (int i = 0; i < substeps; ++i) {
        double accel = w0 * w0 * (command - s.deflection) - 2.0 * lim.servo_damping * w0 * s.rate;
        s.deflection += h * s.rate;
        s.rate += h * accel;
        s.rate = clamp(s.rate, -lim.elevon_rate_limit, lim.elevon_rate_limit);
        if (s.deflection >= lim.elevon_limit) {
            s.deflection = lim.elevon_limit;
            s.rate = std::min(s.rate, 0.0);
        } else if (s.deflection <= -lim.elevon_limit) {
            s.deflection = -lim.elevon_limit;
            s.rate = std::max(s.rate, 0.0);
        }
    }
    return s;
}

/// First-order throttle lag, output clamped to [0,1].
inline double step_throttle(double state, double command, double dt, const ActuatorLimits& lim) {
    command = clamp(command, 0.0, 1.0);
    double h = dt / 2.0;
    for (int i = 0; i < 2; ++i) {
        state += h * (command - state) / lim.throttle_time_constant;
    }
    return clamp(state, 0.0, 1.0);
}

/// Advances the full actuator bank one step. The command is saturated to the
/// reachable range, mapped to per-elevon commands, and each servo is stepped;
/// the aero model afterwards sees the virtual deflections of the actual
/// surface positions.
inline ActuatorState step_actuators(const ActuatorState& state, const ControlCommand& cmd,
                                    double dt, const ActuatorLimits& lim) {
    auto [right_cmd, left_cmd] = virtual_to_elevon(
        clamp(cmd.aileron, -lim.elevon_limit, lim.elevon_limit),
        clamp(cmd.elevator, -lim.elevon_limit, lim.elevon_limit));
    right_cmd = clamp(right_cmd, -lim.elevon_limit, lim.elevon_limit);
    left_cmd = clamp(left_cmd, -lim.elevon_limit, lim.elevon_limit);

    ActuatorState next;
    next.elevon_right = step_elevon(state.elevon_right, right_cmd, dt, lim);
    next.elevon_left = step_elevon(state.elevon_left, left_cmd, dt, lim);
    next.throttle = step_throttle(state.throttle, cmd.throttle, dt, lim);
    return next;
}

/// Virtual deflections corresponding to the actual elevon positions.
inline std::pair<double, double> actual_virtual_deflections(const ActuatorState& s) {
    return elevon_to_virtual(s.elevon_right.deflection, s.elevon_left.deflection);
}

}  // namespace flightrl
