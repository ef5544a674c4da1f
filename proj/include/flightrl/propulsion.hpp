#pragma once

#include "rigid_body.hpp"

namespace flightrl {

/// Propeller model constants. Thrust follows the discharge-velocity form;
/// the reaction moment is quadratic in commanded motor speed. Defaults suit
/// an X8-class motor/propeller; k_omega and k_q come with the model.
struct PropulsionConfig {
    double motor_constant = 40.0;   // k_m, m/s; discharge velocity at full throttle, V_a = 0
    double disc_area = 0.0616;      // S_p, m^2
    double efficiency = 1.0;        // C_p
    double k_omega = 797.1268;      // rad/s per unit throttle
    double k_q = 1.1871e-6;         // N*m/(rad/s)^2
    double air_density = 1.225;     // kg/m^3

    void validate() const {
        if (!(motor_constant > 0.0 && disc_area > 0.0))
            throw std::invalid_argument("propulsion: k_m and S_p must be positive");
        if (!(efficiency > 0.0 && efficiency <= 2.0))
            throw std::invalid_argument("propulsion: C_p must lie in (0, 2]");
        if (!(k_omega > 0.0 && k_q > 0.0))
            throw std::invalid_argument("propulsion: moment constants must be positive");
    }
};

/// Thrust along body x plus the propeller reaction moment about body x.
/// Thrust may go negative when V_a exceeds k_m (windmilling); no clamp.
inline BodyWrench propulsion_wrench(double airspeed, double throttle, const PropulsionConfig& cfg) {
    if (throttle < 0.0 || throttle > 1.0)
        throw std::invalid_argument("propulsion_wrench: throttle outside [0,1]");
    double vd = airspeed + throttle * (cfg.motor_constant - airspeed);
    double thrust = 0.5 * cfg.air_density * cfg.disc_area * cfg.efficiency * vd * (vd - airspeed);
    double omega = cfg.k_omega * throttle;
    return {{thrust, 0.0, 0.0}, {-cfg.k_q * omega * omega, 0.0, 0.0}};
}

}  // namespace flightrl
