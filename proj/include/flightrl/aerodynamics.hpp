#pragma once

#include "rigid_body.hpp"

namespace flightrl {

/// Velocity of the vehicle relative to the surrounding air mass, and the
/// derived airdata quantities.
struct AirData {
    double airspeed = 0.0;        // V_a, m/s
    double alpha = 0.0;           // angle of attack, rad
    double beta = 0.0;            // sideslip, rad
    Vec3 rel_velocity;            // v_r, body frame
    Vec3 rel_angular_rate;        // omega_r, body frame
    bool low_airspeed = false;    // below the floor; alpha/beta forced to 0
};

constexpr double kAirspeedFloor = 0.1;  // m/s, below this alpha/beta are singular

/// Airframe aerodynamic model: linear coefficient polynomials blended with
/// flat-plate behaviour at large angle of attack, plus geometry and air
/// density. Default values describe a Skywalker-X8-class flying wing; they
/// are a plausible parameter set, not certified data, and every field can be
/// overridden from the airframe config file.
struct AeroCoefficientSet {
    double wing_area = 0.75;     // S, m^2
    double wingspan = 2.10;      // b, m
    double chord = 0.3571;       // c, m
    double air_density = 1.225;  // rho, kg/m^3

    // sigmoid blending between linear and flat-plate regimes
    double blend_steepness = 50.0;       // M
    double blend_cutoff_rad = 0.4712;    // alpha_0
    double flatplate_pitch_gain = -0.5;  // k in C_m,fp = k*sign(alpha)*sin^2(alpha)

    // drag C_D(alpha, beta, q_r, delta_e)
    double cd0 = 0.0197;
    double cd_alpha = 0.0791;
    double cd_alpha2 = 1.0555;
    double cd_beta = 0.0;
    double cd_beta2 = 0.1478;
    double cd_q = 0.0;
    double cd_delta_e = 0.0;
    double cd_delta_e2 = 0.4001;

    // side force C_Y(beta, p_r, r_r, delta_a)
    double cy0 = 0.0;
    double cy_beta = -0.2239;
    double cy_p = -0.1374;
    double cy_r = 0.0839;
    double cy_delta_a = 0.0433;

    // lift C_L(alpha, q_r, delta_e)
    double cl0 = 0.0867;
    double cl_alpha = 4.0203;
    double cl_q = 3.8700;
    double cl_delta_e = 0.2781;

    // roll moment C_l(beta, p_r, r_r, delta_a)
    double croll0 = 0.0;
    double croll_beta = -0.0849;
    double croll_p = -0.4042;
    double croll_r = 0.0555;
    double croll_delta_a = 0.1202;

    // pitch moment C_m(alpha, q_r, delta_e)
    double cm0 = 0.0302;
    double cm_alpha = -0.5909;
    double cm_q = -1.4854;
    double cm_delta_e = -0.3223;

    // yaw moment C_n(beta, p_r, r_r, delta_a)
    double cn0 = 0.0;
    double cn_beta = 0.0283;
    double cn_p = -0.0247;
    double cn_r = -0.1252;
    double cn_delta_a = -0.00339;

    void validate() const;
};

/// Sigmoid weight between the linear small-angle model (sigma ~ 0) and the
/// flat-plate model (sigma ~ 1); symmetric in alpha.
inline double blending_sigma(double alpha, double steepness, double cutoff) {
    double en = std::exp(-steepness * (alpha - cutoff));
    double ep = std::exp(steepness * (alpha + cutoff));
    return (1.0 + en + ep) / ((1.0 + en) * (1.0 + ep));
}

inline double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

inline double flatplate_lift(double alpha) {
    double s = std::sin(alpha);
    return 2.0 * sign(alpha) * s * s * std::cos(alpha);
}

inline double flatplate_drag(double alpha) {
    double s = std::sin(alpha);
    return 2.0 * s * s;
}

inline double flatplate_pitch(double alpha, double gain) {
    double s = std::sin(alpha);
    return gain * sign(alpha) * s * s;
}

inline void AeroCoefficientSet::validate() const {
    if (!(wing_area > 0.0 && wingspan > 0.0 && chord > 0.0 && air_density > 0.0))
        throw std::invalid_argument("aero geometry and density must be positive");
    if (!(blend_steepness > 0.0))
        throw std::invalid_argument("blending steepness must be positive");
    if (!(blend_cutoff_rad > 0.0 && blend_cutoff_rad < M_PI / 2.0))
        throw std::invalid_argument("blending cutoff must lie in (0, pi/2)");
    for (int i = 0; i <= 200; ++i) {
        double a = -M_PI / 2.0 + M_PI * i / 200.0;
        double sig = blending_sigma(a, blend_steepness, blend_cutoff_rad);
        double lin = cd0 + cd_alpha * a + cd_alpha2 * a * a;
        double cd = (1.0 - sig) * lin + sig * flatplate_drag(a);
        if (!(cd > 0.0)) throw std::invalid_argument("blended C_D not positive over alpha sweep");
    }
}

/// Airdata from vehicle state, steady wind (NED) and gusts (body frame).
inline AirData compute_airdata(const SimState& state, const Vec3& steady_wind_ned,
                               const Vec3& gust_body, const Vec3& gust_rates_body) {
    AirData air;
    Mat3 r = rotation_matrix(state.attitude);
    air.rel_velocity = state.velocity - r.transpose_mul(steady_wind_ned) - gust_body;
    air.rel_angular_rate = state.angular_rate - gust_rates_body;
    air.airspeed = air.rel_velocity.norm();
    if (air.airspeed < kAirspeedFloor) {
        air.low_airspeed = true;
        return air;  // alpha/beta left at 0; 0/0 otherwise
    }
    air.alpha = std::atan2(air.rel_velocity.z, air.rel_velocity.x);
    air.beta = std::asin(clamp(air.rel_velocity.y / air.airspeed, -1.0, 1.0));
    return air;
}

/// Rotation from the wind frame (drag/side/lift axes) to the body frame.
inline Mat3 wind_to_body(double alpha, double beta) {
    double ca = std::cos(alpha), sa = std::sin(alpha);
    double cb = std::cos(beta), sb = std::sin(beta);
    return {{ca * cb, ca * sb, -sa,
             -sb,     cb,      0.0,
             cb * sa, sa * sb, ca}};
}

/// Aerodynamic force and moment for the current airdata and the virtual
/// aileron/elevator deflections of the actual elevon positions.
inline BodyWrench aero_wrench(const AirData& air, double delta_a, double delta_e,
                              const AeroCoefficientSet& c) {
    if (air.airspeed < kAirspeedFloor) return {};  // dynamic pressure ~ 0

    double va = air.airspeed;
    double alpha = air.alpha, beta = air.beta;
    double p_hat = c.wingspan * air.rel_angular_rate.x / (2.0 * va);
    double q_hat = c.chord * air.rel_angular_rate.y / (2.0 * va);
    double r_hat = c.wingspan * air.rel_angular_rate.z / (2.0 * va);

    double sig = blending_sigma(alpha, c.blend_steepness, c.blend_cutoff_rad);

    double cd_lin = c.cd0 + c.cd_alpha * alpha + c.cd_alpha2 * alpha * alpha + c.cd_beta * beta +
                    c.cd_beta2 * beta * beta + c.cd_q * q_hat + c.cd_delta_e * delta_e +
                    c.cd_delta_e2 * delta_e * delta_e;
    double cl_lin = c.cl0 + c.cl_alpha * alpha + c.cl_q * q_hat + c.cl_delta_e * delta_e;
    double cm_lin = c.cm0 + c.cm_alpha * alpha + c.cm_q * q_hat + c.cm_delta_e * delta_e;

    double cd = (1.0 - sig) * cd_lin + sig * flatplate_drag(alpha);
    double cl = (1.0 - sig) * cl_lin + sig * flatplate_lift(alpha);
    double cm = (1.0 - sig) * cm_lin + sig * flatplate_pitch(alpha, c.flatplate_pitch_gain);

    double cy = c.cy0 + c.cy_beta * beta + c.cy_p * p_hat + c.cy_r * r_hat + c.cy_delta_a * delta_a;
    double croll = c.croll0 + c.croll_beta * beta + c.croll_p * p_hat + c.croll_r * r_hat +
                   c.croll_delta_a * delta_a;
    double cn = c.cn0 + c.cn_beta * beta + c.cn_p * p_hat + c.cn_r * r_hat + c.cn_delta_a * delta_a;

    double qbar_s = 0.5 * c.air_density * va * va * c.wing_area;
    Vec3 wind_frame{-qbar_s * cd, qbar_s * cy, -qbar_s * cl};

    BodyWrench w;
    w.force = wind_to_body(alpha, beta) * wind_frame;
    w.moment = {qbar_s * c.wingspan * croll, qbar_s * c.chord * cm, qbar_s * c.wingspan * cn};
    return w;
}

}  // namespace flightrl
