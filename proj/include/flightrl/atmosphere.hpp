#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "math.hpp"
#include "rng.hpp"

namespace flightrl {

enum class TurbulenceSeverity { none, light, moderate, severe };

inline double severity_wind_speed(TurbulenceSeverity s) {
    switch (s) {
        case TurbulenceSeverity::none: return 0.0;
        case TurbulenceSeverity::light: return 7.0;
        case TurbulenceSeverity::moderate: return 15.0;
        case TurbulenceSeverity::severe: return 23.0;
    }
    return 0.0;
}

inline std::string severity_name(TurbulenceSeverity s) {
    switch (s) {
        case TurbulenceSeverity::none: return "none";
        case TurbulenceSeverity::light: return "light";
        case TurbulenceSeverity::moderate: return "moderate";
        case TurbulenceSeverity::severe: return "severe";
    }
    return "none";
}

inline TurbulenceSeverity severity_from_name(const std::string& n) {
    if (n == "none") return TurbulenceSeverity::none;
    if (n == "light") return TurbulenceSeverity::light;
    if (n == "moderate") return TurbulenceSeverity::moderate;
    if (n == "severe") return TurbulenceSeverity::severe;
    throw std::invalid_argument("unknown turbulence severity: " + n);
}

/// Wind environment for one episode: steady-wind magnitude tied to severity,
/// low-altitude Dryden scale lengths and intensities derived from a nominal
/// altitude, with the severity wind speed standing in for the 20-ft
/// reference speed.
struct WindSetting {
    TurbulenceSeverity severity = TurbulenceSeverity::none;
    double steady_speed = 0.0;          // m/s
    double altitude_m = 100.0;          // reference altitude for scale lengths
    double steady_elevation_max = deg2rad(15.0);
    double scale_u = 0.0, scale_v = 0.0, scale_w = 0.0;   // m
    double sigma_u = 0.0, sigma_v = 0.0, sigma_w = 0.0;   // m/s
    std::uint64_t seed = 0;
};

inline WindSetting make_wind_setting(TurbulenceSeverity severity, std::uint64_t seed,
                                     double altitude_m = 100.0) {
    WindSetting w;
    w.severity = severity;
    w.seed = seed;
    w.altitude_m = altitude_m;
    w.steady_speed = severity_wind_speed(severity);

    double h_ft = altitude_m / 0.3048;
    double denom = 0.177 + 0.000823 * h_ft;
    w.scale_w = altitude_m;
    w.scale_u = w.scale_v = altitude_m / std::pow(denom, 1.2);

    double w20 = severity_wind_speed(severity);  // stand-in for the 20-ft wind speed
    w.sigma_w = 0.1 * w20;
    w.sigma_u = w.sigma_v = w.sigma_w / std::pow(denom, 0.4);
    return w;
}

/// Steady wind vector: configured magnitude, azimuth uniform, elevation
/// uniform within +-steady_elevation_max (near-horizontal).
inline Vec3 steady_wind(const WindSetting& setting, Rng& rng) {
    if (setting.steady_speed == 0.0) return {};
    double az = rng.uniform(0.0, 2.0 * M_PI);
    double el = rng.uniform_symmetric(setting.steady_elevation_max);
    double m = setting.steady_speed;
    return {m * std::cos(el) * std::cos(az), m * std::cos(el) * std::sin(az), -m * std::sin(el)};
}

namespace detail {

/// First-order gust channel with exact pole mapping; the input gain is set
/// so the stationary variance equals sigma^2 for unit-variance input noise.
struct GustChannel1 {
    double state = 0.0;

    double step(double sigma, double time_constant, double dt, double noise) {
        double a = std::exp(-dt / time_constant);
        state = a * state + sigma * std::sqrt(1.0 - a * a) * noise;
        return state;
    }
};

/// Second-order channel for the v/w spectra: repeated pole at -1/T with the
/// (1 + sqrt(3) T s) numerator. The state transition is the exact matrix
/// exponential; the output gain is renormalized each step from the solution
/// of the stationary discrete Lyapunov equation, so the output variance is
/// sigma^2 by construction at fixed transport speed.
struct GustChannel2 {
    double x1 = 0.0, x2 = 0.0;

    double step(double sigma, double time_constant, double dt, double noise) {
        double t = time_constant;
        double e = std::exp(-dt / t);
        double a11 = e * (1.0 + dt / t), a12 = e * dt;
        double a21 = -e * dt / (t * t), a22 = e * (1.0 - dt / t);

        // stationary P = A P A^T + diag(0, 1)
        double c1 = a11 * a11 - 1.0, c2 = 2.0 * a11 * a12, c3 = a12 * a12;
        double d1 = a11 * a21, d2 = a11 * a22 + a12 * a21 - 1.0, d3 = a12 * a22;
        double e1 = a21 * a21, e2 = 2.0 * a21 * a22, e3 = a22 * a22 - 1.0;
        double det = c1 * (d2 * e3 - d3 * e2) - c2 * (d1 * e3 - d3 * e1) + c3 * (d1 * e2 - d2 * e1);
        double p11 = (-1.0) * (c2 * d3 - c3 * d2) / det;
        double p12 = (-1.0) * (c3 * d1 - c1 * d3) / det;
        double p22 = (-1.0) * (c1 * d2 - c2 * d1) / det;

        double n = std::sqrt(3.0) * t;
        double var_raw = p11 + 2.0 * n * p12 + n * n * p22;

        double nx1 = a11 * x1 + a12 * x2;
        double nx2 = a21 * x1 + a22 * x2 + noise;
        x1 = nx1;
        x2 = nx2;
        return sigma / std::sqrt(var_raw) * (x1 + n * x2);
    }
};

}  // namespace detail

/// Discrete Dryden shaping filters for the three gust velocity components
/// and the three gust angular rates. Severity none bypasses the filters and
/// returns exact zeros without consuming random numbers.
class DrydenGusts {
public:
    DrydenGusts(const WindSetting& setting, double wingspan, Rng rng)
        : setting_(setting), wingspan_(wingspan), rng_(std::move(rng)) {}

    struct Sample {
        Vec3 velocity;      // m/s, body frame
        Vec3 angular_rate;  // rad/s, body frame
    };

    Sample sample(double airspeed, double dt) {
        if (setting_.severity == TurbulenceSeverity::none) return {};
        double v = airspeed > kTransportFloor ? airspeed : kNominalAirspeed;

        double nu = rng_.gaussian(), nv = rng_.gaussian(), nw = rng_.gaussian(), np = rng_.gaussian();

        Sample s;
        s.velocity.x = u_.step(setting_.sigma_u, setting_.scale_u / v, dt, nu);
        double prev_v = last_v_, prev_w = last_w_;
        s.velocity.y = v_.step(setting_.sigma_v, setting_.scale_v / v, dt, nv);
        s.velocity.z = w_.step(setting_.sigma_w, setting_.scale_w / v, dt, nw);
        last_v_ = s.velocity.y;
        last_w_ = s.velocity.z;

        // p from its own MIL spectrum; q/r as washed-out spatial derivatives
        // of the w and v gusts.
        double sigma_p = setting_.sigma_w * std::sqrt(0.8 / v) *
                         std::pow(M_PI / (4.0 * wingspan_), 1.0 / 6.0) /
                         std::pow(setting_.scale_w, 1.0 / 3.0);
        double t_p = 4.0 * wingspan_ / (M_PI * v);
        s.angular_rate.x = p_.step(sigma_p, t_p, dt, np);

        double t_q = 4.0 * wingspan_ / (M_PI * v);
        double a_q = std::exp(-dt / t_q);
        q_state_ = a_q * q_state_ + (s.velocity.z - prev_w) / (v * t_q);
        s.angular_rate.y = q_state_;

        double t_r = 3.0 * wingspan_ / (M_PI * v);
        double a_r = std::exp(-dt / t_r);
        r_state_ = a_r * r_state_ + (s.velocity.y - prev_v) / (v * t_r);
        s.angular_rate.z = r_state_;
        return s;
    }

private:
    static constexpr double kTransportFloor = 0.1;
    static constexpr double kNominalAirspeed = 18.0;

    WindSetting setting_;
    double wingspan_;
    Rng rng_;
    detail::GustChannel1 u_, p_;
    detail::GustChannel2 v_, w_;
    double last_v_ = 0.0, last_w_ = 0.0;
    double q_state_ = 0.0, r_state_ = 0.0;
};

/// Per-episode wind: one steady vector drawn at construction plus the gust
/// filters. Each concurrent episode owns its own instance.
class WindSim {
public:
    WindSim(const WindSetting& setting, double wingspan)
        : steady_rng_(Rng::substream(setting.seed, "steady-wind")),
          steady_(steady_wind(setting, steady_rng_)),
          gusts_(setting, wingspan, Rng::substream(setting.seed, "dryden")) {}

    const Vec3& steady_ned() const { return steady_; }
    DrydenGusts::Sample sample_gusts(double airspeed, double dt) {
        return gusts_.sample(airspeed, dt);
    }

private:
    Rng steady_rng_;
    Vec3 steady_;
    DrydenGusts gusts_;
};

}  // namespace flightrl
