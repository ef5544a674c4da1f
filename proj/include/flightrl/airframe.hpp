#pragma once

#include <string>

#include "actuators.hpp"
#include "aerodynamics.hpp"
#include "config.hpp"
#include "propulsion.hpp"
#include "rigid_body.hpp"

namespace flightrl {

/// Everything the plant model needs about one airframe. Defaults describe a
/// Skywalker-X8-class flying wing; the config file can override any field.
struct AirframeConfig {
    std::string name = "skywalker_x8_class";
    InertialProperties inertial = make_inertial(
        3.364, Mat3{{0.335, 0.0, -0.031, 0.0, 0.140, 0.0, -0.031, 0.0, 0.400}});
    AeroCoefficientSet aero;
    PropulsionConfig propulsion;
    ActuatorLimits actuators;
    std::string hash;  // fingerprint of the loaded document

    void validate() const {
        if (!(inertial.mass > 0.0)) throw std::invalid_argument("airframe: mass must be positive");
        // symmetry + positive definiteness of the inertia tensor
        const Mat3& in = inertial.inertia;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < i; ++j)
                if (std::abs(in(i, j) - in(j, i)) > 1e-12)
                    throw std::invalid_argument("airframe: inertia tensor must be symmetric");
        double m1 = in(0, 0);
        double m2 = in(0, 0) * in(1, 1) - in(0, 1) * in(1, 0);
        if (!(m1 > 0.0 && m2 > 0.0 && in.det() > 0.0))
            throw std::invalid_argument("airframe: inertia tensor must be positive definite");
        aero.validate();
        propulsion.validate();
        actuators.validate();
    }
};

namespace detail {

inline void read_aero(const Json& j, AeroCoefficientSet& a) {
    StrictObject o(j, "aero");
    if (const Json* b = o.child_optional("blending")) {
        StrictObject ob(*b, "aero.blending");
        ob.get_optional("steepness", a.blend_steepness);
        ob.get_optional("cutoff_rad", a.blend_cutoff_rad);
        ob.get_optional("flatplate_pitch_gain", a.flatplate_pitch_gain);
        ob.done();
    }
    if (const Json* d = o.child_optional("drag")) {
        StrictObject od(*d, "aero.drag");
        od.get_optional("cd0", a.cd0);
        od.get_optional("cd_alpha", a.cd_alpha);
        od.get_optional("cd_alpha2", a.cd_alpha2);
        od.get_optional("cd_beta", a.cd_beta);
        od.get_optional("cd_beta2", a.cd_beta2);
        od.get_optional("cd_q", a.cd_q);
        od.get_optional("cd_delta_e", a.cd_delta_e);
        od.get_optional("cd_delta_e2", a.cd_delta_e2);
        od.done();
    }
    if (const Json* s = o.child_optional("side")) {
        StrictObject os(*s, "aero.side");
        os.get_optional("cy0", a.cy0);
        os.get_optional("cy_beta", a.cy_beta);
        os.get_optional("cy_p", a.cy_p);
        os.get_optional("cy_r", a.cy_r);
        os.get_optional("cy_delta_a", a.cy_delta_a);
        os.done();
    }
    if (const Json* l = o.child_optional("lift")) {
        StrictObject ol(*l, "aero.lift");
        ol.get_optional("cl0", a.cl0);
        ol.get_optional("cl_alpha", a.cl_alpha);
        ol.get_optional("cl_q", a.cl_q);
        ol.get_optional("cl_delta_e", a.cl_delta_e);
        ol.done();
    }
    if (const Json* r = o.child_optional("roll")) {
        StrictObject orr(*r, "aero.roll");
        orr.get_optional("cl0", a.croll0);
        orr.get_optional("cl_beta", a.croll_beta);
        orr.get_optional("cl_p", a.croll_p);
        orr.get_optional("cl_r", a.croll_r);
        orr.get_optional("cl_delta_a", a.croll_delta_a);
        orr.done();
    }
    if (const Json* p = o.child_optional("pitch")) {
        StrictObject op(*p, "aero.pitch");
        op.get_optional("cm0", a.cm0);
        op.get_optional("cm_alpha", a.cm_alpha);
        op.get_optional("cm_q", a.cm_q);
        op.get_optional("cm_delta_e", a.cm_delta_e);
        op.done();
    }
    if (const Json* y = o.child_optional("yaw")) {
        StrictObject oy(*y, "aero.yaw");
        oy.get_optional("cn0", a.cn0);
        oy.get_optional("cn_beta", a.cn_beta);
        oy.get_optional("cn_p", a.cn_p);
        oy.get_optional("cn_r", a.cn_r);
        oy.get_optional("cn_delta_a", a.cn_delta_a);
        oy.done();
    }
    o.done();
}

}  // namespace detail

inline AirframeConfig load_airframe(const Json& j) {
    AirframeConfig cfg;
    cfg.hash = config_hash(j);

    StrictObject o(j, "airframe");
    require_schema_version(o, 1);
    o.get_optional("name", cfg.name);

    if (const Json* in = o.child_optional("inertial")) {
        StrictObject oi(*in, "inertial");
        double mass = cfg.inertial.mass, gravity = cfg.inertial.gravity;
        Mat3 tensor = cfg.inertial.inertia;
        oi.get_optional("mass_kg", mass);
        oi.get_optional("gravity_mps2", gravity);
        if (const Json* it = oi.child_optional("inertia_kgm2")) {
            StrictObject ot(*it, "inertial.inertia_kgm2");
            double xx = tensor(0, 0), yy = tensor(1, 1), zz = tensor(2, 2);
            double xy = tensor(0, 1), xz = tensor(0, 2), yz = tensor(1, 2);
            ot.get_optional("xx", xx);
            ot.get_optional("yy", yy);
            ot.get_optional("zz", zz);
            ot.get_optional("xy", xy);
            ot.get_optional("xz", xz);
            ot.get_optional("yz", yz);
            ot.done();
            tensor = Mat3{{xx, xy, xz, xy, yy, yz, xz, yz, zz}};
        }
        oi.done();
        cfg.inertial = make_inertial(mass, tensor, gravity);
    }

    if (const Json* g = o.child_optional("geometry")) {
        StrictObject og(*g, "geometry");
        og.get_optional("wing_area_m2", cfg.aero.wing_area);
        og.get_optional("wingspan_m", cfg.aero.wingspan);
        og.get_optional("chord_m", cfg.aero.chord);
        og.done();
    }

    double rho = cfg.aero.air_density;
    o.get_optional("air_density_kgpm3", rho);
    cfg.aero.air_density = rho;
    cfg.propulsion.air_density = rho;

    if (const Json* a = o.child_optional("aero")) detail::read_aero(*a, cfg.aero);

    if (const Json* p = o.child_optional("propulsion")) {
        StrictObject op(*p, "propulsion");
        op.get_optional("motor_constant_mps", cfg.propulsion.motor_constant);
        op.get_optional("disc_area_m2", cfg.propulsion.disc_area);
        op.get_optional("efficiency", cfg.propulsion.efficiency);
        op.get_optional("k_omega", cfg.propulsion.k_omega);
        op.get_optional("k_q", cfg.propulsion.k_q);
        op.done();
    }

    if (const Json* ac = o.child_optional("actuators")) {
        StrictObject oa(*ac, "actuators");
        oa.get_optional("elevon_limit_rad", cfg.actuators.elevon_limit);
        oa.get_optional("elevon_rate_limit_radps", cfg.actuators.elevon_rate_limit);
        oa.get_optional("servo_natural_freq_radps", cfg.actuators.servo_natural_freq);
        oa.get_optional("servo_damping", cfg.actuators.servo_damping);
        oa.get_optional("throttle_time_constant_s", cfg.actuators.throttle_time_constant);
        oa.done();
    }

    o.done();
    cfg.validate();
    return cfg;
}

inline AirframeConfig load_airframe_file(const std::string& path) {
    return load_airframe(load_json_file(path));
}

inline Json airframe_to_json(const AirframeConfig& c) {
    const Mat3& in = c.inertial.inertia;
    return Json{
        {"schema_version", 1},
        {"name", c.name},
        {"inertial",
         {{"mass_kg", c.inertial.mass},
          {"gravity_mps2", c.inertial.gravity},
          {"inertia_kgm2",
           {{"xx", in(0, 0)}, {"yy", in(1, 1)}, {"zz", in(2, 2)},
            {"xy", in(0, 1)}, {"xz", in(0, 2)}, {"yz", in(1, 2)}}}}},
        {"geometry",
         {{"wing_area_m2", c.aero.wing_area},
          {"wingspan_m", c.aero.wingspan},
          {"chord_m", c.aero.chord}}},
        {"air_density_kgpm3", c.aero.air_density},
        {"aero",
         {{"blending",
           {{"steepness", c.aero.blend_steepness},
            {"cutoff_rad", c.aero.blend_cutoff_rad},
            {"flatplate_pitch_gain", c.aero.flatplate_pitch_gain}}},
          {"drag",
           {{"cd0", c.aero.cd0}, {"cd_alpha", c.aero.cd_alpha}, {"cd_alpha2", c.aero.cd_alpha2},
            {"cd_beta", c.aero.cd_beta}, {"cd_beta2", c.aero.cd_beta2}, {"cd_q", c.aero.cd_q},
            {"cd_delta_e", c.aero.cd_delta_e}, {"cd_delta_e2", c.aero.cd_delta_e2}}},
          {"side",
           {{"cy0", c.aero.cy0}, {"cy_beta", c.aero.cy_beta}, {"cy_p", c.aero.cy_p},
            {"cy_r", c.aero.cy_r}, {"cy_delta_a", c.aero.cy_delta_a}}},
          {"lift",
           {{"cl0", c.aero.cl0}, {"cl_alpha", c.aero.cl_alpha}, {"cl_q", c.aero.cl_q},
            {"cl_delta_e", c.aero.cl_delta_e}}},
          {"roll",
           {{"cl0", c.aero.croll0}, {"cl_beta", c.aero.croll_beta}, {"cl_p", c.aero.croll_p},
            {"cl_r", c.aero.croll_r}, {"cl_delta_a", c.aero.croll_delta_a}}},
          {"pitch",
           {{"cm0", c.aero.cm0}, {"cm_alpha", c.aero.cm_alpha}, {"cm_q", c.aero.cm_q},
            {"cm_delta_e", c.aero.cm_delta_e}}},
          {"yaw",
           {{"cn0", c.aero.cn0}, {"cn_beta", c.aero.cn_beta}, {"cn_p", c.aero.cn_p},
            {"cn_r", c.aero.cn_r}, {"cn_delta_a", c.aero.cn_delta_a}}}}},
        {"propulsion",
         {{"motor_constant_mps", c.propulsion.motor_constant},
          {"disc_area_m2", c.propulsion.disc_area},
          {"efficiency", c.propulsion.efficiency},
          {"k_omega", c.propulsion.k_omega},
          {"k_q", c.propulsion.k_q}}},
        {"actuators",
         {{"elevon_limit_rad", c.actuators.elevon_limit},
          {"elevon_rate_limit_radps", c.actuators.elevon_rate_limit},
          {"servo_natural_freq_radps", c.actuators.servo_natural_freq},
          {"servo_damping", c.actuators.servo_damping},
          {"throttle_time_constant_s", c.actuators.throttle_time_constant}}}};
}

}  // namespace flightrl
