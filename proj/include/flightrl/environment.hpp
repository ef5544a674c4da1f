#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "airframe.hpp"
#include "atmosphere.hpp"

namespace flightrl {

struct TargetSetpoint {
    double roll = 0.0;      // phi^d, rad
    double pitch = 0.0;     // theta^d, rad
    double airspeed = 18.0; // V_a^d, m/s
};

/// Initial-condition and target ranges used for episode randomization,
/// plus horizon and wind. The range defaults are the training table; the
/// curriculum difficulty scales every sampled span between 10% and 100%.
struct EpisodeSpec {
    double max_roll0 = deg2rad(150.0);
    double max_pitch0 = deg2rad(45.0);
    double max_yaw0 = deg2rad(60.0);
    double max_omega0 = deg2rad(60.0);   // per axis, rad/s
    double max_alpha0 = deg2rad(26.0);
    double max_beta0 = deg2rad(26.0);
    double min_airspeed0 = 12.0, max_airspeed0 = 30.0;

    double max_roll_target = deg2rad(60.0);
    double max_pitch_target = deg2rad(30.0);
    double min_airspeed_target = 12.0, max_airspeed_target = 30.0;

    int max_steps = 2000;
    double initial_altitude = 200.0;  // m above the NED origin
    WindSetting wind;                 // severity none during training
    double difficulty = 1.0;          // within [0, 1]
};

// Observation layout: 12 components x 5 time steps, component-major with the
// oldest step first. Components: V_a, roll, pitch, p, q, r, roll error,
// pitch error, airspeed error, moving averages of the aileron/elevator/
// throttle setpoints.
constexpr int kObsComponents = 12;
constexpr int kObsHistory = 5;
constexpr int kObsSize = kObsComponents * kObsHistory;

inline int obs_index(int component, int step) { return component * kObsHistory + step; }

/// Running per-component mean/variance (Welford) used to normalize
/// observations. Updates happen only in training mode; evaluation uses the
/// frozen statistics. Normalized values are clipped to +-10.
class ObservationNormalizer {
public:
    explicit ObservationNormalizer(int size = kObsSize)
        : count_(0), mean_(size, 0.0), m2_(size, 0.0) {}

    void update(const std::vector<double>& raw) {
        ++count_;
        for (std::size_t i = 0; i < mean_.size(); ++i) {
            double delta = raw[i] - mean_[i];
            mean_[i] += delta / static_cast<double>(count_);
            m2_[i] += delta * (raw[i] - mean_[i]);
        }
    }

    std::vector<double> normalize(const std::vector<double>& raw) const {
        std::vector<double> out(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) {
            double var = count_ > 0 ? m2_[i] / static_cast<double>(count_) : 0.0;
            out[i] = clamp((raw[i] - mean_[i]) / std::sqrt(var + 1e-8), -10.0, 10.0);
        }
        return out;
    }

    /// Training-mode path: fold the sample in, then normalize with the
    /// updated statistics.
    std::vector<double> update_and_normalize(const std::vector<double>& raw) {
        update(raw);
        return normalize(raw);
    }

    std::int64_t count() const { return count_; }
    const std::vector<double>& mean() const { return mean_; }
    std::vector<double> variance() const {
        std::vector<double> v(m2_.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = count_ > 0 ? m2_[i] / static_cast<double>(count_) : 0.0;
        return v;
    }

    void restore(std::int64_t count, std::vector<double> mean, std::vector<double> m2) {
        count_ = count;
        mean_ = std::move(mean);
        m2_ = std::move(m2);
    }
    const std::vector<double>& m2() const { return m2_; }

private:
    std::int64_t count_;
    std::vector<double> mean_;
    std::vector<double> m2_;
};

/// Shaped tracking reward in [-1, 0]: absolute roll/pitch/airspeed errors
/// scaled by their dynamic range and clipped at the component weights, plus
/// a setpoint-variation cost over the last five command changes.
inline double tracking_reward(double roll_err, double pitch_err, double airspeed_err,
                              const std::array<ControlCommand, 6>& recent_commands) {
    double r_roll = clamp(std::abs(roll_err) / 3.3, 0.0, 0.3);
    double r_pitch = clamp(std::abs(pitch_err) / 2.25, 0.0, 0.3);
    double r_speed = clamp(std::abs(airspeed_err) / 25.0, 0.0, 0.3);

    double variation = 0.0;
    for (int i = 0; i < 5; ++i) {
        const ControlCommand& a = recent_commands[i];      // t - i
        const ControlCommand& b = recent_commands[i + 1];  // t - 1 - i
        variation += std::abs(a.aileron - b.aileron) + std::abs(a.elevator - b.elevator) +
                     std::abs(a.throttle - b.throttle);
    }
    double r_var = clamp(variation / 60.0, 0.0, 0.1);
    return -(r_roll + r_pitch + r_speed + r_var);
}

enum class EpisodeEnd { running, horizon, diverged, bad_action };

struct EnvStep {
    std::vector<double> observation;  // raw, not normalized
    double reward = 0.0;
    bool done = false;
    EpisodeEnd end = EpisodeEnd::running;

    // plant readouts for traces and metrics
    EulerAngles euler;
    double airspeed = 0.0;
    ControlCommand applied;          // saturated setpoints this step
    ActuatorState actuators;
    SimState state;
};

/// Episodic attitude-control environment around the 6-DOF plant: actuator
/// dynamics, wind and gusts, aero+propulsion+gravity wrench, one RK4 step
/// per control period.
class AttitudeEnv {
public:
    AttitudeEnv(AirframeConfig airframe, EpisodeSpec spec, std::uint64_t seed,
                std::uint64_t actor_index = 0)
        : airframe_(std::move(airframe)),
          spec_(std::move(spec)),
          seed_(seed),
          actor_index_(actor_index) {}

    int observation_size() const { return kObsSize; }
    int action_size() const { return 3; }
    const EpisodeSpec& spec() const { return spec_; }
    const AirframeConfig& airframe() const { return airframe_; }
    const TargetSetpoint& targets() const { return targets_; }
    const SimState& state() const { return state_; }
    int step_count() const { return step_count_; }
    double dt() const { return dt_; }

    void set_difficulty(double d) { spec_.difficulty = clamp(d, 0.0, 1.0); }
    double difficulty() const { return spec_.difficulty; }

    void set_targets(const TargetSetpoint& t) { targets_ = t; }

    /// Randomized reset; ranges scale with difficulty.
    std::vector<double> reset() {
        Rng rng = Rng::substream(seed_, "episode", (actor_index_ << 32) | episode_count_);
        ++episode_count_;

        double scale = 0.1 + 0.9 * spec_.difficulty;

        double roll = rng.uniform_symmetric(scale * spec_.max_roll0);
        double pitch = rng.uniform_symmetric(scale * spec_.max_pitch0);
        double yaw = rng.uniform_symmetric(scale * spec_.max_yaw0);
        Vec3 omega{rng.uniform_symmetric(scale * spec_.max_omega0),
                   rng.uniform_symmetric(scale * spec_.max_omega0),
                   rng.uniform_symmetric(scale * spec_.max_omega0)};
        double alpha = rng.uniform_symmetric(scale * spec_.max_alpha0);
        double beta = rng.uniform_symmetric(scale * spec_.max_beta0);
        double va_mid = 0.5 * (spec_.min_airspeed0 + spec_.max_airspeed0);
        double va_half = 0.5 * (spec_.max_airspeed0 - spec_.min_airspeed0);
        double airspeed = va_mid + rng.uniform_symmetric(scale * va_half);

        TargetSetpoint t;
        t.roll = rng.uniform_symmetric(scale * spec_.max_roll_target);
        t.pitch = rng.uniform_symmetric(scale * spec_.max_pitch_target);
        double vt_mid = 0.5 * (spec_.min_airspeed_target + spec_.max_airspeed_target);
        double vt_half = 0.5 * (spec_.max_airspeed_target - spec_.min_airspeed_target);
        t.airspeed = vt_mid + rng.uniform_symmetric(scale * vt_half);

        SimState s;
        s.position = {0.0, 0.0, -spec_.initial_altitude};
        s.attitude = euler_to_quat(roll, pitch, yaw);
        s.angular_rate = omega;

        WindSetting wind = spec_.wind;
        wind.seed = rng.next_u64();
        wind_ = std::make_unique<WindSim>(wind, airframe_.aero.wingspan);

        // initial body velocity honors the sampled V_a/alpha/beta exactly,
        // relative to the steady wind
        Vec3 rel{airspeed * std::cos(alpha) * std::cos(beta), airspeed * std::sin(beta),
                 airspeed * std::sin(alpha) * std::cos(beta)};
        s.velocity = rel + rotation_matrix(s.attitude).transpose_mul(wind_->steady_ned());

        return reset_with(s, t);
    }

    /// Deterministic reset to an explicit state/target pair (evaluation
    /// scenarios, setpoint schedules). Wind must have been set up by a
    /// preceding reset() or via set_wind_seed().
    std::vector<double> reset_with(const SimState& state, const TargetSetpoint& targets) {
        if (!wind_) {
            WindSetting wind = spec_.wind;
            wind.seed = seed_;
            wind_ = std::make_unique<WindSim>(wind, airframe_.aero.wingspan);
        }
        state_ = state;
        targets_ = targets;
        actuators_ = ActuatorState{};
        gust_ = DrydenGusts::Sample{};
        commands_.fill(ControlCommand{});
        step_count_ = 0;
        finished_ = false;

        history_.assign(kObsSize, 0.0);
        std::array<double, kObsComponents> row = observation_row();
        for (int c = 0; c < kObsComponents; ++c)
            for (int k = 0; k < kObsHistory; ++k) history_[obs_index(c, k)] = row[c];
        return history_;
    }

    /// RL action path: clip to [-1,1], scale to actuator ranges.
    EnvStep step(const std::array<double, 3>& action) {
        if (!std::isfinite(action[0]) || !std::isfinite(action[1]) || !std::isfinite(action[2])) {
            EnvStep out;
            out.observation = history_;
            out.reward = -1.0;
            out.done = true;
            out.end = EpisodeEnd::bad_action;
            out.state = state_;
            finished_ = true;
            return out;
        }
        double limit = airframe_.actuators.elevon_limit;
        ControlCommand cmd;
        cmd.aileron = clamp(action[0], -1.0, 1.0) * limit;
        cmd.elevator = clamp(action[1], -1.0, 1.0) * limit;
        cmd.throttle = 0.5 * (clamp(action[2], -1.0, 1.0) + 1.0);
        return step_with_command(cmd);
    }

    /// Direct command path used by the PID baseline and setpoint schedules.
    EnvStep step_with_command(ControlCommand cmd) {
        double limit = airframe_.actuators.elevon_limit;
        cmd.aileron = clamp(cmd.aileron, -limit, limit);
        cmd.elevator = clamp(cmd.elevator, -limit, limit);
        cmd.throttle = clamp(cmd.throttle, 0.0, 1.0);

        // command history: slot 0 is the current step
        for (int i = 5; i > 0; --i) commands_[i] = commands_[i - 1];
        commands_[0] = cmd;

        actuators_ = step_actuators(actuators_, cmd, dt_, airframe_.actuators);

        AirData before = compute_airdata(state_, wind_->steady_ned(), gust_.velocity,
                                         gust_.angular_rate);
        gust_ = wind_->sample_gusts(before.airspeed, dt_);

        auto [da, de] = actual_virtual_deflections(actuators_);
        double throttle = actuators_.throttle;
        auto wrench = [&](const SimState& s) {
            AirData air = compute_airdata(s, wind_->steady_ned(), gust_.velocity,
                                          gust_.angular_rate);
            BodyWrench total = aero_wrench(air, da, de, airframe_.aero) +
                               propulsion_wrench(air.airspeed, throttle, airframe_.propulsion);
            Vec3 gravity_body = rotation_matrix(s.attitude).transpose_mul(
                Vec3{0.0, 0.0, airframe_.inertial.mass * airframe_.inertial.gravity});
            total.force += gravity_body;
            return total;
        };

        EnvStep out;
        out.applied = cmd;
        auto next = integrate_step(state_, wrench, airframe_.inertial, dt_);
        bool diverged = !next.has_value();
        if (!diverged) {
            state_ = *next;
            diverged = std::abs(state_.velocity.x) > kVelocityGuard ||
                       std::abs(state_.velocity.y) > kVelocityGuard ||
                       std::abs(state_.velocity.z) > kVelocityGuard ||
                       state_.position.z > 0.0;
        }
        ++step_count_;

        AirData air = compute_airdata(state_, wind_->steady_ned(), gust_.velocity,
                                      gust_.angular_rate);
        out.euler = quat_to_euler(state_.attitude);
        out.airspeed = air.airspeed;
        out.actuators = actuators_;
        out.state = state_;

        push_observation_row();
        out.observation = history_;
        out.reward = tracking_reward(wrap_pi(out.euler.roll - targets_.roll),
                                     wrap_pi(out.euler.pitch - targets_.pitch),
                                     air.airspeed - targets_.airspeed, commands_);
        if (diverged) {
            out.done = true;
            out.end = EpisodeEnd::diverged;
        } else if (step_count_ >= spec_.max_steps) {
            out.done = true;
            out.end = EpisodeEnd::horizon;
        }
        finished_ = out.done;
        return out;
    }

    bool finished() const { return finished_; }

private:
    static constexpr double kVelocityGuard = 120.0;  // m/s, per-component divergence bound

    std::array<double, kObsComponents> observation_row() const {
        EulerAngles e = quat_to_euler(state_.attitude);
        AirData air = compute_airdata(state_, wind_ ? wind_->steady_ned() : Vec3{},
                                      gust_.velocity, gust_.angular_rate);
        // zero-padded five-command moving averages
        double ma_a = 0.0, ma_e = 0.0, ma_t = 0.0;
        for (int i = 0; i < 5; ++i) {
            ma_a += commands_[i].aileron;
            ma_e += commands_[i].elevator;
            ma_t += commands_[i].throttle;
        }
        ma_a /= 5.0;
        ma_e /= 5.0;
        ma_t /= 5.0;
        return {air.airspeed,
                e.roll,
                e.pitch,
                state_.angular_rate.x,
                state_.angular_rate.y,
                state_.angular_rate.z,
                wrap_pi(e.roll - targets_.roll),
                wrap_pi(e.pitch - targets_.pitch),
                air.airspeed - targets_.airspeed,
                ma_a,
                ma_e,
                ma_t};
    }

    void push_observation_row() {
        std::array<double, kObsComponents> row = observation_row();
        for (int c = 0; c < kObsComponents; ++c) {
            for (int k = 0; k < kObsHistory - 1; ++k)
                history_[obs_index(c, k)] = history_[obs_index(c, k + 1)];
            history_[obs_index(c, kObsHistory - 1)] = row[c];
        }
    }

    AirframeConfig airframe_;
    EpisodeSpec spec_;
    std::uint64_t seed_;
    std::uint64_t actor_index_;
    std::uint64_t episode_count_ = 0;

    SimState state_;
    TargetSetpoint targets_;
    ActuatorState actuators_;
    std::unique_ptr<WindSim> wind_;
    DrydenGusts::Sample gust_;
    std::array<ControlCommand, 6> commands_{};  // [0] newest
    std::vector<double> history_;
    int step_count_ = 0;
    bool finished_ = false;
    double dt_ = 0.01;
};

}  // namespace flightrl
