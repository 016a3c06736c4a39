#include "cwlab/sim/env.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "cwlab/core/errors.hpp"

namespace cwlab::sim {

using nlohmann::json;

int Action::index() const {
    if (null_flag) return -1;
    for (int i = 0; i < encoding.size(); ++i)
        if (encoding[i] != 0.0) return i;
    return -1;
}

json EnvConfig::to_json() const {
    return json{{"name", name},
                {"num_objects", num_objects},
                {"obs_mode", obs_mode == ObsMode::state ? "state" : "pixels"},
                {"image_size", image_size},
                {"dt", dt},
                {"softening", softening},
                {"arena_half", arena_half},
                {"grid_size", grid_size},
                {"impulse_actions", impulse_actions}};
}

EnvConfig EnvConfig::from_json(const json& j) {
    EnvConfig c;
    c.name = j.value("name", c.name);
    if (c.name == "harmonic") c.dt = 0.1;
    c.num_objects = j.value("num_objects", c.name == "pushing-grid" ? 5 : 3);
    std::string mode = j.value("obs_mode", "state");
    if (mode == "state")
        c.obs_mode = ObsMode::state;
    else if (mode == "pixels")
        c.obs_mode = ObsMode::pixels;
    else
        throw ConfigError("unknown obs_mode '" + mode + "'");
    c.image_size = j.value("image_size", c.image_size);
    c.dt = j.value("dt", c.dt);
    c.softening = j.value("softening", c.softening);
    c.arena_half = j.value("arena_half", c.arena_half);
    c.grid_size = j.value("grid_size", c.grid_size);
    c.impulse_actions = j.value("impulse_actions", c.impulse_actions);
    return c;
}

Observation Env::observe(const SimState& s) const {
    Observation o;
    if (cfg_.obs_mode == ObsMode::state) {
        o.mode = ObsMode::state;
        o.state = s.values;
    } else {
        o.mode = ObsMode::pixels;
        o.height = o.width = cfg_.image_size;
        o.channels = 3;
        render_rgb(s, o.pixels);
    }
    return o;
}

std::pair<SimState, Observation> Env::reset(uint64_t seed) const {
    Rng rng = Rng::derive(seed, {kStreamInit});
    SimState s = init_state(rng);
    s.time_index = 0;
    return {s, observe(s)};
}

std::pair<SimState, Observation> Env::step(const SimState& s, const Action& a) const {
    if (!a.null_flag) {
        if (a.encoding.size() != action_dim())
            throw InputError("action dimension mismatch");
        int hot = 0;
        for (int i = 0; i < a.encoding.size(); ++i) {
            if (a.encoding[i] == 0.0) continue;
            if (a.encoding[i] != 1.0) throw InputError("action encoding must be one-hot");
            ++hot;
        }
        if (hot != 1) throw InputError("action encoding must have exactly one nonzero entry");
    }
    SimState next = step_state(s, a);
    next.time_index = s.time_index + 1;
    return {next, observe(next)};
}

SimState apply_intervention(const Env& env, const SimState& s, const InterventionSpec& spec) {
    int idx = env.coord_index(spec.object_index, spec.variable_index);
    SimState out = s;
    out.values[idx] += spec.magnitude;
    return out;
}

std::vector<std::pair<SimState, Observation>> resimulate_counterfactual(
    const Env& env, const SimState& prefix_state, const InterventionSpec& spec,
    const std::vector<Action>& actions, int horizon) {
    if (horizon < 1) throw InputError("resimulate_counterfactual: horizon must be >= 1");
    if (int(actions.size()) < horizon)
        throw InputError("resimulate_counterfactual: not enough actions for horizon");
    SimState cur = apply_intervention(env, prefix_state, spec);
    std::vector<std::pair<SimState, Observation>> out;
    out.reserve(size_t(horizon));
    for (int k = 0; k < horizon; ++k) {
        auto [next, obs] = env.step(cur, actions[size_t(k)]);
        out.emplace_back(next, obs);
        cur = next;
    }
    return out;
}

JacobianTemplate jacobian_template(const Env& env, const SimState& s_star, double dt) {
    if (dt <= 0.0) throw InputError("jacobian_template: dt must be positive");
    const int d = env.state_dim();
    Vec probe;
    if (!env.dynamics_rhs(s_star.values, probe))
        throw InputError("jacobian_template: environment has no continuous dynamics");
    if (!probe.allFinite()) throw NumericError("jacobian_template: non-finite dynamics at s_star");

    auto euler_map = [&](const Vec& s) {
        Vec f;
        env.dynamics_rhs(s, f);
        return Vec(s + dt * f);
    };

    // Scaled central differences, one coordinate at a time.
    const double h = 1e-5 * std::max(1.0, s_star.values.lpNorm<Eigen::Infinity>());
    Mat jac(d, d);
    for (int k = 0; k < d; ++k) {
        Vec sp = s_star.values, sm = s_star.values;
        sp[k] += h;
        sm[k] -= h;
        jac.col(k) = (euler_map(sp) - euler_map(sm)) / (2.0 * h);
    }
    if (!jac.allFinite()) throw NumericError("jacobian_template: non-finite Jacobian at s_star");

    JacobianTemplate out;
    out.jacobian = jac;
    out.a_gt = (jac - Mat::Identity(d, d)).cwiseAbs();
    out.s_star = s_star;
    out.dt = dt;
    return out;
}

}  // namespace cwlab::sim
