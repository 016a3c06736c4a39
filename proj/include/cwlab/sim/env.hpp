#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "cwlab/core/rng.hpp"

namespace cwlab::sim {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct SimState {
    Vec values;
    int time_index = 0;
};

enum class ObsMode { state, pixels };

struct Observation {
    ObsMode mode = ObsMode::state;
    Vec state;                    // populated iff mode == state
    std::vector<uint8_t> pixels;  // populated iff mode == pixels, H*W*C row-major
    int height = 0, width = 0, channels = 0;

    bool operator==(const Observation& o) const {
        return mode == o.mode && state == o.state && pixels == o.pixels && height == o.height &&
               width == o.width && channels == o.channels;
    }
};

struct Action {
    Vec encoding;  // one-hot; size 0 allowed for action-free environments
    bool null_flag = false;

    static Action null(int dim) {
        Action a;
        a.encoding = Vec::Zero(dim);
        a.null_flag = true;
        return a;
    }
    static Action one_hot(int dim, int index) {
        Action a;
        a.encoding = Vec::Zero(dim);
        a.encoding[index] = 1.0;
        return a;
    }
    // Index of the hot entry, or -1 for null actions.
    int index() const;
};

struct InterventionSpec {
    int object_index = 0;
    int variable_index = 0;  // axis for physics (0:x 1:y 2:vx 3:vy), coordinate for pushing
    double magnitude = 0.0;
    int t0 = 0;
};

struct JacobianTemplate {
    Mat jacobian;   // J(s*) of the one-step map
    Mat a_gt;       // |J - I|, identity carry-over excluded
    SimState s_star;
    double dt = 0.0;
};

struct EnvConfig {
    std::string name = "physics-nbody";  // physics-nbody | pushing-grid | harmonic
    int num_objects = 3;
    ObsMode obs_mode = ObsMode::state;
    int image_size = 50;
    double dt = 0.01;  // 0.1 for harmonic
    double softening = 0.1;
    double arena_half = 5.0;
    int grid_size = 5;
    bool impulse_actions = false;  // physics only; default autonomous dynamics

    nlohmann::json to_json() const;
    static EnvConfig from_json(const nlohmann::json& j);
};

class Env {
public:
    explicit Env(EnvConfig cfg) : cfg_(std::move(cfg)) {}
    virtual ~Env() = default;

    const EnvConfig& config() const { return cfg_; }
    virtual int state_dim() const = 0;
    virtual int action_dim() const = 0;
    // Maps (object, variable) to a flat SimState coordinate; throws InputError
    // when out of range.
    virtual int coord_index(int object_index, int variable_index) const = 0;

    virtual SimState init_state(Rng& rng) const = 0;
    virtual SimState step_state(const SimState& s, const Action& a) const = 0;
    // Continuous-time RHS f(s) when the environment has one (physics,
    // harmonic). Returns false for discrete environments.
    virtual bool dynamics_rhs(const Vec& s, Vec& out) const {
        (void)s;
        (void)out;
        return false;
    }
    virtual void render_rgb(const SimState& s, std::vector<uint8_t>& rgb) const = 0;

    Observation observe(const SimState& s) const;
    std::pair<SimState, Observation> reset(uint64_t seed) const;
    std::pair<SimState, Observation> step(const SimState& s, const Action& a) const;

protected:
    EnvConfig cfg_;
};

std::unique_ptr<Env> make_env(const EnvConfig& cfg);

// do(s^(i,j)) := s^(i,j) + delta. Input state is untouched.
SimState apply_intervention(const Env& env, const SimState& s, const InterventionSpec& spec);

// Rolls the intervened branch forward under the same action sequence.
std::vector<std::pair<SimState, Observation>> resimulate_counterfactual(
    const Env& env, const SimState& prefix_state, const InterventionSpec& spec,
    const std::vector<Action>& actions, int horizon);

// Central finite differences of the one-step Euler map s + dt*f(s) at s_star.
JacobianTemplate jacobian_template(const Env& env, const SimState& s_star, double dt);

}  // namespace cwlab::sim
