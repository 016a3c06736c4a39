#include <cmath>

#include "cwlab/core/errors.hpp"
#include "cwlab/sim/env.hpp"
#include "cwlab/sim/render.hpp"

namespace cwlab::sim {

// 2D gravitational n-body. G = 1, unit masses, softened pairwise attraction,
// explicit Euler with step cfg.dt, arena clamp with velocity reflection.
// State layout: [p0x p0y p1x p1y ... | v0x v0y v1x v1y ...].
class PhysicsEnv final : public Env {
public:
    explicit PhysicsEnv(EnvConfig cfg) : Env(std::move(cfg)) {}

    int state_dim() const override { return 4 * cfg_.num_objects; }
    int action_dim() const override { return cfg_.impulse_actions ? 4 * cfg_.num_objects : 0; }

    int coord_index(int obj, int var) const override {
        const int k = cfg_.num_objects;
        if (obj < 0 || obj >= k || var < 0 || var >= 4)
            throw InputError("physics intervention target out of range");
        return var < 2 ? 2 * obj + var : 2 * k + 2 * obj + (var - 2);
    }

    SimState init_state(Rng& rng) const override {
        const int k = cfg_.num_objects;
        SimState s;
        s.values = Vec::Zero(4 * k);
        for (int i = 0; i < k; ++i) {
            s.values[2 * i] = rng.uniform(-2.0, 2.0);
            s.values[2 * i + 1] = rng.uniform(-2.0, 2.0);
            s.values[2 * k + 2 * i] = rng.normal(0.0, 0.5);
            s.values[2 * k + 2 * i + 1] = rng.normal(0.0, 0.5);
        }
        return s;
    }

    bool dynamics_rhs(const Vec& s, Vec& out) const override {
        const int k = cfg_.num_objects;
        const double eps2 = cfg_.softening * cfg_.softening;
        out = Vec::Zero(4 * k);
        out.head(2 * k) = s.segment(2 * k, 2 * k);  // dp/dt = v
        for (int i = 0; i < k; ++i) {
            double ax = 0.0, ay = 0.0;
            for (int j = 0; j < k; ++j) {
                if (j == i) continue;
                double dx = s[2 * j] - s[2 * i];
                double dy = s[2 * j + 1] - s[2 * i + 1];
                double denom = std::pow(dx * dx + dy * dy + eps2, 1.5);
                ax += dx / denom;
                ay += dy / denom;
            }
            out[2 * k + 2 * i] = ax;
            out[2 * k + 2 * i + 1] = ay;
        }
        return true;
    }

    SimState step_state(const SimState& s, const Action& a) const override {
        const int k = cfg_.num_objects;
        Vec f;
        dynamics_rhs(s.values, f);
        SimState next;
        next.values = s.values + cfg_.dt * f;
        if (cfg_.impulse_actions && !a.null_flag) {
            // Impulse: one-hot over (object, {+x,+y,-x,-y}); kicks velocity.
            int idx = a.index();
            int obj = idx / 4, dir = idx % 4;
            double mag = dir < 2 ? 0.5 : -0.5;
            int axis = dir % 2;
            next.values[2 * k + 2 * obj + axis] += mag;
        }
        // Arena clamp with velocity reflection.
        const double lim = cfg_.arena_half;
        for (int i = 0; i < k; ++i) {
            for (int axis = 0; axis < 2; ++axis) {
                double& p = next.values[2 * i + axis];
                double& v = next.values[2 * k + 2 * i + axis];
                if (p > lim) {
                    p = lim;
                    v = -std::abs(v);
                } else if (p < -lim) {
                    p = -lim;
                    v = std::abs(v);
                }
            }
        }
        next.time_index = s.time_index;
        return next;
    }

    void render_rgb(const SimState& s, std::vector<uint8_t>& rgb) const override {
        const int n = cfg_.image_size;
        Canvas canvas(n, rgb);
        const int k = cfg_.num_objects;
        const double scale = n / (2.0 * cfg_.arena_half);
        const double radius = n / 14.0;
        for (int i = 0; i < k; ++i) {
            double px = (s.values[2 * i] + cfg_.arena_half) * scale;
            double py = (cfg_.arena_half - s.values[2 * i + 1]) * scale;
            canvas.fill_disc(px, py, radius, object_color(i));
        }
    }
};

std::unique_ptr<Env> make_physics_env(EnvConfig cfg) {
    return std::make_unique<PhysicsEnv>(std::move(cfg));
}

}  // namespace cwlab::sim
