#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace cwlab {

// Deterministic RNG used everywhere in the project. Distributions are
// hand-rolled on top of the raw 64-bit stream so results are identical
// across standard-library implementations.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(splitmix(seed)) {}

    // Derives an independent stream from a master seed and a list of tags,
    // e.g. Rng::derive(master, {kStreamEpisode, episode_index}). Parallel
    // and serial generation order then produce identical results.
    static Rng derive(uint64_t master, std::initializer_list<uint64_t> tags);

    uint64_t next_u64();

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform();
    // Uniform in [lo, hi).
    double uniform(double lo, double hi);
    // Uniform integer in [0, n).
    uint64_t uniform_int(uint64_t n);
    // Standard normal via Box-Muller (cached spare).
    double normal();
    double normal(double mu, double sigma) { return mu + sigma * normal(); }

    // Fisher-Yates shuffle of an index vector.
    std::vector<size_t> permutation(size_t n);
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = uniform_int(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    static uint64_t splitmix(uint64_t x);

    uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Stream tags for Rng::derive. Values are arbitrary but fixed.
enum StreamTag : uint64_t {
    kStreamEpisode = 1,
    kStreamInit = 2,
    kStreamBatch = 3,
    kStreamNoise = 4,
    kStreamBench = 5,
    kStreamScm = 6,
};

}  // namespace cwlab
