#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace lexmap {

// Seeded RNG with fixed sampling algorithms. std::shuffle and the std
// distributions are implementation-defined, so shuffling and gaussians are
// spelled out here to keep seeded outputs identical across toolchains.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n). Rejection-free modulo is biased for huge n;
    // all uses here have n far below 2^32 where the bias is negligible... use
    // rejection anyway, it costs nothing.
    std::size_t uniform_index(std::size_t n) {
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t draw;
        do {
            draw = gen_();
        } while (draw >= limit);
        return static_cast<std::size_t>(draw % n);
    }

    // Box-Muller, one value per call.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    // Fisher-Yates.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = uniform_index(i);
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace lexmap
