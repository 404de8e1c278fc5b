#pragma once

// Small deterministic RNG (splitmix64) so that seeds mean the same thing on
// every platform; std::mt19937 distributions are not bit-stable across
// standard libraries.

#include <cmath>
#include <cstdint>

#include <Eigen/Dense>

namespace pmesym {

struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // inclusive bounds
    int uniform_int(int lo, int hi) {
        return lo + int(next_u64() % std::uint64_t(hi - lo + 1));
    }

    double normal() {
        double u1 = uniform01();
        if (u1 < 1e-300) u1 = 1e-300;
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

    Eigen::VectorXd uniform_vector(int n, double lo, double hi) {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v(i) = uniform(lo, hi);
        return v;
    }

    // Product of Givens rotations over all coordinate planes: always in SO(d).
    Eigen::MatrixXd random_so(int d) {
        Eigen::MatrixXd r = Eigen::MatrixXd::Identity(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) {
                const double th = uniform(0.0, 6.283185307179586477);
                const double c = std::cos(th), s = std::sin(th);
                Eigen::MatrixXd g = Eigen::MatrixXd::Identity(d, d);
                g(i, i) = c; g(j, j) = c; g(i, j) = s; g(j, i) = -s;
                r = g * r;
            }
        return r;
    }
};

} // namespace pmesym
