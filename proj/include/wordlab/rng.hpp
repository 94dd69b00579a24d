#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "wordlab/common.hpp"
#include "wordlab/pmf.hpp"

namespace wordlab {

// Deterministic RNG: mt19937_64 plus fixed bit-to-double mappings, so that
// identical seeds give byte-identical experiment outputs on every platform.
// (std::uniform_real_distribution et al. are implementation-defined and are
// deliberately not used.)
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    // Uniform on [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n), n >= 1, via rejection.
    std::uint64_t uniform_below(std::uint64_t n) {
        const std::uint64_t limit = n * (UINT64_MAX / n);
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

    // Standard normal via Box-Muller on the deterministic uniforms.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // Inverse-CDF sample from a finite pmf; returns the atom index.
    template <class T>
    std::size_t sample_index(const Pmf<T>& p) {
        const double u = uniform01() * p.total_mass();
        double acc = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            acc += p.mass(i);
            if (u < acc) return i;
        }
        return p.size() - 1;
    }

    template <class T>
    const T& sample(const Pmf<T>& p) {
        return p.atom(sample_index(p));
    }

    // Derive an independent child stream (for per-seed grid workers).
    Rng spawn(std::uint64_t salt) {
        return Rng(raw() ^ (0x9e3779b97f4a7c15ULL * (salt + 1)));
    }

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace wordlab
