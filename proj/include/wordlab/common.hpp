#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace wordlab {

// Exit-code contract of the CLI: 2 = bad configuration, 3 = range/capacity.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct RangeError : std::runtime_error {
    explicit RangeError(const std::string& msg) : std::runtime_error(msg) {}
};

struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

struct AlignmentError : std::runtime_error {
    explicit AlignmentError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool nearly_equal(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

// log(exp(a) + exp(b)) without overflow; tolerates -inf.
inline double log_add(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    const double m = a > b ? a : b;
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace wordlab
