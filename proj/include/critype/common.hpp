#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace critype {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Thrown when an argument violates a documented precondition.
class invalid_input : public std::invalid_argument {
public:
    explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when a computation cannot produce a valid result (geometry that does
// not close, tolerance breakdown, evaluation point unusable).
class computation_error : public std::runtime_error {
public:
    explicit computation_error(const std::string& what) : std::runtime_error(what) {}
};

// Reduce an angle to [0, 2*pi).
inline double normalize_angle(double t) {
    double r = std::fmod(t, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;  // fmod can land exactly on 2*pi after the shift
    return r;
}

// Counterclockwise arc length from a to b, in [0, 2*pi).
inline double ccw_arc(double a, double b) {
    return normalize_angle(b - a);
}

// True when t lies on the closed counterclockwise arc from a to b.
inline bool on_closed_arc(double t, double a, double b) {
    return ccw_arc(a, t) <= ccw_arc(a, b);
}

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Neumaier variant of Kahan summation; accurate for long alternating sums.
class CompensatedSum {
    double sum_ = 0.0;
    double comp_ = 0.0;

public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }
};

// SplitMix64: tiny deterministic stream used to derive sampling offsets from a
// user seed. Reference constants from the public-domain generator.
class SplitMix64 {
    std::uint64_t state_;

public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // Uniform in [0, 1).
    double next_unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }
};

}  // namespace critype
