#pragma once

// Counter-based random streams. Every (seed, label...) pair names an
// independent substream whose i-th variate is a pure function of (key, i),
// so rounds can be generated in any order or in parallel and two runs can
// share all randomness except one stream.

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>

namespace dirtymac {

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace detail

class SubStream {
  public:
    SubStream(std::uint64_t seed, std::initializer_list<std::uint64_t> labels) {
        key_ = detail::mix64(seed);
        for (std::uint64_t l : labels) key_ = detail::mix64(key_ ^ detail::mix64(l));
    }

    std::uint64_t bits(std::uint64_t i) const {
        return detail::mix64(key_ + i * detail::kGolden);
    }

    // Uniform on [0, 1).
    double uniform01(std::uint64_t i) const {
        return static_cast<double>(bits(i) >> 11) * 0x1.0p-53;
    }

    // Uniform on the half-open cell [-q/2, q/2).
    double uniform_cell(std::uint64_t i, double q) const {
        return (uniform01(i) - 0.5) * q;
    }

    // Standard normal via Box-Muller; consumes counters 2i and 2i+1.
    double gaussian(std::uint64_t i) const {
        const double u1 =
            (static_cast<double>(bits(2 * i) >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        const double u2 = uniform01(2 * i + 1);
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    // Zero-mean Laplace with the given variance.
    double laplace(std::uint64_t i, double variance) const {
        const double b = std::sqrt(variance / 2.0);
        // strictly inside (-1/2, 1/2) so the inverse CDF stays finite
        const double u =
            (static_cast<double>(bits(i) >> 11) + 0.5) * 0x1.0p-53 - 0.5;
        return (u < 0.0 ? b : -b) * std::log1p(-2.0 * std::abs(u));
    }

  private:
    std::uint64_t key_;
};

}  // namespace dirtymac
