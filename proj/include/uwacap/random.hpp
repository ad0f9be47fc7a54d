// SPDX-License-Identifier: Apache-2.0
//
// uwacap - shallow-water acoustic channel modelling and vector-sensor
// capacity analysis toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef UWACAP_RANDOM_HPP
#define UWACAP_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace uwacap {

namespace detail {

// splitmix64 finalizer (Steele, Lea, Flood 2014)
inline std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t golden64 = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) noexcept {
    return mix64(h ^ (v + golden64 + (h << 6) + (h >> 2)));
}

} // namespace detail

// Deterministic random stream built on the splitmix64 generator.
//
// Substreams are keyed by (seed, trial, path), so Monte-Carlo estimates are
// bit-identical regardless of how trials are partitioned across workers, and
// a path keeps its draws when the path list is truncated or extended.
// Sequences do not depend on the standard library's distribution
// implementations, so results are reproducible across platforms.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) noexcept
        : state_(detail::mix64(seed + detail::golden64)) {}

    static RandomStream for_trial(std::uint64_t seed, std::uint64_t trial) noexcept {
        RandomStream s(seed);
        s.state_ = detail::hash_combine(s.state_, trial);
        return s;
    }

    static RandomStream for_trial_path(std::uint64_t seed, std::uint64_t trial,
                                       std::uint64_t path) noexcept {
        RandomStream s = for_trial(seed, trial);
        s.state_ = detail::hash_combine(s.state_, path);
        return s;
    }

    std::uint64_t next_u64() noexcept {
        state_ += detail::golden64;
        return detail::mix64(state_);
    }

    // uniform on [0, 1), 53-bit resolution
    double uniform() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform on (0, 1]; safe as a log() argument
    double uniform_open_closed() noexcept {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // standard normal via Box-Muller (one draw per call)
    double normal() noexcept {
        const double u1 = uniform_open_closed();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t state_;
};

} // namespace uwacap

#endif // UWACAP_RANDOM_HPP
