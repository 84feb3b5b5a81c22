#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nmoo {

/// A point in the decision space, one value per search dimension.
using SolutionVector = std::vector<double>;
/// Objective values of one solution. Every objective is minimized.
using ObjectiveVector = std::vector<double>;

using Rng = std::mt19937_64;

/// Raised when a caller violates a documented precondition.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Raised for invalid configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an operation is not defined for the given input (e.g. m != 2 hypervolume).
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool condition, std::string const& message)
{
    if (!condition) { throw ContractViolation(message); }
}

// splitmix64 finalizer
constexpr auto mix64(std::uint64_t x) -> std::uint64_t
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31U);
}

/// Derives an independent substream seed from a parent seed and a tuple of stream indices.
constexpr auto derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) -> std::uint64_t
{
    return mix64(mix64(mix64(seed) ^ a) ^ (b * 0xD6E8FEB86659FD93ULL));
}

/// FNV-1a, 64 bit. Stable across platforms and builds.
constexpr auto stable_hash(std::string_view text) -> std::uint64_t
{
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : text) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

} // namespace nmoo
