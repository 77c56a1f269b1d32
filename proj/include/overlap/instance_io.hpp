#pragma once

// Plain-text instance files:
//
//   version 1
//   n 4
//   seed 7              (optional)
//   point 0 -3/8 1/1
//   ...                 (one line per vertex, in order)
//   weight 0 1/4        (optional block, one line per vertex)
//
// Rationals are always written as "num/den" in lowest terms; parsing accepts
// bare integers too but is otherwise strict.

#include "overlap/plane_geometry.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace overlap {

class InstanceFormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct InstanceFile {
    std::vector<RationalPoint> points;
    std::optional<std::vector<Rational>> weights;
    std::optional<std::uint64_t> seed;

    /// Validates genericity and the distribution (DegenerateInstance or
    /// std::invalid_argument).
    AffineInstance to_instance() const;

    friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

std::string write_instance(const InstanceFile& file);
InstanceFile parse_instance(std::string_view text);

/// Throws InstanceFormatError when the file cannot be read or parsed.
InstanceFile read_instance_file(const std::string& path);

enum class WeightMode { Uniform, Random };

/// n points k/1024 with integer k in [-1024, 1024], redrawn one at a time
/// until the set is in general position. Random weights are integers in
/// [1, 100] normalised to sum 1.
InstanceFile generate_instance(std::size_t n, std::uint64_t seed, WeightMode mode);

/// Weights drawn as in generate_instance, from their own stream of `seed`.
std::vector<Rational> random_weights(std::size_t n, std::uint64_t seed);

}  // namespace overlap
