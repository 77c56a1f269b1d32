#pragma once

// Batch depth evaluation over the candidate points of an instance.
//
// Each candidate gets the sign of orientation(p_i, p_j, q) against every
// placed segment {i < j}; closed containment in a triangle is then a lookup
// of three signs. When the instance scales onto an integer lattice with
// coordinates below 2^20, candidates are kept in homogeneous int128
// coordinates and every predicate is an exact integer determinant; otherwise
// the engine falls back to GMP rationals.

#include "overlap/plane_geometry.hpp"

#include <cstdint>
#include <vector>

namespace overlap::detail {

class DepthEngine {
public:
    explicit DepthEngine(const AffineInstance& inst);

    /// Vertices first (index v), then crossing pairs; crossings of three or
    /// more segments at one point appear once per pair.
    std::size_t candidate_count() const noexcept { return vertex_count_ + crossings_.size(); }
    RationalPoint candidate_point(std::size_t k) const;

    bool uses_lattice() const noexcept { return lattice_; }

    /// Closed depth at candidate k. `degree` (size n) receives, per vertex,
    /// the number of covering triangles containing it; `signs` is scratch.
    std::size_t evaluate(std::size_t k, std::vector<std::int8_t>& signs,
                         std::vector<std::uint32_t>* degree) const;

    /// Triangles whose closed image contains candidate k.
    Chain2 coverage(std::size_t k, std::vector<std::int8_t>& signs) const;

private:
    struct Crossing {
        std::uint32_t first;   // edge index
        std::uint32_t second;  // edge index
    };
    struct Homogeneous {
        __int128 x, y, w;  // w > 0
    };

    int input_orientation(Vertex a, Vertex b, Vertex c) const
    {
        return orient_[(a * n_ + b) * n_ + c];
    }
    Homogeneous lattice_candidate(std::size_t k) const;
    void fill_signs(std::size_t k, std::vector<std::int8_t>& signs) const;

    const AffineInstance& inst_;
    std::size_t n_;
    std::size_t vertex_count_;
    bool lattice_ = false;
    Integer scale_;                                // lattice = point * scale_
    std::vector<std::array<std::int64_t, 2>> lattice_points_;
    std::vector<std::int8_t> orient_;              // n^3 signs among input points
    std::vector<std::int8_t> triangle_orientation_;
    std::vector<Crossing> crossings_;
};

}  // namespace overlap::detail
