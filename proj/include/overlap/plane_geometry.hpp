#pragma once

// Exact planar geometry for affine instances: n points in general position
// realizing the 2-skeleton with straight edges and filled triangles.

#include "overlap/f2_complex.hpp"
#include "overlap/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace overlap {

struct RationalPoint {
    Rational x;
    Rational y;

    friend bool operator==(const RationalPoint& a, const RationalPoint& b)
    {
        return a.x == b.x && a.y == b.y;
    }
    /// Lexicographic on (x, y).
    friend bool operator<(const RationalPoint& a, const RationalPoint& b)
    {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
};

std::string to_string(const RationalPoint& p);

enum class Orientation { Clockwise = -1, Collinear = 0, CounterClockwise = 1 };

/// Sign of det(b - a, c - a).
Orientation orientation(const RationalPoint& a, const RationalPoint& b, const RationalPoint& c);

/// Closed containment: boundary points count as inside.
bool point_in_closed_triangle(const RationalPoint& q, const RationalPoint& a,
                              const RationalPoint& b, const RationalPoint& c);

/// Intersection of the closed segments [a, b] and [c, d].
bool segments_intersect(const RationalPoint& a, const RationalPoint& b, const RationalPoint& c,
                        const RationalPoint& d);

/// The crossing point of [a, b] and [c, d] when they cross at a single point
/// interior to both segments.
std::optional<RationalPoint> proper_crossing(const RationalPoint& a, const RationalPoint& b,
                                             const RationalPoint& c, const RationalPoint& d);

Rational squared_norm(const RationalPoint& p);

/// Squared distance from the origin to the closed segment [a, b].
Rational squared_distance_to_origin(const RationalPoint& a, const RationalPoint& b);

class DegenerateInstance : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// n >= 3 points with no two coincident and no three collinear, plus a vertex
/// distribution. Genericity is validated on construction.
class AffineInstance {
public:
    /// Throws DegenerateInstance when the points are not in general position
    /// and std::invalid_argument when the distribution size does not match.
    AffineInstance(std::vector<RationalPoint> points, VertexDistribution p);
    /// Uniform distribution.
    explicit AffineInstance(std::vector<RationalPoint> points);

    const Skeleton& skeleton() const noexcept { return skeleton_; }
    std::size_t size() const noexcept { return points_.size(); }
    const std::vector<RationalPoint>& points() const noexcept { return points_; }
    const RationalPoint& point(Vertex v) const { return points_.at(v); }
    const VertexDistribution& distribution() const noexcept { return p_; }

    AffineInstance with_distribution(VertexDistribution p) const;

private:
    std::vector<RationalPoint> points_;
    VertexDistribution p_;
    Skeleton skeleton_;
};

/// Closed containment of q in the image of triangle `t` of the instance.
bool point_in_closed_triangle(const RationalPoint& q, const AffineInstance& inst, std::size_t t);

/// Vertices plus all proper crossings of the placed segments, deduplicated and
/// sorted lexicographically.
std::vector<RationalPoint> candidate_points(const AffineInstance& inst);

struct DepthCertificate {
    RationalPoint point;
    Chain2 covering;     // triangles whose closed image contains `point`
    std::size_t count;   // |covering|
    Rational weighted;   // p(covering)
};

DepthCertificate depth_at(const RationalPoint& q, const AffineInstance& inst);

/// Maximum weighted depth over the candidate points; ties go to the larger
/// count, then to the lexicographically smallest point. Throws
/// DegenerateInstance only through instance construction.
DepthCertificate find_overlap_point(const AffineInstance& inst);

/// 2/9 - 3/n.
Rational uniform_overlap_constant(std::size_t n);
/// 1/13 - 3/(13(n-1)).
Rational weighted_overlap_constant(std::size_t n);

struct OverlapBoundCheck {
    Rational fraction;           // count / C(n,3)
    Rational uniform_constant;   // 2/9 - 3/n
    Rational weighted_constant;  // 1/13 - 3/(13(n-1))
    bool uniform_applicable;     // p is uniform
    bool uniform_holds;          // vacuous when not applicable
    bool weighted_holds;
    bool holds() const noexcept { return uniform_holds && weighted_holds; }
};

OverlapBoundCheck check_overlap_bounds(const DepthCertificate& cert, const AffineInstance& inst);

}  // namespace overlap
