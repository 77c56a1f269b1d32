#pragma once

// A triangulation X* of the unit disk B that is "dual" to an affine instance
// placed inside B/2, the intersection map between the two, and the folding
// construction built from it.

#include "overlap/f2_complex.hpp"
#include "overlap/plane_geometry.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace overlap {

using DualIndex = std::uint32_t;

struct DualTriangulation {
    std::vector<RationalPoint> vertices;
    std::vector<std::array<DualIndex, 2>> edges;              // ascending vertex pair
    std::vector<std::array<DualIndex, 3>> triangles;          // edge indices
    std::vector<std::array<DualIndex, 3>> triangle_vertices;  // counter-clockwise

    std::vector<bool> vertex_in_half_ball;     // |v*| <= 1/2
    std::vector<bool> edge_meets_half_ball;    // e* meets the closed disk of radius 1/2
    std::vector<bool> triangle_meets_half_ball;

    DualIndex anchor = 0;  // u*: lexicographically smallest vertex outside B/2
    Rational mesh;         // upper bound on edge lengths
    std::uint64_t seed = 0;
    Rational domain_area;  // area of the triangulated region
};

/// Similarity that maps the instance into the disk of radius 1/4 around the
/// origin; the identity when it already lies there.
AffineInstance scale_into_half_ball(const AffineInstance& inst);

/// Quadtree triangulation of a polygonal disk between B/2 and B, with leaves
/// of size at most mesh/2, refined until no leaf meets two segments sharing
/// an endpoint, and a cone template around every placed vertex. The grid
/// offset is drawn from `seed`. Requires every point inside B/2.
DualTriangulation build_triangulation(const AffineInstance& inst, const Rational& mesh,
                                      std::uint64_t seed);

struct PropertyWitness {
    std::array<std::size_t, 3> ids{};  // meaning depends on the property
    std::string description;
};

struct PropertyResult {
    bool passed = true;
    std::size_t violations = 0;
    std::vector<PropertyWitness> witnesses;  // first few violations
};

struct TilingReport {
    bool passed = true;
    std::string issue;
};

/// Exact check of the eight well-behavedness properties:
///  1. no f(v) on a dual edge, no dual vertex on a placed segment;
///  2. f(v) lies in a triangle t*_v containing no other f(u);
///  3. a segment with exactly one end in t* meets exactly one edge of t*;
///  4. a dual edge with exactly one end in f(t) meets exactly one edge of f(t);
///  5. a segment meeting t*_v contains v;
///  6. any other dual edge meets at most two edges of f(t);
///  7. a dual edge disjoint from t*_v meets at most one segment at v;
///  8. a segment meets at most two edges of any t*.
/// Witness ids: 1 (v, e*, 0) or (v*, e, 1); 2 (u, v, t*), with u = v when no
/// dual triangle contains f(v); 3 (e, t*, 0); 4 (e*, t, 0); 5 (v, e, t*);
/// 6 (e*, t, 0); 7 (v, e*, 0); 8 (e, t*, 0).
/// The certificate is valid when the tiling check and all eight pass.
struct WellBehavedCertificate {
    std::array<PropertyResult, 8> properties;
    TilingReport tiling;
    std::vector<std::optional<DualIndex>> containing_triangle;  // t*_v

    const PropertyResult& property(int k) const { return properties.at(k - 1); }
    bool valid() const noexcept;
    std::string summary() const;
};

TilingReport check_tiling(const DualTriangulation& dual);

WellBehavedCertificate validate_well_behaved(const AffineInstance& inst,
                                             const DualTriangulation& dual);

class RefinementExhausted : public std::runtime_error {
public:
    RefinementExhausted(const std::string& what, WellBehavedCertificate last);
    const WellBehavedCertificate& last_certificate() const noexcept { return last_; }

private:
    WellBehavedCertificate last_;
};

struct RefinementResult {
    DualTriangulation triangulation;
    WellBehavedCertificate certificate;
    std::size_t rounds;  // builds attempted, >= 1
};

inline constexpr std::size_t kMaxRefinementRounds = 12;

/// Halves the mesh (from `mesh_start`) and re-draws the grid offset until the
/// triangulation validates.
RefinementResult refine_until_valid(const AffineInstance& inst, std::uint64_t seed,
                                    const Rational& mesh_start = Rational(1, 4),
                                    std::size_t max_rounds = kMaxRefinementRounds);

struct IntersectionMap {
    std::vector<Chain2> i0;  // per dual vertex: triangles whose image contains it
    std::vector<Chain1> i1;  // per dual edge: segments it meets
    std::vector<Chain0> i2;  // per dual triangle: vertices whose image it contains
};

IntersectionMap intersection_map(const AffineInstance& inst, const DualTriangulation& dual);

struct DualityReport {
    std::vector<DualIndex> failing_edges;      // i(v*) + i(u*) != delta i(e*)
    std::vector<DualIndex> failing_triangles;  // i(e1*) + i(e2*) + i(e3*) != delta i(t*)
    bool holds() const noexcept { return failing_edges.empty() && failing_triangles.empty(); }
};

DualityReport check_duality(const AffineInstance& inst, const DualTriangulation& dual,
                            const IntersectionMap& i);

/// True when the sum of i(t*) over all dual triangles is the all-ones chain.
bool fundamental_class_check(const IntersectionMap& i, const DualTriangulation& dual);

class DualityViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct FoldingWeightReport {
    std::vector<Rational> intersection_vertex;  // p(i(v*))
    std::vector<Rational> h0;                   // p(H0(v*))
    std::vector<Rational> h1;                   // p(H1(e*))
    std::vector<Rational> a;                    // p(a) at e*, zero where H1 is forced to 0

    Rational max_intersection_vertex, max_h0, max_h1, max_a;
    bool h0_bound_holds = true;  // p(H0) <= 3(n-2)/(2n) p(i(v*)) <= 3/2 p(i(v*))
    bool h1_bound_holds = true;  // p(H1) <= p(a)
    /// Edges meeting B/2 whose ingredients satisfy the folding hypotheses with
    /// c = 1/13 - 3/(13(n-1)): p(i(v*)) <= c at both ends and
    /// p(i(e*)) <= c + 1/(n-1). At those, p(H1) <= p(a) <= 4c + 1/(n-1) is
    /// checked.
    std::size_t hypothesis_edges = 0;
    bool hypothesis_bound_holds = true;
};

struct FoldingAttempt {
    std::vector<Chain1> h0;  // per dual vertex
    std::vector<Chain0> h1;  // per dual edge
    std::vector<DualIndex> defects;  // t* where b = V
    FoldingWeightReport weights;
};

/// Path telescoping plus the expansion lemmas. Throws DualityViolation if a
/// coboundary identity the construction relies on fails, and std::logic_error
/// on an even defect count (which would contradict the fundamental class).
FoldingAttempt construct_folding_attempt(const AffineInstance& inst, const DualTriangulation& dual,
                                         const IntersectionMap& i, const VertexDistribution& p);

/// Header "V E T", then "idx x y" vertex lines, "idx v1 v2" edge lines and
/// "idx e1 e2 e3" triangle lines; rationals as "num/den".
void write_triangulation(std::ostream& out, const DualTriangulation& dual);

}  // namespace overlap
