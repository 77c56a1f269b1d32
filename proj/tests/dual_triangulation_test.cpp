#include "overlap/dual_triangulation.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <sstream>

using namespace overlap;
using overlap::testing::pt;

namespace {

// The square of half-width 3/5 fanned from its center. Its boundary stays
// outside B/2 and its corners inside B, so it tiles legally.
DualTriangulation coarse_fan()
{
    DualTriangulation d;
    d.vertices = {pt(0, 0), pt(3, -3, 5), pt(3, 3, 5), pt(-3, 3, 5), pt(-3, -3, 5)};
    d.edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {2, 3}, {3, 4}, {1, 4}};
    d.triangle_vertices = {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1}};
    d.triangles = {{0, 4, 1}, {1, 5, 2}, {2, 6, 3}, {3, 7, 0}};
    d.vertex_in_half_ball = {true, false, false, false, false};
    d.edge_meets_half_ball.assign(8, true);
    d.triangle_meets_half_ball.assign(4, true);
    d.anchor = 1;
    d.mesh = 2;
    d.domain_area = Rational(36, 25);
    return d;
}

struct Pipeline {
    AffineInstance inst;
    RefinementResult refined;
    IntersectionMap i;
};

Pipeline run(std::size_t n, std::uint64_t seed)
{
    const AffineInstance inst = scale_into_half_ball(testing::random_instance(n, seed));
    RefinementResult r = refine_until_valid(inst, seed);
    IntersectionMap i = intersection_map(inst, r.triangulation);
    return {inst, std::move(r), std::move(i)};
}

}  // namespace

TEST_SUITE("dual_triangulation") {

TEST_CASE("scaling into the half ball")
{
    const AffineInstance small({pt(0, 0), pt(1, 0, 8), pt(0, 1, 8)});
    CHECK(scale_into_half_ball(small).points() == small.points());

    const auto square = testing::unit_square();
    const auto scaled = scale_into_half_ball(square);
    for (const auto& p : scaled.points()) {
        CHECK(abs(p.x) <= Rational(1, 4));
        CHECK(abs(p.y) <= Rational(1, 4));
        CHECK(squared_norm(p) <= Rational(1, 16));
    }
    CHECK(find_overlap_point(scaled).count == 4);

    const AffineInstance far({pt(100, 100), pt(103, 100), pt(100, 107)});
    const auto moved = scale_into_half_ball(far);
    for (const auto& p : moved.points()) CHECK(squared_norm(p) <= Rational(1, 16));
    const RationalPoint c{Rational(301, 3), Rational(307, 3)};
    const RationalPoint c2{(moved.point(0).x + moved.point(1).x + moved.point(2).x) / 3,
                           (moved.point(0).y + moved.point(1).y + moved.point(2).y) / 3};
    CHECK(depth_at(c, far).count == depth_at(c2, moved).count);
}

TEST_CASE("coarse triangulation is a legal tiling")
{
    const auto inst = scale_into_half_ball(testing::random_instance(5, 2));
    const DualTriangulation d = build_triangulation(inst, Rational(1, 2), 0);
    const TilingReport t = check_tiling(d);
    CHECK_MESSAGE(t.passed, t.issue);
    CHECK(d.triangles.size() == d.triangle_vertices.size());
    CHECK(squared_norm(d.vertices[d.anchor]) > Rational(1, 4));
    for (std::size_t e = 0; e < d.edges.size(); ++e) {
        const auto& a = d.vertices[d.edges[e][0]];
        const auto& b = d.vertices[d.edges[e][1]];
        const Rational dx = a.x - b.x, dy = a.y - b.y;
        REQUIRE(dx * dx + dy * dy <= d.mesh * d.mesh);
    }
    // Euler characteristic of a disk.
    CHECK(static_cast<long>(d.vertices.size()) - static_cast<long>(d.edges.size()) +
              static_cast<long>(d.triangles.size()) ==
          1);
}

TEST_CASE("seeds move the grid and fixed seeds repeat")
{
    const auto inst = scale_into_half_ball(testing::random_instance(4, 8));
    const auto a = build_triangulation(inst, Rational(1, 4), 1);
    const auto b = build_triangulation(inst, Rational(1, 4), 2);
    const auto c = build_triangulation(inst, Rational(1, 4), 1);
    CHECK(check_tiling(a).passed);
    CHECK(check_tiling(b).passed);
    CHECK(a.vertices != b.vertices);
    std::ostringstream sa, sc;
    write_triangulation(sa, a);
    write_triangulation(sc, c);
    CHECK(sa.str() == sc.str());
}

TEST_CASE("tiling check catches broken tables")
{
    DualTriangulation d = coarse_fan();
    CHECK(check_tiling(d).passed);

    DualTriangulation wrong_area = d;
    wrong_area.domain_area = 1;
    CHECK_FALSE(check_tiling(wrong_area).passed);

    DualTriangulation clockwise = d;
    std::swap(clockwise.triangle_vertices[0][1], clockwise.triangle_vertices[0][2]);
    CHECK_FALSE(check_tiling(clockwise).passed);

    DualTriangulation missing = d;
    missing.triangles.pop_back();
    missing.triangle_vertices.pop_back();
    CHECK_FALSE(check_tiling(missing).passed);
}

TEST_CASE("two points in one dual triangle break property 2")
{
    const AffineInstance inst({pt(2, 1, 10), pt(10, -7, 70), pt(-7, 6, 42)});
    const auto cert = validate_well_behaved(inst, coarse_fan());
    REQUIRE(cert.tiling.passed);
    CHECK_FALSE(cert.valid());
    const auto& p2 = cert.property(2);
    CHECK_FALSE(p2.passed);
    REQUIRE_FALSE(p2.witnesses.empty());
    const auto& w = p2.witnesses.front();
    CHECK(w.ids[2] == 0);
    CHECK(((w.ids[0] == 0 && w.ids[1] == 1) || (w.ids[0] == 1 && w.ids[1] == 0)));
    CHECK_FALSE(cert.containing_triangle[0].has_value());
    CHECK(cert.containing_triangle[2].has_value());
}

TEST_CASE("refined triangulations validate and satisfy duality")
{
    for (std::uint64_t seed : {3u, 4u, 5u}) {
        const Pipeline p = run(4 + seed % 3, seed);
        const auto& dual = p.refined.triangulation;
        const auto& cert = p.refined.certificate;
        CHECK_MESSAGE(cert.valid(), cert.summary());
        CHECK(p.refined.rounds >= 1);
        CHECK(p.refined.rounds <= kMaxRefinementRounds);

        const DualityReport d = check_duality(p.inst, dual, p.i);
        CHECK(d.holds());
        CHECK(fundamental_class_check(p.i, dual));

        const Skeleton& sk = p.inst.skeleton();
        for (Vertex v = 0; v < p.inst.size(); ++v) {
            const DualIndex t = *cert.containing_triangle[v];
            CHECK(p.i.i2[t] == Chain0::from_support(sk, {v}));
            const auto& es = dual.triangles[t];
            CHECK(p.i.i1[es[0]] + p.i.i1[es[1]] + p.i.i1[es[2]] == coboundary(p.i.i2[t]));
        }
        CHECK(p.i.i0[dual.anchor].is_zero());
    }
}

TEST_CASE("intersection map matches direct geometry")
{
    const Pipeline p = run(5, 13);
    const auto& dual = p.refined.triangulation;
    const Skeleton& sk = p.inst.skeleton();
    const auto& pts = p.inst.points();
    const std::size_t stride = std::max<std::size_t>(1, dual.vertices.size() / 400);
    for (std::size_t v = 0; v < dual.vertices.size(); v += stride) {
        CHECK(p.i.i0[v].count() == testing::brute_depth(dual.vertices[v], pts));
        if (squared_norm(dual.vertices[v]) > Rational(1, 16)) CHECK(p.i.i0[v].is_zero());
    }
    for (std::size_t e = 0; e < dual.edges.size(); e += stride) {
        const auto& a = dual.vertices[dual.edges[e][0]];
        const auto& b = dual.vertices[dual.edges[e][1]];
        for (std::size_t s = 0; s < sk.edge_count(); ++s) {
            const auto& [u, w] = sk.edge(s);
            CHECK(p.i.i1[e].test(s) == segments_intersect(a, b, pts[u], pts[w]));
        }
    }
    for (std::size_t t = 0; t < dual.triangles.size(); t += stride) {
        const auto& c = dual.triangle_vertices[t];
        for (Vertex v = 0; v < p.inst.size(); ++v)
            CHECK(p.i.i2[t].test(v) == point_in_closed_triangle(pts[v], dual.vertices[c[0]], dual.vertices[c[1]],
                                                                dual.vertices[c[2]]));
    }
}

TEST_CASE("minimal instance has the fundamental class")
{
    const AffineInstance inst = scale_into_half_ball(testing::unit_triangle());
    const auto r = refine_until_valid(inst, 0);
    const auto i = intersection_map(inst, r.triangulation);
    CHECK(fundamental_class_check(i, r.triangulation));
    CHECK(check_duality(inst, r.triangulation, i).holds());
}

TEST_CASE("a truncated triangulation loses the fundamental class")
{
    const Pipeline p = run(4, 21);
    DualTriangulation cut = p.refined.triangulation;
    IntersectionMap i = p.i;
    const DualIndex t = *p.refined.certificate.containing_triangle[0];
    cut.triangles.erase(cut.triangles.begin() + t);
    cut.triangle_vertices.erase(cut.triangle_vertices.begin() + t);
    i.i2.erase(i.i2.begin() + t);
    CHECK_FALSE(fundamental_class_check(i, cut));
    CHECK_FALSE(check_tiling(cut).passed);
}

TEST_CASE("folding attempt has an odd number of defects")
{
    for (std::uint64_t seed : {31u, 32u}) {
        const Pipeline p = run(5 + seed % 2, seed);
        const auto& dual = p.refined.triangulation;
        const FoldingAttempt f = construct_folding_attempt(p.inst, dual, p.i, p.inst.distribution());
        CHECK(f.defects.size() % 2 == 1);
        for (std::size_t e = 0; e < dual.edges.size(); ++e)
            if (!dual.edge_meets_half_ball[e]) CHECK(f.h1[e].is_zero());
        std::size_t defects = 0;
        for (std::size_t t = 0; t < dual.triangles.size(); ++t) {
            const auto& es = dual.triangles[t];
            const Chain0 b = p.i.i2[t] + f.h1[es[0]] + f.h1[es[1]] + f.h1[es[2]];
            if (b.is_zero()) continue;
            CHECK(b.count() == p.inst.size());
            ++defects;
        }
        CHECK(defects == f.defects.size());
        for (std::size_t v = 0; v < dual.vertices.size(); ++v) {
            if (dual.vertex_in_half_ball[v])
                CHECK(coboundary(f.h0[v]) == p.i.i0[v]);
            else
                CHECK(f.h0[v].is_zero());
        }
        CHECK(f.weights.h0_bound_holds);
        CHECK(f.weights.h1_bound_holds);
        CHECK(f.weights.hypothesis_bound_holds);
    }
}

TEST_CASE("a zero round budget reports exhaustion")
{
    const auto inst = scale_into_half_ball(testing::random_instance(4, 1));
    CHECK_THROWS_AS(refine_until_valid(inst, 0, Rational(1, 4), 0), RefinementExhausted);
}

TEST_CASE("triangulation export")
{
    const DualTriangulation d = coarse_fan();
    std::ostringstream out;
    write_triangulation(out, d);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "5 8 4");
    std::getline(in, line);
    CHECK(line == "0 0/1 0/1");
}

}
