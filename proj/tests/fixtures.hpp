#pragma once

#include "overlap/instance_io.hpp"
#include "overlap/plane_geometry.hpp"

#include <random>
#include <vector>

namespace overlap::testing {

inline RationalPoint pt(std::int64_t x, std::int64_t y, std::int64_t den = 1)
{
    return {make_rational(x, den), make_rational(y, den)};
}

inline AffineInstance unit_square()
{
    return AffineInstance({pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)});
}

// cos and sin of 2 pi k / 5 rounded to four decimals.
inline AffineInstance pentagon()
{
    return AffineInstance({pt(10000, 0, 10000), pt(3090, 9511, 10000), pt(-8090, 5878, 10000),
                           pt(-8090, -5878, 10000), pt(3090, -9511, 10000)});
}

inline AffineInstance unit_triangle()
{
    return AffineInstance({pt(0, 0), pt(1, 0), pt(0, 1)});
}

inline AffineInstance random_instance(std::size_t n, std::uint64_t seed, bool random_p = false)
{
    return generate_instance(n, seed, random_p ? WeightMode::Random : WeightMode::Uniform).to_instance();
}

// Brute force closed depth over every triangle, independent of the library's
// candidate machinery.
inline std::size_t brute_depth(const RationalPoint& q, const std::vector<RationalPoint>& pts)
{
    auto orient = [](const RationalPoint& a, const RationalPoint& b, const RationalPoint& c) {
        const Rational d = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
        return d > 0 ? 1 : (d < 0 ? -1 : 0);
    };
    std::size_t count = 0;
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b)
            for (std::size_t c = b + 1; c < pts.size(); ++c) {
                const int s1 = orient(pts[a], pts[b], q), s2 = orient(pts[b], pts[c], q),
                          s3 = orient(pts[c], pts[a], q);
                const bool neg = s1 < 0 || s2 < 0 || s3 < 0, pos = s1 > 0 || s2 > 0 || s3 > 0;
                if (!(neg && pos)) ++count;
            }
    return count;
}

inline VertexDistribution random_distribution(std::size_t n, std::mt19937_64& rng)
{
    std::vector<std::int64_t> raw(n);
    std::int64_t total = 0;
    for (auto& w : raw) {
        w = static_cast<std::int64_t>(rng() % 997) + 1;
        total += w;
    }
    std::vector<Rational> w;
    for (auto x : raw) w.push_back(make_rational(x, total));
    return VertexDistribution(std::move(w));
}

}  // namespace overlap::testing
