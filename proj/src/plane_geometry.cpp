#include "overlap/plane_geometry.hpp"

#include "depth_engine.hpp"
#include "overlap/parallel.hpp"

#include <algorithm>

namespace overlap {

std::string to_string(const RationalPoint& p)
{
    return "(" + to_string(p.x) + ", " + to_string(p.y) + ")";
}

Orientation orientation(const RationalPoint& a, const RationalPoint& b, const RationalPoint& c)
{
    const Rational det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return static_cast<Orientation>(det.sign());
}

bool point_in_closed_triangle(const RationalPoint& q, const RationalPoint& a,
                              const RationalPoint& b, const RationalPoint& c)
{
    const int o = static_cast<int>(orientation(a, b, c));
    if (o == 0) throw DegenerateInstance("triangle with collinear corners");
    return o * static_cast<int>(orientation(a, b, q)) >= 0 &&
           o * static_cast<int>(orientation(b, c, q)) >= 0 &&
           o * static_cast<int>(orientation(c, a, q)) >= 0;
}

namespace {

// q collinear with [a, b]; true when it lies between them.
bool within_box(const RationalPoint& a, const RationalPoint& b, const RationalPoint& q)
{
    return std::min(a.x, b.x) <= q.x && q.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= q.y && q.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(const RationalPoint& a, const RationalPoint& b, const RationalPoint& c,
                        const RationalPoint& d)
{
    const int o1 = static_cast<int>(orientation(a, b, c));
    const int o2 = static_cast<int>(orientation(a, b, d));
    const int o3 = static_cast<int>(orientation(c, d, a));
    const int o4 = static_cast<int>(orientation(c, d, b));
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    if (o1 == 0 && within_box(a, b, c)) return true;
    if (o2 == 0 && within_box(a, b, d)) return true;
    if (o3 == 0 && within_box(c, d, a)) return true;
    if (o4 == 0 && within_box(c, d, b)) return true;
    return false;
}

std::optional<RationalPoint> proper_crossing(const RationalPoint& a, const RationalPoint& b,
                                             const RationalPoint& c, const RationalPoint& d)
{
    const int o1 = static_cast<int>(orientation(a, b, c));
    const int o2 = static_cast<int>(orientation(a, b, d));
    const int o3 = static_cast<int>(orientation(c, d, a));
    const int o4 = static_cast<int>(orientation(c, d, b));
    if (!(o1 * o2 < 0 && o3 * o4 < 0)) return std::nullopt;
    const Rational rx = b.x - a.x, ry = b.y - a.y;
    const Rational sx = d.x - c.x, sy = d.y - c.y;
    const Rational t = ((c.x - a.x) * sy - (c.y - a.y) * sx) / (rx * sy - ry * sx);
    return RationalPoint{a.x + t * rx, a.y + t * ry};
}

Rational squared_norm(const RationalPoint& p)
{
    return p.x * p.x + p.y * p.y;
}

Rational squared_distance_to_origin(const RationalPoint& a, const RationalPoint& b)
{
    const Rational dx = b.x - a.x, dy = b.y - a.y;
    const Rational len2 = dx * dx + dy * dy;
    if (len2 == 0) return squared_norm(a);
    Rational t = -(a.x * dx + a.y * dy) / len2;
    if (t < 0) t = 0;
    if (t > 1) t = 1;
    return squared_norm({a.x + t * dx, a.y + t * dy});
}

AffineInstance::AffineInstance(std::vector<RationalPoint> points, VertexDistribution p)
    : points_(std::move(points))
    , p_(std::move(p))
    , skeleton_(points_.size())
{
    if (p_.size() != points_.size())
        throw std::invalid_argument("distribution size does not match the number of points");
    const std::size_t n = points_.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (points_[i] == points_[j])
                throw DegenerateInstance("points " + std::to_string(i) + " and " +
                                         std::to_string(j) + " coincide");
            for (std::size_t k = j + 1; k < n; ++k) {
                if (orientation(points_[i], points_[j], points_[k]) == Orientation::Collinear)
                    throw DegenerateInstance("points " + std::to_string(i) + ", " +
                                             std::to_string(j) + ", " + std::to_string(k) +
                                             " are collinear");
            }
        }
    }
}

AffineInstance::AffineInstance(std::vector<RationalPoint> points)
    : AffineInstance(points, VertexDistribution::uniform(std::max<std::size_t>(points.size(), 1)))
{}

AffineInstance AffineInstance::with_distribution(VertexDistribution p) const
{
    return AffineInstance(points_, std::move(p));
}

bool point_in_closed_triangle(const RationalPoint& q, const AffineInstance& inst, std::size_t t)
{
    const auto& [a, b, c] = inst.skeleton().triangle(t);
    return point_in_closed_triangle(q, inst.point(a), inst.point(b), inst.point(c));
}

std::vector<RationalPoint> candidate_points(const AffineInstance& inst)
{
    const detail::DepthEngine engine(inst);
    std::vector<RationalPoint> out;
    out.reserve(engine.candidate_count());
    for (std::size_t k = 0; k < engine.candidate_count(); ++k) out.push_back(engine.candidate_point(k));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

DepthCertificate depth_at(const RationalPoint& q, const AffineInstance& inst)
{
    const Skeleton& sk = inst.skeleton();
    Chain2 covering(sk);
    for (std::size_t t = 0; t < sk.triangle_count(); ++t)
        if (point_in_closed_triangle(q, inst, t)) covering.set(t);
    const std::size_t count = covering.count();
    Rational weighted = weight_of(covering, inst.distribution());
    return {q, std::move(covering), count, std::move(weighted)};
}

namespace {

struct Scored {
    std::size_t index = 0;
    std::size_t count = 0;
    Rational weighted;  // only meaningful for non-uniform distributions
    std::optional<RationalPoint> point;
};

}  // namespace

DepthCertificate find_overlap_point(const AffineInstance& inst)
{
    const detail::DepthEngine engine(inst);
    const VertexDistribution& p = inst.distribution();
    const bool uniform = p.is_uniform();
    const std::size_t n = inst.size();

    // Order: weighted depth, then count, then lexicographically smaller point.
    auto better = [&](Scored& a, Scored& b) {
        if (!uniform && a.weighted != b.weighted) return a.weighted > b.weighted;
        if (a.count != b.count) return a.count > b.count;
        if (!a.point) a.point = engine.candidate_point(a.index);
        if (!b.point) b.point = engine.candidate_point(b.index);
        return *a.point < *b.point;
    };

    std::vector<std::optional<Scored>> chunk_best(worker_count());
    parallel_chunks(engine.candidate_count(), [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        std::vector<std::int8_t> signs;
        std::vector<std::uint32_t> degree;
        std::optional<Scored> best;
        for (std::size_t k = begin; k < end; ++k) {
            Scored s;
            s.index = k;
            s.count = engine.evaluate(k, signs, uniform ? nullptr : &degree);
            if (!uniform) {
                Rational total = 0;
                for (Vertex v = 0; v < n; ++v)
                    if (degree[v] != 0) total += p[v] * Rational(degree[v]);
                s.weighted = std::move(total);
            }
            if (!best || better(s, *best)) best = std::move(s);
        }
        chunk_best[chunk] = std::move(best);
    });

    std::optional<Scored> best;
    for (auto& candidate : chunk_best) {
        if (!candidate) continue;
        if (!best || better(*candidate, *best)) best = std::move(candidate);
    }
    if (!best) throw std::logic_error("instance without candidate points");
    if (!best->point) best->point = engine.candidate_point(best->index);

    DepthCertificate cert = depth_at(*best->point, inst);
    if (cert.count != best->count)
        throw std::logic_error("depth engine disagrees with direct containment at " +
                               to_string(*best->point));
    return cert;
}

Rational uniform_overlap_constant(std::size_t n)
{
    return Rational(2, 9) - Rational(3) / Rational(n);
}

Rational weighted_overlap_constant(std::size_t n)
{
    return Rational(1, 13) - Rational(3) / Rational(13 * (n - 1));
}

OverlapBoundCheck check_overlap_bounds(const DepthCertificate& cert, const AffineInstance& inst)
{
    const std::size_t n = inst.size();
    OverlapBoundCheck out;
    out.fraction = Rational(cert.count) / Rational(choose(n, 3));
    out.uniform_constant = uniform_overlap_constant(n);
    out.weighted_constant = weighted_overlap_constant(n);
    out.uniform_applicable = inst.distribution().is_uniform();
    out.uniform_holds = !out.uniform_applicable || out.fraction >= out.uniform_constant;
    out.weighted_holds = cert.weighted >= out.weighted_constant;
    return out;
}

}  // namespace overlap
