#include "overlap/dual_triangulation.hpp"

#include "exact_kernel.hpp"
#include "overlap/expansion.hpp"
#include "overlap/parallel.hpp"
#include "overlap/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace overlap {

namespace {

using detail::HomLine;
using detail::HomPoint;

constexpr std::uint64_t kOffsetModulus = 1000003;  // prime
constexpr int kMaxLevel = 48;
constexpr std::size_t kWitnessCap = 8;

Integer floor_of(const Rational& r)
{
    const Integer num = boost::multiprecision::numerator(r);
    const Integer den = boost::multiprecision::denominator(r);
    Integer q = num / den;
    if (num < 0 && q * den != num) q -= 1;
    return q;
}

double distance_to_segment(double px, double py, double ax, double ay, double bx, double by)
{
    const double dx = bx - ax, dy = by - ay;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((px - ax) * dx + (py - ay) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(px - (ax + t * dx), py - (ay + t * dy));
}

// ---------------------------------------------------------------------------
// Mesh construction

using Key = std::pair<std::int64_t, std::int64_t>;

struct SegmentShape {
    Vertex u, v;
    Rational min_x, max_x, min_y, max_y;
    Rational a, b, c;  // a x + b y + c vanishes on the supporting line
};

struct Block {
    Vertex v;
    int level;
    std::int64_t ci, cj;  // center cell at `level`
};

struct Leaf {
    int level;
    std::int64_t i, j;
};

class MeshBuilder {
public:
    MeshBuilder(const AffineInstance& inst, const Rational& mesh, std::uint64_t seed);
    DualTriangulation build();

private:
    const Rational& cell_size(int level);
    Rational cell_x(int level, std::int64_t i) { return ox_ + Rational(i) * cell_size(level); }
    Rational cell_y(int level, std::int64_t j) { return oy_ + Rational(j) * cell_size(level); }

    void place_blocks();
    void visit(int level, std::int64_t i, std::int64_t j, const std::vector<std::uint32_t>& parent);
    bool segment_meets_box(const SegmentShape& s, const Rational& x0, const Rational& x1,
                           const Rational& y0, const Rational& y1) const;

    std::vector<Key> loop(std::int64_t i0, std::int64_t j0, std::int64_t i1, std::int64_t j1) const;
    DualIndex vertex_for(const Key& key);
    DualIndex add_vertex(RationalPoint p);
    void add_triangle(DualIndex a, DualIndex b, DualIndex c);
    void emit_leaf(const Leaf& leaf);
    void emit_block(const Block& block);
    void finish(DualTriangulation& out);

    const AffineInstance& inst_;
    Rational mesh_;
    std::uint64_t seed_;
    Rational s0_, ox_, oy_;
    std::vector<Rational> sizes_;
    std::vector<SegmentShape> segments_;
    std::vector<Block> blocks_;
    std::vector<Leaf> leaves_;
    std::vector<std::uint8_t> star_count_;
    std::set<Key> top_cells_;

    int key_level_ = 0;
    std::map<std::int64_t, std::vector<std::int64_t>> vertical_;    // I -> sorted J
    std::map<std::int64_t, std::vector<std::int64_t>> horizontal_;  // J -> sorted I
    std::map<Key, DualIndex> index_of_key_;
    std::vector<std::optional<Key>> key_of_vertex_;
    std::vector<RationalPoint> vertices_;
    std::vector<std::array<DualIndex, 3>> triangles_;
};

MeshBuilder::MeshBuilder(const AffineInstance& inst, const Rational& mesh, std::uint64_t seed)
    : inst_(inst)
    , mesh_(mesh)
    , seed_(seed)
{
    if (mesh <= 0) throw std::invalid_argument("mesh size must be positive");
    for (const auto& p : inst.points())
        if (squared_norm(p) >= Rational(1, 4))
            throw std::invalid_argument("instance point outside the half ball: " + to_string(p));

    s0_ = std::min(mesh, Rational(1, 2)) / 2;
    std::mt19937_64 rng(mix_seed(seed, 0));
    ox_ = s0_ * Rational(static_cast<std::int64_t>(uniform_below(rng, kOffsetModulus - 1) + 1)) /
          Rational(static_cast<std::int64_t>(kOffsetModulus));
    oy_ = s0_ * Rational(static_cast<std::int64_t>(uniform_below(rng, kOffsetModulus - 1) + 1)) /
          Rational(static_cast<std::int64_t>(kOffsetModulus));
    sizes_.push_back(s0_);

    const Skeleton& sk = inst.skeleton();
    for (std::size_t e = 0; e < sk.edge_count(); ++e) {
        const auto& [u, v] = sk.edge(e);
        const RationalPoint& p = inst.point(u);
        const RationalPoint& q = inst.point(v);
        SegmentShape s{u, v, std::min(p.x, q.x), std::max(p.x, q.x), std::min(p.y, q.y),
                       std::max(p.y, q.y), q.y - p.y, p.x - q.x, 0};
        s.c = -(s.a * p.x + s.b * p.y);
        segments_.push_back(std::move(s));
    }
    star_count_.assign(inst.size(), 0);
}

const Rational& MeshBuilder::cell_size(int level)
{
    while (static_cast<int>(sizes_.size()) <= level) sizes_.push_back(sizes_.back() / 2);
    return sizes_[level];
}

// Every placed vertex gets a 3x3 block of cells around it, small against the
// distance to everything not incident to it, so that only its own segments
// enter the block.
void MeshBuilder::place_blocks()
{
    const std::size_t n = inst_.size();
    std::vector<double> xs(n), ys(n);
    for (Vertex v = 0; v < n; ++v) {
        xs[v] = to_double(inst_.point(v).x);
        ys[v] = to_double(inst_.point(v).y);
    }
    const double s0 = to_double(s0_);
    for (Vertex v = 0; v < n; ++v) {
        double feature = std::numeric_limits<double>::infinity();
        for (Vertex u = 0; u < n; ++u)
            if (u != v) feature = std::min(feature, std::hypot(xs[u] - xs[v], ys[u] - ys[v]));
        for (const auto& s : segments_) {
            if (s.u == v || s.v == v) continue;
            feature = std::min(feature,
                               distance_to_segment(xs[v], ys[v], xs[s.u], ys[s.u], xs[s.v], ys[s.v]));
        }
        int level = 2;
        while (level < kMaxLevel - 2 && std::ldexp(s0, -level) > feature / 8) ++level;
        blocks_.push_back({v, level, 0, 0});
    }

    auto locate = [&](Block& b) {
        const RationalPoint& p = inst_.point(b.v);
        const Rational& h = cell_size(b.level);
        b.ci = floor_of((p.x - ox_) / h).convert_to<std::int64_t>();
        b.cj = floor_of((p.y - oy_) / h).convert_to<std::int64_t>();
    };
    for (auto& b : blocks_) locate(b);

    // Blocks must be disjoint, including their boundaries.
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t a = 0; a < blocks_.size(); ++a) {
            for (std::size_t b = a + 1; b < blocks_.size(); ++b) {
                Block& p = blocks_[a];
                Block& q = blocks_[b];
                const bool overlap_x = cell_x(p.level, p.ci - 1) <= cell_x(q.level, q.ci + 2) &&
                                       cell_x(q.level, q.ci - 1) <= cell_x(p.level, p.ci + 2);
                const bool overlap_y = cell_y(p.level, p.cj - 1) <= cell_y(q.level, q.cj + 2) &&
                                       cell_y(q.level, q.cj - 1) <= cell_y(p.level, p.cj + 2);
                if (!(overlap_x && overlap_y)) continue;
                if (p.level >= kMaxLevel - 2 || q.level >= kMaxLevel - 2)
                    throw std::logic_error("vertex blocks cannot be separated");
                ++p.level;
                ++q.level;
                locate(p);
                locate(q);
                changed = true;
            }
        }
    }
}

bool MeshBuilder::segment_meets_box(const SegmentShape& s, const Rational& x0, const Rational& x1,
                                    const Rational& y0, const Rational& y1) const
{
    if (s.max_x < x0 || s.min_x > x1 || s.max_y < y0 || s.min_y > y1) return false;
    // Separating axis along the segment normal.
    int positive = 0, negative = 0;
    for (const Rational* x : {&x0, &x1}) {
        for (const Rational* y : {&y0, &y1}) {
            const int sg = (s.a * *x + s.b * *y + s.c).sign();
            positive += sg > 0;
            negative += sg < 0;
        }
    }
    return !(positive == 4 || negative == 4);
}

void MeshBuilder::visit(int level, std::int64_t i, std::int64_t j,
                        const std::vector<std::uint32_t>& parent)
{
    bool split = false;
    bool block_cell = false;
    for (const auto& b : blocks_) {
        if (level < b.level) {
            const std::int64_t scale = std::int64_t{1} << (b.level - level);
            const std::int64_t lo_i = i * scale, hi_i = (i + 1) * scale - 1;
            const std::int64_t lo_j = j * scale, hi_j = (j + 1) * scale - 1;
            if (lo_i <= b.ci + 1 && b.ci - 1 <= hi_i && lo_j <= b.cj + 1 && b.cj - 1 <= hi_j)
                split = true;
        } else if (level == b.level && std::abs(i - b.ci) <= 1 && std::abs(j - b.cj) <= 1) {
            block_cell = true;
        }
    }
    if (!split && block_cell) {
        leaves_.push_back({level, i, j});
        return;
    }

    const Rational x0 = cell_x(level, i), x1 = cell_x(level, i + 1);
    const Rational y0 = cell_y(level, j), y1 = cell_y(level, j + 1);
    std::vector<std::uint32_t> inside;
    for (std::uint32_t e : parent)
        if (segment_meets_box(segments_[e], x0, x1, y0, y1)) inside.push_back(e);

    if (!split) {
        std::fill(star_count_.begin(), star_count_.end(), 0);
        for (std::uint32_t e : inside) {
            if (++star_count_[segments_[e].u] >= 2 || ++star_count_[segments_[e].v] >= 2) {
                split = true;
                break;
            }
        }
    }
    if (!split) {
        leaves_.push_back({level, i, j});
        return;
    }
    if (level + 1 > kMaxLevel) throw std::logic_error("quadtree refinement does not terminate");
    for (std::int64_t dj = 0; dj < 2; ++dj)
        for (std::int64_t di = 0; di < 2; ++di) visit(level + 1, 2 * i + di, 2 * j + dj, inside);
}

std::vector<Key> MeshBuilder::loop(std::int64_t i0, std::int64_t j0, std::int64_t i1,
                                   std::int64_t j1) const
{
    auto between = [](const std::vector<std::int64_t>& line, std::int64_t lo, std::int64_t hi) {
        auto first = std::upper_bound(line.begin(), line.end(), lo);
        auto last = std::lower_bound(line.begin(), line.end(), hi);
        return std::vector<std::int64_t>(first, last);
    };
    std::vector<Key> out;
    out.push_back({i0, j0});
    if (auto it = horizontal_.find(j0); it != horizontal_.end())
        for (auto x : between(it->second, i0, i1)) out.push_back({x, j0});
    out.push_back({i1, j0});
    if (auto it = vertical_.find(i1); it != vertical_.end())
        for (auto y : between(it->second, j0, j1)) out.push_back({i1, y});
    out.push_back({i1, j1});
    if (auto it = horizontal_.find(j1); it != horizontal_.end()) {
        auto xs = between(it->second, i0, i1);
        for (auto x = xs.rbegin(); x != xs.rend(); ++x) out.push_back({*x, j1});
    }
    out.push_back({i0, j1});
    if (auto it = vertical_.find(i0); it != vertical_.end()) {
        auto ys = between(it->second, j0, j1);
        for (auto y = ys.rbegin(); y != ys.rend(); ++y) out.push_back({i0, *y});
    }
    return out;
}

DualIndex MeshBuilder::add_vertex(RationalPoint p)
{
    vertices_.push_back(std::move(p));
    key_of_vertex_.push_back(std::nullopt);
    return static_cast<DualIndex>(vertices_.size() - 1);
}

DualIndex MeshBuilder::vertex_for(const Key& key)
{
    auto it = index_of_key_.find(key);
    if (it != index_of_key_.end()) return it->second;
    const DualIndex idx = add_vertex({cell_x(key_level_, key.first), cell_y(key_level_, key.second)});
    key_of_vertex_[idx] = key;
    index_of_key_.emplace(key, idx);
    return idx;
}

void MeshBuilder::add_triangle(DualIndex a, DualIndex b, DualIndex c)
{
    triangles_.push_back({a, b, c});
}

void MeshBuilder::emit_leaf(const Leaf& leaf)
{
    const std::int64_t scale = std::int64_t{1} << (key_level_ - leaf.level);
    const std::int64_t i0 = leaf.i * scale, i1 = (leaf.i + 1) * scale;
    const std::int64_t j0 = leaf.j * scale, j1 = (leaf.j + 1) * scale;
    const std::vector<Key> ring = loop(i0, j0, i1, j1);
    std::vector<DualIndex> ids;
    for (const auto& k : ring) ids.push_back(vertex_for(k));
    if (ids.size() == 4) {
        add_triangle(ids[0], ids[1], ids[2]);
        add_triangle(ids[0], ids[2], ids[3]);
        return;
    }
    const DualIndex center = vertex_for({(i0 + i1) / 2, (j0 + j1) / 2});
    for (std::size_t k = 0; k < ids.size(); ++k)
        add_triangle(center, ids[k], ids[(k + 1) % ids.size()]);
}

// The block boundary ring Q is split into three wedges at Q_a, Q_b, Q_c.
// t*_v is the triangle on the points a', b', c' a quarter of the way from
// f(v) towards them. Wedge (s, e) with split point k is covered by a fan
// from s' over Q_s..Q_k, the triangle (s', Q_k, e') and a fan from e' over
// Q_k..Q_e.
void MeshBuilder::emit_block(const Block& block)
{
    const std::int64_t scale = std::int64_t{1} << (key_level_ - block.level);
    const std::vector<Key> ring =
        loop((block.ci - 1) * scale, (block.cj - 1) * scale, (block.ci + 2) * scale,
             (block.cj + 2) * scale);
    const std::size_t m = ring.size();
    const RationalPoint& f = inst_.point(block.v);
    std::vector<RationalPoint> q;
    for (const auto& k : ring) q.push_back({cell_x(key_level_, k.first), cell_y(key_level_, k.second)});
    auto inner = [&](std::size_t idx) {
        const RationalPoint& p = q[idx % m];
        return RationalPoint{f.x + (p.x - f.x) / 4, f.y + (p.y - f.y) / 4};
    };
    auto ccw = [](const RationalPoint& a, const RationalPoint& b, const RationalPoint& c) {
        return orientation(a, b, c) == Orientation::CounterClockwise;
    };

    const double fx = to_double(f.x), fy = to_double(f.y);
    std::vector<double> angle(m);
    for (std::size_t k = 0; k < m; ++k)
        angle[k] = std::atan2(to_double(q[k].y) - fy, to_double(q[k].x) - fx);
    constexpr double kTwoPi = 6.283185307179586;
    auto rel = [&](std::size_t from, std::size_t to) {
        double d = angle[to % m] - angle[from % m];
        while (d < 0) d += kTwoPi;
        while (d >= kTwoPi) d -= kTwoPi;
        return d;
    };

    struct Choice {
        double score;
        std::array<std::size_t, 4> split;  // a, b, c, a + m (unrolled)
        std::array<std::size_t, 3> mid;
    };
    std::vector<Choice> choices;
    for (std::size_t a = 0; a < m; ++a) {
        auto nearest = [&](std::size_t lo, std::size_t hi, double target) {
            std::size_t best = lo;
            for (std::size_t k = lo; k <= hi; ++k)
                if (std::abs(rel(a, k) - target) < std::abs(rel(a, best) - target)) best = k;
            return best;
        };
        const std::size_t b = nearest(a + 1, a + m - 2, kTwoPi / 3);
        const std::size_t c = nearest(b + 1, a + m - 1, 2 * kTwoPi / 3);
        Choice ch{0, {a, b, c, a + m}, {}};
        for (int w = 0; w < 3; ++w) {
            const std::size_t s = ch.split[w], e = ch.split[w + 1];
            const double span = (w == 2) ? kTwoPi - rel(a, s) : rel(s, e);
            ch.score = std::max(ch.score, span);
            std::size_t best = s;
            for (std::size_t k = s; k <= e; ++k) {
                const double off = (k == e) ? span : rel(s, k);
                const double best_off = (best == e) ? span : rel(s, best);
                if (std::abs(off - span / 2) < std::abs(best_off - span / 2)) best = k;
            }
            ch.mid[w] = best;
        }
        choices.push_back(ch);
    }
    std::stable_sort(choices.begin(), choices.end(),
                     [](const Choice& x, const Choice& y) { return x.score < y.score; });

    auto valid = [&](const Choice& ch) {
        const RationalPoint a1 = inner(ch.split[0]), b1 = inner(ch.split[1]), c1 = inner(ch.split[2]);
        if (!ccw(a1, b1, c1) || !ccw(a1, b1, f) || !ccw(b1, c1, f) || !ccw(c1, a1, f)) return false;
        for (int w = 0; w < 3; ++w) {
            const std::size_t s = ch.split[w], e = ch.split[w + 1], k = ch.mid[w];
            const RationalPoint sp = inner(s), ep = inner(e);
            for (std::size_t j = s; j < k; ++j)
                if (!ccw(sp, q[j % m], q[(j + 1) % m])) return false;
            for (std::size_t j = k; j < e; ++j)
                if (!ccw(ep, q[j % m], q[(j + 1) % m])) return false;
            if (!ccw(sp, q[k % m], ep)) return false;
            if (k > s && !ccw(sp, q[s % m], q[k % m])) return false;
            if (e > k && !ccw(ep, q[k % m], q[e % m])) return false;
        }
        return true;
    };

    const Choice* chosen = nullptr;
    for (const auto& ch : choices) {
        if (valid(ch)) {
            chosen = &ch;
            break;
        }
    }
    if (!chosen) throw std::logic_error("no valid cone template around vertex " + std::to_string(block.v));

    std::vector<DualIndex> ring_ids;
    for (const auto& k : ring) ring_ids.push_back(vertex_for(k));
    std::array<DualIndex, 3> apex;
    for (int w = 0; w < 3; ++w) apex[w] = add_vertex(inner(chosen->split[w]));
    add_triangle(apex[0], apex[1], apex[2]);
    for (int w = 0; w < 3; ++w) {
        const std::size_t s = chosen->split[w], e = chosen->split[w + 1], k = chosen->mid[w];
        const DualIndex sp = apex[w], ep = apex[(w + 1) % 3];
        for (std::size_t j = s; j < k; ++j) add_triangle(sp, ring_ids[j % m], ring_ids[(j + 1) % m]);
        add_triangle(sp, ring_ids[k % m], ep);
        for (std::size_t j = k; j < e; ++j) add_triangle(ep, ring_ids[j % m], ring_ids[(j + 1) % m]);
    }
}

void MeshBuilder::finish(DualTriangulation& out)
{
    out.vertices = vertices_;
    out.triangle_vertices = triangles_;
    out.mesh = mesh_;
    out.seed = seed_;
    out.domain_area = Rational(static_cast<std::int64_t>(top_cells_.size())) * s0_ * s0_;

    std::map<std::pair<DualIndex, DualIndex>, DualIndex> edge_index;
    out.triangles.reserve(triangles_.size());
    for (const auto& t : triangles_) {
        std::array<DualIndex, 3> es{};
        for (int k = 0; k < 3; ++k) {
            const DualIndex a = std::min(t[k], t[(k + 1) % 3]);
            const DualIndex b = std::max(t[k], t[(k + 1) % 3]);
            auto [it, fresh] = edge_index.emplace(std::make_pair(a, b), static_cast<DualIndex>(out.edges.size()));
            if (fresh) out.edges.push_back({a, b});
            es[k] = it->second;
        }
        out.triangles.push_back(es);
    }

    const Rational quarter(1, 4);
    out.vertex_in_half_ball.resize(out.vertices.size());
    for (std::size_t v = 0; v < out.vertices.size(); ++v)
        out.vertex_in_half_ball[v] = squared_norm(out.vertices[v]) <= quarter;
    out.edge_meets_half_ball.resize(out.edges.size());
    for (std::size_t e = 0; e < out.edges.size(); ++e) {
        const auto& [a, b] = out.edges[e];
        out.edge_meets_half_ball[e] =
            (out.vertex_in_half_ball[a] || out.vertex_in_half_ball[b]) ||
            squared_distance_to_origin(out.vertices[a], out.vertices[b]) <= quarter;
    }
    const RationalPoint origin{0, 0};
    out.triangle_meets_half_ball.resize(out.triangles.size());
    for (std::size_t t = 0; t < out.triangles.size(); ++t) {
        bool meets = false;
        for (DualIndex e : out.triangles[t]) meets = meets || out.edge_meets_half_ball[e];
        if (!meets) {
            const auto& [a, b, c] = out.triangle_vertices[t];
            meets = point_in_closed_triangle(origin, out.vertices[a], out.vertices[b], out.vertices[c]);
        }
        out.triangle_meets_half_ball[t] = meets;
    }

    std::optional<DualIndex> anchor;
    for (DualIndex v = 0; v < out.vertices.size(); ++v) {
        if (out.vertex_in_half_ball[v]) continue;
        if (!anchor || out.vertices[v] < out.vertices[*anchor]) anchor = v;
    }
    if (!anchor) throw std::logic_error("triangulation has no vertex outside the half ball");
    out.anchor = *anchor;

    // Edges with one coface must lie on the outline of the top-level cells.
    std::vector<int> cofaces(out.edges.size(), 0);
    for (const auto& t : out.triangles)
        for (DualIndex e : t) ++cofaces[e];
    const std::int64_t top = std::int64_t{1} << key_level_;
    auto floor_div = [](std::int64_t a, std::int64_t b) {
        return a / b - ((a % b != 0) && ((a < 0) != (b < 0)));
    };
    for (std::size_t e = 0; e < out.edges.size(); ++e) {
        if (cofaces[e] != 1) continue;
        const auto& ka = key_of_vertex_[out.edges[e][0]];
        const auto& kb = key_of_vertex_[out.edges[e][1]];
        bool on_outline = false;
        if (ka && kb) {
            if (ka->first == kb->first && ka->first % top == 0) {
                const std::int64_t ci = ka->first / top;
                const std::int64_t cj = floor_div(std::min(ka->second, kb->second), top);
                on_outline = top_cells_.count({ci - 1, cj}) + top_cells_.count({ci, cj}) == 1;
            } else if (ka->second == kb->second && ka->second % top == 0) {
                const std::int64_t cj = ka->second / top;
                const std::int64_t ci = floor_div(std::min(ka->first, kb->first), top);
                on_outline = top_cells_.count({ci, cj - 1}) + top_cells_.count({ci, cj}) == 1;
            }
        }
        if (!on_outline) throw std::logic_error("open edge inside the triangulated region");
    }
}

DualTriangulation MeshBuilder::build()
{
    place_blocks();

    // Top cells meeting the closed disk of radius 1/2 + 1/64.
    const Rational radius = Rational(1, 2) + Rational(1, 64);
    const Rational radius2 = radius * radius;
    const std::int64_t lo_i = floor_of((-radius - ox_) / s0_).convert_to<std::int64_t>();
    const std::int64_t hi_i = floor_of((radius - ox_) / s0_).convert_to<std::int64_t>();
    const std::int64_t lo_j = floor_of((-radius - oy_) / s0_).convert_to<std::int64_t>();
    const std::int64_t hi_j = floor_of((radius - oy_) / s0_).convert_to<std::int64_t>();
    std::vector<std::uint32_t> all_segments(segments_.size());
    for (std::uint32_t e = 0; e < segments_.size(); ++e) all_segments[e] = e;
    for (std::int64_t j = lo_j; j <= hi_j; ++j) {
        for (std::int64_t i = lo_i; i <= hi_i; ++i) {
            const Rational x0 = cell_x(0, i), x1 = cell_x(0, i + 1);
            const Rational y0 = cell_y(0, j), y1 = cell_y(0, j + 1);
            const Rational cx = std::clamp(Rational(0), x0, x1);
            const Rational cy = std::clamp(Rational(0), y0, y1);
            if (cx * cx + cy * cy > radius2) continue;
            top_cells_.insert({i, j});
            visit(0, i, j, all_segments);
        }
    }

    int deepest = 0;
    for (const auto& l : leaves_) deepest = std::max(deepest, l.level);
    key_level_ = deepest + 1;
    cell_size(key_level_);

    for (const auto& l : leaves_) {
        const std::int64_t scale = std::int64_t{1} << (key_level_ - l.level);
        for (std::int64_t di = 0; di < 2; ++di) {
            for (std::int64_t dj = 0; dj < 2; ++dj) {
                const std::int64_t x = (l.i + di) * scale, y = (l.j + dj) * scale;
                vertical_[x].push_back(y);
                horizontal_[y].push_back(x);
            }
        }
    }
    for (auto* lines : {&vertical_, &horizontal_}) {
        for (auto& [_, pts] : *lines) {
            std::sort(pts.begin(), pts.end());
            pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        }
    }

    for (const auto& l : leaves_) {
        bool in_block = false;
        for (const auto& b : blocks_)
            in_block = in_block || (l.level == b.level && std::abs(l.i - b.ci) <= 1 &&
                                    std::abs(l.j - b.cj) <= 1);
        if (!in_block) emit_leaf(l);
    }
    for (const auto& b : blocks_) emit_block(b);

    DualTriangulation out;
    finish(out);
    return out;
}

// ---------------------------------------------------------------------------
// Incidences between the placed complex and the dual triangulation

struct Incidence {
    std::size_t n = 0;  // placed vertices
    std::size_t m = 0;  // placed segments
    std::vector<std::int8_t> vertex_side;  // [v* m + e]: orientation(f(i), f(j), v*)
    std::vector<std::int8_t> edge_side;    // [e* n + v]: orientation(x*, y*, f(v))
    std::vector<std::vector<std::uint32_t>> edge_segments;  // per e*, ascending
    std::vector<Chain2> i0;
    std::vector<Chain1> i1;
    std::vector<Chain0> i2;
    std::vector<std::vector<DualIndex>> containing;  // per v: dual triangles containing f(v)

    int dual_side(const DualTriangulation& d, std::size_t t, int k, Vertex v) const
    {
        const DualIndex a = d.triangle_vertices[t][k];
        const DualIndex b = d.triangle_vertices[t][(k + 1) % 3];
        const int s = edge_side[d.triangles[t][k] * n + v];
        return a < b ? s : -s;
    }
};

Incidence compute_incidence(const AffineInstance& inst, const DualTriangulation& dual)
{
    const Skeleton& sk = inst.skeleton();
    Incidence inc;
    inc.n = inst.size();
    inc.m = sk.edge_count();
    const std::size_t nv = dual.vertices.size(), ne = dual.edges.size(), nt = dual.triangles.size();

    std::vector<HomPoint> placed;
    for (const auto& p : inst.points()) placed.push_back(detail::to_hom(p));
    std::vector<HomLine> segment_lines;
    for (std::size_t e = 0; e < inc.m; ++e) {
        const auto& [i, j] = sk.edge(e);
        segment_lines.push_back(detail::line_through(placed[i], placed[j]));
    }
    std::vector<HomPoint> dual_points(nv);
    parallel_chunks(nv, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t v = begin; v < end; ++v) dual_points[v] = detail::to_hom(dual.vertices[v]);
    });

    inc.vertex_side.resize(nv * inc.m);
    parallel_chunks(nv, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t v = begin; v < end; ++v)
            for (std::size_t e = 0; e < inc.m; ++e)
                inc.vertex_side[v * inc.m + e] =
                    static_cast<std::int8_t>(detail::side(segment_lines[e], dual_points[v]));
    });

    inc.edge_side.resize(ne * inc.n);
    inc.edge_segments.resize(ne);
    parallel_chunks(ne, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t e = begin; e < end; ++e) {
            const auto& [x, y] = dual.edges[e];
            const HomLine line = detail::line_through(dual_points[x], dual_points[y]);
            for (Vertex v = 0; v < inc.n; ++v)
                inc.edge_side[e * inc.n + v] = static_cast<std::int8_t>(detail::side(line, placed[v]));
            for (std::size_t s = 0; s < inc.m; ++s) {
                const int o1 = inc.vertex_side[x * inc.m + s];
                const int o2 = inc.vertex_side[y * inc.m + s];
                if (o1 * o2 > 0) continue;
                const auto& [i, j] = sk.edge(s);
                const int o3 = inc.edge_side[e * inc.n + i];
                const int o4 = inc.edge_side[e * inc.n + j];
                if (o3 * o4 > 0) continue;
                bool hit = o1 * o2 < 0 && o3 * o4 < 0;
                if (!hit)
                    hit = segments_intersect(dual.vertices[x], dual.vertices[y], inst.point(i),
                                             inst.point(j));
                if (hit) inc.edge_segments[e].push_back(static_cast<std::uint32_t>(s));
            }
        }
    });

    std::vector<int> triangle_orientation(sk.triangle_count());
    for (std::size_t t = 0; t < sk.triangle_count(); ++t) {
        const auto& [a, b, c] = sk.triangle(t);
        triangle_orientation[t] = static_cast<int>(orientation(inst.point(a), inst.point(b), inst.point(c)));
    }
    inc.i0.assign(nv, Chain2(sk));
    parallel_chunks(nv, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t v = begin; v < end; ++v) {
            const std::int8_t* s = &inc.vertex_side[v * inc.m];
            for (std::size_t t = 0; t < sk.triangle_count(); ++t) {
                const auto& [ab, ac, bc] = sk.triangle_edges(t);
                const int o = triangle_orientation[t];
                if (o * s[ab] < 0 || o * s[bc] < 0 || o * s[ac] > 0) continue;
                inc.i0[v].set(t);
            }
        }
    });

    inc.i1.assign(ne, Chain1(sk));
    for (std::size_t e = 0; e < ne; ++e)
        for (std::uint32_t s : inc.edge_segments[e]) inc.i1[e].set(s);

    inc.i2.assign(nt, Chain0(sk));
    inc.containing.assign(inc.n, {});
    for (std::size_t t = 0; t < nt; ++t) {
        for (Vertex v = 0; v < inc.n; ++v) {
            if (inc.dual_side(dual, t, 0, v) < 0 || inc.dual_side(dual, t, 1, v) < 0 ||
                inc.dual_side(dual, t, 2, v) < 0)
                continue;
            inc.i2[t].set(v);
            inc.containing[v].push_back(static_cast<DualIndex>(t));
        }
    }
    return inc;
}

void record(PropertyResult& r, std::array<std::size_t, 3> ids, std::string description)
{
    r.passed = false;
    ++r.violations;
    if (r.witnesses.size() < kWitnessCap) r.witnesses.push_back({ids, std::move(description)});
}

bool within_closed_box(const RationalPoint& a, const RationalPoint& b, const RationalPoint& q)
{
    return std::min(a.x, b.x) <= q.x && q.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= q.y &&
           q.y <= std::max(a.y, b.y);
}

bool segment_meets_triangle(const RationalPoint& p, const RationalPoint& q, const RationalPoint& a,
                            const RationalPoint& b, const RationalPoint& c)
{
    if (point_in_closed_triangle(p, a, b, c) || point_in_closed_triangle(q, a, b, c)) return true;
    return segments_intersect(p, q, a, b) || segments_intersect(p, q, b, c) ||
           segments_intersect(p, q, c, a);
}

std::string describe_edge(const Skeleton& sk, std::size_t e)
{
    const auto& [a, b] = sk.edge(e);
    return "{" + std::to_string(a) + "," + std::to_string(b) + "}";
}

std::string describe_triangle(const Skeleton& sk, std::size_t t)
{
    const auto& [a, b, c] = sk.triangle(t);
    return "{" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "}";
}

}  // namespace

AffineInstance scale_into_half_ball(const AffineInstance& inst)
{
    const Rational limit(1, 16);
    const auto& pts = inst.points();
    if (std::all_of(pts.begin(), pts.end(), [&](const RationalPoint& p) { return squared_norm(p) <= limit; }))
        return inst;
    Rational min_x = pts[0].x, max_x = pts[0].x, min_y = pts[0].y, max_y = pts[0].y;
    for (const auto& p : pts) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const Rational cx = (min_x + max_x) / 2, cy = (min_y + max_y) / 2;
    const Rational half = std::max(max_x - min_x, max_y - min_y) / 2;
    const Rational factor = Rational(1) / (6 * half);
    std::vector<RationalPoint> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back({(p.x - cx) * factor, (p.y - cy) * factor});
    return AffineInstance(std::move(out), inst.distribution());
}

DualTriangulation build_triangulation(const AffineInstance& inst, const Rational& mesh,
                                      std::uint64_t seed)
{
    MeshBuilder builder(inst, mesh, seed);
    return builder.build();
}

bool WellBehavedCertificate::valid() const noexcept
{
    if (!tiling.passed) return false;
    return std::all_of(properties.begin(), properties.end(),
                       [](const PropertyResult& r) { return r.passed; });
}

std::string WellBehavedCertificate::summary() const
{
    std::ostringstream out;
    out << "tiling " << (tiling.passed ? "ok" : "failed: " + tiling.issue);
    for (int k = 0; k < 8; ++k) {
        const auto& r = properties[k];
        out << "; property " << (k + 1) << ' ';
        if (r.passed) {
            out << "ok";
            continue;
        }
        out << r.violations << " violation" << (r.violations == 1 ? "" : "s");
        if (!r.witnesses.empty()) out << " (" << r.witnesses.front().description << ")";
    }
    return out.str();
}

TilingReport check_tiling(const DualTriangulation& dual)
{
    auto fail = [](std::string issue) { return TilingReport{false, std::move(issue)}; };
    if (dual.triangles.size() != dual.triangle_vertices.size())
        return fail("triangle tables differ in length");
    for (std::size_t v = 0; v < dual.vertices.size(); ++v)
        if (squared_norm(dual.vertices[v]) > 1) return fail("vertex " + std::to_string(v) + " outside B");

    std::vector<int> forward(dual.edges.size(), 0), backward(dual.edges.size(), 0);
    Rational area = 0;
    for (std::size_t t = 0; t < dual.triangles.size(); ++t) {
        const auto& tv = dual.triangle_vertices[t];
        const RationalPoint& a = dual.vertices[tv[0]];
        const RationalPoint& b = dual.vertices[tv[1]];
        const RationalPoint& c = dual.vertices[tv[2]];
        const Rational twice = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
        if (twice <= 0) return fail("triangle " + std::to_string(t) + " is not counter-clockwise");
        area += twice / 2;
        for (int k = 0; k < 3; ++k) {
            const DualIndex e = dual.triangles[t][k];
            if (e >= dual.edges.size()) return fail("triangle " + std::to_string(t) + " has a bad edge");
            const DualIndex p = tv[k], q = tv[(k + 1) % 3];
            const std::array<DualIndex, 2> expected{std::min(p, q), std::max(p, q)};
            if (dual.edges[e] != expected)
                return fail("triangle " + std::to_string(t) + " edge list does not match its corners");
            int& uses = p < q ? forward[e] : backward[e];
            if (++uses > 1) return fail("edge " + std::to_string(e) + " is used twice in one direction");
        }
    }
    const Rational quarter(1, 4);
    for (std::size_t e = 0; e < dual.edges.size(); ++e) {
        const int cofaces = forward[e] + backward[e];
        if (cofaces == 0) return fail("edge " + std::to_string(e) + " has no triangle");
        if (cofaces == 1 &&
            squared_distance_to_origin(dual.vertices[dual.edges[e][0]], dual.vertices[dual.edges[e][1]]) <=
                quarter)
            return fail("boundary edge " + std::to_string(e) + " meets B/2");
    }
    if (area != dual.domain_area)
        return fail("triangle areas sum to " + to_string(area) + ", expected " + to_string(dual.domain_area));
    return {};
}

WellBehavedCertificate validate_well_behaved(const AffineInstance& inst, const DualTriangulation& dual)
{
    WellBehavedCertificate cert;
    cert.tiling = check_tiling(dual);
    if (!cert.tiling.passed) {
        // Incidences are meaningless on a broken tiling; report only that.
        cert.containing_triangle.assign(inst.size(), std::nullopt);
        return cert;
    }
    const Skeleton& sk = inst.skeleton();
    const Incidence inc = compute_incidence(inst, dual);
    const std::size_t n = inst.size(), m = sk.edge_count();
    const std::size_t nv = dual.vertices.size(), ne = dual.edges.size(), nt = dual.triangles.size();
    auto& props = cert.properties;

    // 1
    for (std::size_t e = 0; e < ne; ++e) {
        const auto& [x, y] = dual.edges[e];
        for (Vertex v = 0; v < n; ++v) {
            if (inc.edge_side[e * n + v] != 0) continue;
            if (within_closed_box(dual.vertices[x], dual.vertices[y], inst.point(v)))
                record(props[0], {v, e, 0}, "f(" + std::to_string(v) + ") on dual edge " + std::to_string(e));
        }
    }
    for (std::size_t v = 0; v < nv; ++v) {
        for (std::size_t s = 0; s < m; ++s) {
            if (inc.vertex_side[v * m + s] != 0) continue;
            const auto& [i, j] = sk.edge(s);
            if (within_closed_box(inst.point(i), inst.point(j), dual.vertices[v]))
                record(props[0], {v, s, 1},
                       "dual vertex " + std::to_string(v) + " on f" + describe_edge(sk, s));
        }
    }

    // 2
    cert.containing_triangle.assign(n, std::nullopt);
    for (Vertex v = 0; v < n; ++v) {
        const auto& cands = inc.containing[v];
        if (cands.empty()) {
            record(props[1], {v, v, nt}, "f(" + std::to_string(v) + ") lies in no dual triangle");
            continue;
        }
        for (DualIndex t : cands) {
            if (inc.i2[t].count() == 1) {
                cert.containing_triangle[v] = t;
                break;
            }
        }
        if (!cert.containing_triangle[v]) {
            const DualIndex t = cands.front();
            Vertex other = v;
            for (std::size_t u : inc.i2[t].support())
                if (u != v) {
                    other = static_cast<Vertex>(u);
                    break;
                }
            record(props[1], {other, v, t},
                   "f(" + std::to_string(other) + ") and f(" + std::to_string(v) + ") share dual triangle " +
                       std::to_string(t));
        }
    }

    // 3
    for (std::size_t s = 0; s < m; ++s) {
        const auto& [i, j] = sk.edge(s);
        std::vector<DualIndex> touched = inc.containing[i];
        touched.insert(touched.end(), inc.containing[j].begin(), inc.containing[j].end());
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (DualIndex t : touched) {
            if (inc.i2[t].test(i) == inc.i2[t].test(j)) continue;
            int crossed = 0;
            for (DualIndex e : dual.triangles[t]) crossed += inc.i1[e].test(s);
            if (crossed != 1)
                record(props[2], {s, t, 0},
                       "f" + describe_edge(sk, s) + " leaves dual triangle " + std::to_string(t) + " through " +
                           std::to_string(crossed) + " edges");
        }
    }

    // 4 and 6
    for (std::size_t e = 0; e < ne; ++e) {
        const auto& [x, y] = dual.edges[e];
        const Chain2 half = inc.i0[x] + inc.i0[y];
        for (std::size_t t : half.support()) {
            int crossed = 0;
            for (std::size_t s : sk.triangle_edges(t)) crossed += inc.i1[e].test(s);
            if (crossed != 1)
                record(props[3], {e, t, 0},
                       "dual edge " + std::to_string(e) + " leaves f" + describe_triangle(sk, t) + " through " +
                           std::to_string(crossed) + " edges");
        }
        const auto& segs = inc.edge_segments[e];
        for (std::size_t p = 0; p < segs.size(); ++p) {
            for (std::size_t q = p + 1; q < segs.size(); ++q) {
                const auto& [a, b] = sk.edge(segs[p]);
                const auto& [c, d] = sk.edge(segs[q]);
                // Only pairs sharing their smaller corner, so each triangle is seen once.
                if (a != c) continue;
                const std::size_t third = sk.edge_index(b, d);
                if (!inc.i1[e].test(third)) continue;
                const std::size_t t = sk.triangle_index(a, b, d);
                if (half.test(t)) continue;
                record(props[5], {e, t, 0},
                       "dual edge " + std::to_string(e) + " meets all edges of f" + describe_triangle(sk, t));
            }
        }
    }

    // 5 and 7
    for (Vertex v = 0; v < n; ++v) {
        if (!cert.containing_triangle[v]) continue;
        const DualIndex tv = *cert.containing_triangle[v];
        Chain1 meeting(sk);
        for (DualIndex e : dual.triangles[tv])
            for (std::size_t s : inc.i1[e].support()) meeting.set(s);
        for (std::size_t u : inc.i2[tv].support())
            for (Vertex w = 0; w < n; ++w)
                if (w != u) meeting.set(sk.edge_index(static_cast<Vertex>(u), w));
        for (std::size_t s : meeting.support()) {
            const auto& [a, b] = sk.edge(s);
            if (a != v && b != v)
                record(props[4], {v, s, tv},
                       "f" + describe_edge(sk, s) + " meets t*_" + std::to_string(v));
        }

        const auto& corners = dual.triangle_vertices[tv];
        for (std::size_t e = 0; e < ne; ++e) {
            int at_v = 0;
            for (std::uint32_t s : inc.edge_segments[e]) {
                const auto& [a, b] = sk.edge(s);
                at_v += (a == v || b == v);
            }
            if (at_v < 2) continue;
            const auto& [x, y] = dual.edges[e];
            const bool shares = std::find(corners.begin(), corners.end(), x) != corners.end() ||
                                std::find(corners.begin(), corners.end(), y) != corners.end();
            if (shares) continue;
            if (segment_meets_triangle(dual.vertices[x], dual.vertices[y], dual.vertices[corners[0]],
                                       dual.vertices[corners[1]], dual.vertices[corners[2]]))
                continue;
            record(props[6], {v, e, 0},
                   "dual edge " + std::to_string(e) + " meets " + std::to_string(at_v) + " segments at " +
                       std::to_string(v));
        }
    }

    // 8
    for (std::size_t t = 0; t < nt; ++t) {
        const auto& es = dual.triangles[t];
        Chain1 all = inc.i1[es[0]];
        for (std::size_t s : all.support()) {
            if (inc.i1[es[1]].test(s) && inc.i1[es[2]].test(s))
                record(props[7], {s, t, 0},
                       "f" + describe_edge(sk, s) + " meets all edges of dual triangle " + std::to_string(t));
        }
    }
    return cert;
}

RefinementExhausted::RefinementExhausted(const std::string& what, WellBehavedCertificate last)
    : std::runtime_error(what)
    , last_(std::move(last))
{}

RefinementResult refine_until_valid(const AffineInstance& inst, std::uint64_t seed,
                                    const Rational& mesh_start, std::size_t max_rounds)
{
    Rational mesh = mesh_start;
    WellBehavedCertificate last;
    for (std::size_t round = 0; round < max_rounds; ++round) {
        DualTriangulation dual = build_triangulation(inst, mesh, mix_seed(seed, round + 1));
        WellBehavedCertificate cert = validate_well_behaved(inst, dual);
        if (cert.valid()) return {std::move(dual), std::move(cert), round + 1};
        last = std::move(cert);
        mesh /= 2;
    }
    throw RefinementExhausted("no well-behaved triangulation after " + std::to_string(max_rounds) +
                                  " rounds: " + last.summary(),
                              std::move(last));
}

IntersectionMap intersection_map(const AffineInstance& inst, const DualTriangulation& dual)
{
    Incidence inc = compute_incidence(inst, dual);
    return {std::move(inc.i0), std::move(inc.i1), std::move(inc.i2)};
}

DualityReport check_duality(const AffineInstance& inst, const DualTriangulation& dual,
                            const IntersectionMap& i)
{
    (void)inst;
    DualityReport report;
    for (std::size_t e = 0; e < dual.edges.size(); ++e) {
        const auto& [x, y] = dual.edges[e];
        if (!(i.i0[x] + i.i0[y] == coboundary(i.i1[e]))) report.failing_edges.push_back(static_cast<DualIndex>(e));
    }
    for (std::size_t t = 0; t < dual.triangles.size(); ++t) {
        const auto& es = dual.triangles[t];
        if (!(i.i1[es[0]] + i.i1[es[1]] + i.i1[es[2]] == coboundary(i.i2[t])))
            report.failing_triangles.push_back(static_cast<DualIndex>(t));
    }
    return report;
}

bool fundamental_class_check(const IntersectionMap& i, const DualTriangulation& dual)
{
    if (i.i2.empty() || i.i2.size() != dual.triangles.size()) return false;
    Chain0 total(i.i2.front().skeleton());
    for (const auto& c : i.i2) total += c;
    return total == Chain0::full(total.skeleton());
}

FoldingAttempt construct_folding_attempt(const AffineInstance& inst, const DualTriangulation& dual,
                                         const IntersectionMap& i, const VertexDistribution& p)
{
    const Skeleton& sk = inst.skeleton();
    const std::size_t n = inst.size();
    const std::size_t nv = dual.vertices.size(), ne = dual.edges.size(), nt = dual.triangles.size();
    if (p.size() != n) throw std::invalid_argument("distribution size does not match the instance");
    if (!i.i0[dual.anchor].is_zero()) throw DualityViolation("anchor vertex lies in a placed triangle");

    // Shortest paths to the anchor; the parent is the smallest-index
    // neighbour one step closer.
    std::vector<std::vector<std::pair<DualIndex, DualIndex>>> adjacent(nv);  // (neighbour, edge)
    for (std::size_t e = 0; e < ne; ++e) {
        const auto& [x, y] = dual.edges[e];
        adjacent[x].push_back({y, static_cast<DualIndex>(e)});
        adjacent[y].push_back({x, static_cast<DualIndex>(e)});
    }
    for (auto& a : adjacent) std::sort(a.begin(), a.end());
    constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dist(nv, kUnseen);
    std::vector<DualIndex> order;
    order.reserve(nv);
    dist[dual.anchor] = 0;
    order.push_back(dual.anchor);
    for (std::size_t head = 0; head < order.size(); ++head) {
        const DualIndex v = order[head];
        for (const auto& [w, e] : adjacent[v]) {
            if (dist[w] != kUnseen) continue;
            dist[w] = dist[v] + 1;
            order.push_back(w);
        }
    }
    if (order.size() != nv) throw DualityViolation("dual 1-skeleton is disconnected");

    // F(v*) = sum of i(e*) along the path; delta F(v*) = i(v*).
    std::vector<Chain1> path_sum(nv, Chain1(sk));
    for (std::size_t k = 1; k < order.size(); ++k) {
        const DualIndex v = order[k];
        for (const auto& [w, e] : adjacent[v]) {
            if (dist[w] + 1 != dist[v]) continue;
            path_sum[v] = path_sum[w] + i.i1[e];
            break;
        }
    }

    FoldingAttempt out;
    FoldingWeightReport& weights = out.weights;
    const Rational factor = edge_reduction_factor(n);
    const Rational three_halves(3, 2);
    out.h0.assign(nv, Chain1(sk));
    weights.intersection_vertex.resize(nv);
    weights.h0.resize(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        if (!(coboundary(path_sum[v]) == i.i0[v]))
            throw DualityViolation("telescoped path sum at dual vertex " + std::to_string(v) +
                                   " does not cobound its intersection set");
        weights.intersection_vertex[v] = weight_of(i.i0[v], p);
        if (dual.vertex_in_half_ball[v]) {
            EdgeReduction r = reduce_edge_cochain(path_sum[v], p);
            out.h0[v] = std::move(r.f0);
            weights.h0[v] = std::move(r.weight);
        }
        if (weights.h0[v] > factor * weights.intersection_vertex[v] ||
            weights.h0[v] > three_halves * weights.intersection_vertex[v])
            weights.h0_bound_holds = false;
        weights.max_intersection_vertex = std::max(weights.max_intersection_vertex, weights.intersection_vertex[v]);
        weights.max_h0 = std::max(weights.max_h0, weights.h0[v]);
    }

    const Rational c = weighted_overlap_constant(n);
    const Rational edge_allowance = c + Rational(1) / Rational(static_cast<std::int64_t>(n - 1));
    const Rational a_bound = 4 * c + Rational(1) / Rational(static_cast<std::int64_t>(n - 1));
    out.h1.assign(ne, Chain0(sk));
    weights.h1.resize(ne);
    weights.a.resize(ne);
    for (std::size_t e = 0; e < ne; ++e) {
        if (!dual.edge_meets_half_ball[e]) continue;
        const auto& [x, y] = dual.edges[e];
        const Chain1 a = i.i1[e] + out.h0[x] + out.h0[y];
        Chain0 cut(sk);
        try {
            cut = cut_decomposition(a);
        } catch (const NotACocycle& err) {
            throw DualityViolation("a is not a cocycle at dual edge " + std::to_string(e) + " (triangle " +
                                   std::to_string(err.witness_triangle()) + ")");
        }
        VertexReduction r = reduce_vertex_cochain(cut, p);
        out.h1[e] = std::move(r.u0);
        weights.h1[e] = std::move(r.weight);
        weights.a[e] = weight_of(a, p);
        if (weights.h1[e] > weights.a[e]) weights.h1_bound_holds = false;
        if (weights.intersection_vertex[x] <= c && weights.intersection_vertex[y] <= c &&
            weight_of(i.i1[e], p) <= edge_allowance) {
            ++weights.hypothesis_edges;
            if (weights.h1[e] > weights.a[e] || weights.a[e] > a_bound) weights.hypothesis_bound_holds = false;
        }
        weights.max_h1 = std::max(weights.max_h1, weights.h1[e]);
        weights.max_a = std::max(weights.max_a, weights.a[e]);
    }

    const Chain0 everything = Chain0::full(sk);
    for (std::size_t t = 0; t < nt; ++t) {
        const auto& es = dual.triangles[t];
        const Chain0 b = i.i2[t] + out.h1[es[0]] + out.h1[es[1]] + out.h1[es[2]];
        if (b.is_zero()) continue;
        if (!(b == everything))
            throw DualityViolation("b is neither empty nor V at dual triangle " + std::to_string(t));
        out.defects.push_back(static_cast<DualIndex>(t));
    }
    if (out.defects.size() % 2 == 0)
        throw std::logic_error("even number of folding defects (" + std::to_string(out.defects.size()) + ")");
    return out;
}

void write_triangulation(std::ostream& out, const DualTriangulation& dual)
{
    out << dual.vertices.size() << ' ' << dual.edges.size() << ' ' << dual.triangles.size() << '\n';
    for (std::size_t v = 0; v < dual.vertices.size(); ++v)
        out << v << ' ' << to_string(dual.vertices[v].x) << ' ' << to_string(dual.vertices[v].y) << '\n';
    for (std::size_t e = 0; e < dual.edges.size(); ++e)
        out << e << ' ' << dual.edges[e][0] << ' ' << dual.edges[e][1] << '\n';
    for (std::size_t t = 0; t < dual.triangles.size(); ++t)
        out << t << ' ' << dual.triangles[t][0] << ' ' << dual.triangles[t][1] << ' ' << dual.triangles[t][2]
            << '\n';
}

}  // namespace overlap
