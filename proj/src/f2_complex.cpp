#include "overlap/f2_complex.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>

namespace overlap {

namespace detail {

struct SkeletonTables {
    std::size_t n = 0;
    std::vector<std::array<Vertex, 2>> edges;
    std::vector<std::array<Vertex, 3>> triangles;
    std::vector<std::array<std::size_t, 3>> triangle_edges;
    std::vector<std::size_t> edge_lookup;         // n*n, symmetric
    std::vector<std::size_t> triangle_first;      // triangles whose smallest vertex is < a

    explicit SkeletonTables(std::size_t count)
        : n(count)
        , edge_lookup(count * count, 0)
        , triangle_first(count + 1, 0)
    {
        for (Vertex a = 0; a < n; ++a) {
            for (Vertex b = a + 1; b < n; ++b) {
                edge_lookup[a * n + b] = edge_lookup[b * n + a] = edges.size();
                edges.push_back({a, b});
            }
        }
        for (Vertex a = 0; a < n; ++a) {
            triangle_first[a] = triangles.size();
            for (Vertex b = a + 1; b < n; ++b) {
                for (Vertex c = b + 1; c < n; ++c) {
                    triangles.push_back({a, b, c});
                    triangle_edges.push_back(
                        {edge_lookup[a * n + b], edge_lookup[a * n + c], edge_lookup[b * n + c]});
                }
            }
        }
        triangle_first[n] = triangles.size();
    }
};

}  // namespace detail

namespace {

std::shared_ptr<const detail::SkeletonTables> tables_for(std::size_t n)
{
    static std::mutex mutex;
    static std::map<std::size_t, std::shared_ptr<const detail::SkeletonTables>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_shared<const detail::SkeletonTables>(n);
    return slot;
}

}  // namespace

Skeleton::Skeleton(std::size_t n)
{
    if (n < 3) throw std::invalid_argument("a 2-skeleton needs at least 3 vertices");
    tables_ = tables_for(n);
}

std::size_t Skeleton::vertex_count() const noexcept { return tables_->n; }
std::size_t Skeleton::edge_count() const noexcept { return tables_->edges.size(); }
std::size_t Skeleton::triangle_count() const noexcept { return tables_->triangles.size(); }

std::size_t Skeleton::edge_index(Vertex a, Vertex b) const
{
    const std::size_t n = tables_->n;
    if (a >= n || b >= n || a == b) throw std::out_of_range("not an edge of the skeleton");
    return tables_->edge_lookup[a * n + b];
}

std::size_t Skeleton::triangle_index(Vertex a, Vertex b, Vertex c) const
{
    const std::size_t n = tables_->n;
    std::array<Vertex, 3> t{a, b, c};
    std::sort(t.begin(), t.end());
    if (t[2] >= n || t[0] == t[1] || t[1] == t[2])
        throw std::out_of_range("not a triangle of the skeleton");
    // Within the block of triangles starting at t[0], pairs (t[1], t[2]) are
    // enumerated lexicographically over the vertices above t[0].
    const std::size_t lo = t[0] + 1;
    const std::size_t m = n - lo;  // vertices above t[0]
    const std::size_t second = t[1] - lo;
    const std::size_t third = t[2] - lo;
    const std::size_t pair = second * (2 * m - second - 1) / 2 + (third - second - 1);
    return tables_->triangle_first[t[0]] + pair;
}

const std::array<Vertex, 2>& Skeleton::edge(std::size_t index) const
{
    return tables_->edges.at(index);
}

const std::array<Vertex, 3>& Skeleton::triangle(std::size_t index) const
{
    return tables_->triangles.at(index);
}

const std::array<std::size_t, 3>& Skeleton::triangle_edges(std::size_t index) const
{
    return tables_->triangle_edges.at(index);
}

std::size_t Skeleton::cell_count(int dim) const
{
    switch (dim) {
    case 0: return vertex_count();
    case 1: return edge_count();
    case 2: return triangle_count();
    default: throw std::invalid_argument("cell dimension must be 0, 1 or 2");
    }
}

Chain1 coboundary(const Chain0& vertices)
{
    const Skeleton& sk = vertices.skeleton();
    Chain1 out(sk);
    for (std::size_t e = 0; e < sk.edge_count(); ++e) {
        const auto& [a, b] = sk.edge(e);
        if (vertices.test(a) != vertices.test(b)) out.set(e);
    }
#ifdef OVERLAP_FAULT_INJECT_COBOUNDARY
    out.flip(out.size() - 1);
#endif
    return out;
}

Chain2 coboundary(const Chain1& edges)
{
    const Skeleton& sk = edges.skeleton();
    Chain2 out(sk);
    for (std::size_t t = 0; t < sk.triangle_count(); ++t) {
        const auto& [ab, ac, bc] = sk.triangle_edges(t);
        if (edges.test(ab) ^ edges.test(ac) ^ edges.test(bc)) out.set(t);
    }
    return out;
}

KernelWitness kernel_vertex_witness(const Chain0& vertices)
{
    if (vertices.is_zero()) return {KernelClass::Empty, std::nullopt};
    if (vertices.count() == vertices.size()) return {KernelClass::Full, std::nullopt};
    return {KernelClass::NotKernel, coboundary(vertices).first()};
}

NotACocycle::NotACocycle(std::size_t witness_triangle)
    : std::domain_error("edge chain is not a cocycle; witness triangle " +
                        std::to_string(witness_triangle))
    , witness_triangle_(witness_triangle)
{}

Chain0 cut_decomposition(const Chain1& edges)
{
    const Skeleton& sk = edges.skeleton();
    if (const auto witness = coboundary(edges).first()) throw NotACocycle(*witness);

    Chain0 out(sk);
    if (edges.is_zero()) return out;

    const std::size_t n = sk.vertex_count();
    std::vector<std::vector<Vertex>> adjacency(n);
    for (std::size_t e : edges.support()) {
        const auto& [a, b] = sk.edge(e);
        adjacency[a].push_back(b);
        adjacency[b].push_back(a);
    }
    Vertex start = 0;
    while (adjacency[start].empty()) ++start;

    // A cocycle has no isolated vertices and is complete bipartite, so one
    // traversal from `start` colors everything.
    std::vector<int> color(n, -1);
    std::vector<Vertex> stack{start};
    color[start] = 0;
    while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        for (Vertex u : adjacency[v]) {
            if (color[u] < 0) {
                color[u] = 1 - color[v];
                stack.push_back(u);
            }
        }
    }
    for (Vertex v = 0; v < n; ++v)
        if (color[v] == 0) out.set(v);
    return out;
}

VertexDistribution::VertexDistribution(std::vector<Rational> weights)
    : weights_(std::move(weights))
{
    Rational total = 0;
    for (const auto& w : weights_) {
        if (w < 0) throw std::invalid_argument("negative vertex weight");
        total += w;
    }
    if (total != 1) throw std::invalid_argument("vertex weights must sum to 1, got " + to_string(total));
}

VertexDistribution VertexDistribution::uniform(std::size_t n)
{
    if (n == 0) throw std::invalid_argument("empty vertex set");
    return VertexDistribution(std::vector<Rational>(n, make_rational(1, static_cast<std::int64_t>(n))));
}

bool VertexDistribution::is_uniform() const
{
    return std::all_of(weights_.begin(), weights_.end(),
                       [&](const Rational& w) { return w == weights_.front(); });
}

Rational VertexDistribution::edge_weight(Vertex a, Vertex b) const
{
    return (weights_.at(a) + weights_.at(b)) / Rational(weights_.size() - 1);
}

Rational VertexDistribution::triangle_weight(Vertex a, Vertex b, Vertex c) const
{
    return (weights_.at(a) + weights_.at(b) + weights_.at(c)) /
           Rational(choose(weights_.size() - 1, 2));
}

std::size_t choose(std::size_t n, std::size_t k)
{
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

namespace {

void check_sizes(const Skeleton& sk, const VertexDistribution& p)
{
    if (sk.vertex_count() != p.size())
        throw std::invalid_argument("chain and distribution have different vertex counts");
}

// Sum over cells of the cell weight equals sum_v p(v) * (cells containing v)
// divided by the common denominator of that dimension.
template <typename Cells>
Rational incidence_weight(const Skeleton& sk, const VertexDistribution& p, const Cells& cells_of,
                          std::size_t denominator, const std::vector<std::size_t>& support)
{
    std::vector<std::size_t> degree(sk.vertex_count(), 0);
    for (std::size_t c : support)
        for (Vertex v : cells_of(c)) ++degree[v];
    Rational total = 0;
    for (Vertex v = 0; v < degree.size(); ++v)
        if (degree[v] != 0) total += p[v] * Rational(degree[v]);
    return total / Rational(denominator);
}

}  // namespace

Rational weight_of(const Chain0& chain, const VertexDistribution& p)
{
    check_sizes(chain.skeleton(), p);
    Rational total = 0;
    for (std::size_t v : chain.support()) total += p[static_cast<Vertex>(v)];
    return total;
}

Rational weight_of(const Chain1& chain, const VertexDistribution& p)
{
    const Skeleton& sk = chain.skeleton();
    check_sizes(sk, p);
    return incidence_weight(
        sk, p, [&](std::size_t e) { return sk.edge(e); }, sk.vertex_count() - 1, chain.support());
}

Rational weight_of(const Chain2& chain, const VertexDistribution& p)
{
    const Skeleton& sk = chain.skeleton();
    check_sizes(sk, p);
    return incidence_weight(
        sk, p, [&](std::size_t t) { return sk.triangle(t); }, choose(sk.vertex_count() - 1, 2),
        chain.support());
}

}  // namespace overlap
