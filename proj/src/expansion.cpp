#include "overlap/expansion.hpp"

#include <string>

namespace overlap {

VertexReduction reduce_vertex_cochain(const Chain0& u, const VertexDistribution& p)
{
    const Skeleton& sk = u.skeleton();
    const auto kernel = kernel_vertex_witness(u);
    if (kernel.is_kernel()) return {Chain0(sk), Rational(0), Rational(0)};

    const Rational inside = weight_of(u, p);
    const Rational outside = Rational(1) - inside;
    Chain0 u0 = inside <= outside ? u : u.complement();
    const Rational weight = inside <= outside ? inside : outside;
    return {std::move(u0), weight, weight_of(coboundary(u), p)};
}

EdgeReduction reduce_edge_cochain(const Chain1& f, const VertexDistribution& p)
{
    const Skeleton& sk = f.skeleton();
    const std::size_t n = sk.vertex_count();

    std::optional<EdgeReduction> best;
    for (Vertex v = 0; v < n; ++v) {
        Chain0 neighborhood(sk);
        for (Vertex u = 0; u < n; ++u)
            if (u != v && f.test(sk.edge_index(v, u))) neighborhood.set(u);
        Chain1 candidate = f + coboundary(neighborhood);
        Rational w = weight_of(candidate, p);
        if (!best || w < best->weight) best = EdgeReduction{std::move(candidate), v, std::move(w), 0};
    }
    best->boundary_weight = weight_of(coboundary(f), p);
    return std::move(*best);
}

UniformVertexReduction reduce_vertex_uniform(const Chain0& u)
{
    const Skeleton& sk = u.skeleton();
    const std::size_t n = sk.vertex_count();
    if (u.count() == n) return {Chain0(sk), 0, 0};

    Chain0 u0 = 2 * u.count() <= n ? u : u.complement();
    const std::size_t size = u0.count();
    const std::size_t boundary = coboundary(u).count();
    if (boundary != size * (n - size))
        throw std::logic_error("cut size " + std::to_string(boundary) + " != |U0|(n-|U0|)");
    return {std::move(u0), size, boundary};
}

OneThirdCheck verify_lemma_one_third(const Chain1& f, std::size_t max_n)
{
    const Skeleton& sk = f.skeleton();
    const std::size_t n = sk.vertex_count();
    if (n > max_n)
        throw TooLarge("exhaustive coset search limited to n <= " + std::to_string(max_n));

    std::optional<Chain1> best;
    std::size_t best_count = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        Chain0 cut(sk);
        for (Vertex v = 0; v < n; ++v)
            if ((mask >> v) & 1u) cut.set(v);
        Chain1 candidate = f + coboundary(cut);
        const std::size_t c = candidate.count();
        if (!best || c < best_count) {
            best = std::move(candidate);
            best_count = c;
        }
    }
    const std::size_t boundary = coboundary(f).count();
    Rational ratio(best_count);
    ratio /= Rational(boundary == 0 ? 1 : boundary);
    return {std::move(*best), boundary, ratio, best_count <= 3 * boundary};
}

Rational edge_reduction_factor(std::size_t n)
{
    return Rational(3 * (n - 2)) / Rational(2 * n);
}

}  // namespace overlap
