#include "overlap/expansion.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <random>

using namespace overlap;

namespace {

Chain1 random_edges(const Skeleton& sk, std::mt19937_64& rng)
{
    Chain1 f(sk);
    for (std::size_t e = 0; e < sk.edge_count(); ++e) f.set(e, rng() & 1u);
    return f;
}

// Minimum of |F + delta U| over every U, computed without the library's
// coset search.
std::size_t coset_minimum(const Chain1& f)
{
    const Skeleton& sk = f.skeleton();
    const std::size_t n = sk.vertex_count();
    std::size_t best = f.count();
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        std::size_t c = 0;
        for (std::size_t e = 0; e < sk.edge_count(); ++e) {
            const auto [a, b] = sk.edge(e);
            const bool cut = ((m >> a) & 1u) != ((m >> b) & 1u);
            c += f.test(e) != cut;
        }
        best = std::min(best, c);
    }
    return best;
}

}  // namespace

TEST_SUITE("expansion") {

TEST_CASE("vertex reduction examples")
{
    const Skeleton s4(4);
    const auto uniform = VertexDistribution::uniform(4);
    auto r = reduce_vertex_cochain(Chain0::from_support(s4, {0, 1, 2}), uniform);
    CHECK(r.u0 == Chain0::from_support(s4, {3}));
    CHECK(r.weight == Rational(1, 4));
    CHECK(r.boundary_weight == Rational(1, 2));

    r = reduce_vertex_cochain(Chain0::full(s4), uniform);
    CHECK(r.u0.is_zero());
    CHECK(r.weight == 0);
    CHECK(r.boundary_weight == 0);

    const VertexDistribution skew({Rational(1, 2), Rational(1, 6), Rational(1, 6), Rational(1, 6)});
    r = reduce_vertex_cochain(Chain0::from_support(s4, {0}), skew);
    CHECK(r.u0 == Chain0::from_support(s4, {0}));
    CHECK(r.weight == Rational(1, 2));
    CHECK(r.boundary_weight == Rational(2, 3));
}

TEST_CASE("edge reduction examples")
{
    const Skeleton s4(4);
    const auto p = VertexDistribution::uniform(4);
    const Chain1 star = coboundary(Chain0::from_support(s4, {0}));
    auto r = reduce_edge_cochain(star, p);
    CHECK(r.f0.is_zero());
    CHECK(r.chosen_vertex == 0);

    r = reduce_edge_cochain(Chain1(s4), p);
    CHECK(r.f0.is_zero());
    CHECK(r.weight == 0);
    CHECK(r.boundary_weight == 0);

    const Chain1 single = Chain1::from_support(s4, {s4.edge_index(0, 1)});
    r = reduce_edge_cochain(single, p);
    CHECK(r.f0 == single);
    CHECK(r.weight == Rational(1, 6));
    CHECK(r.boundary_weight == Rational(1, 2));
    CHECK(r.weight <= edge_reduction_factor(4) * r.boundary_weight);
    CHECK(edge_reduction_factor(4) == Rational(3, 4));
}

TEST_CASE("uniform vertex reduction")
{
    const Skeleton s6(6);
    const Chain0 u = Chain0::from_support(s6, {0, 1, 2, 3});
    auto r = reduce_vertex_uniform(u);
    CHECK(r.u0 == u.complement());
    CHECK(r.size == 2);
    CHECK(r.boundary_size == 8);

    r = reduce_vertex_uniform(Chain0(s6));
    CHECK(r.u0.is_zero());
    CHECK(r.boundary_size == 0);

    const Skeleton s5(5);
    const Chain0 pair = Chain0::from_support(s5, {1, 3});
    r = reduce_vertex_uniform(pair);
    CHECK(r.u0 == pair);
    CHECK(r.boundary_size == 6);
    CHECK(coboundary(pair).count() == 6);
}

TEST_CASE("one third checker examples")
{
    const Skeleton s5(5);
    auto r = verify_lemma_one_third(coboundary(Chain0::from_support(s5, {0, 4})));
    CHECK(r.f0.is_zero());
    CHECK(r.ratio == 0);
    CHECK(r.holds);

    const Skeleton s4(4);
    const Chain1 single = Chain1::from_support(s4, {0});
    r = verify_lemma_one_third(single);
    CHECK(r.boundary_size == 2);
    CHECK(r.f0 == single);
    CHECK(r.holds);

    CHECK_THROWS_AS(verify_lemma_one_third(Chain1(Skeleton(7))), TooLarge);
}

TEST_CASE("one third checker agrees with a brute force coset minimum")
{
    std::mt19937_64 rng(23);
    for (std::size_t n = 3; n <= 6; ++n) {
        const Skeleton sk(n);
        for (int trial = 0; trial < 60; ++trial) {
            const Chain1 f = random_edges(sk, rng);
            const auto r = verify_lemma_one_third(f);
            CHECK(r.f0.count() == coset_minimum(f));
            CHECK(coboundary(r.f0) == coboundary(f));
            CHECK(r.f0.count() <= 3 * r.boundary_size);
        }
    }
}

TEST_CASE("reductions preserve the coboundary class under random weights")
{
    std::mt19937_64 rng(29);
    for (std::size_t n = 3; n <= 9; ++n) {
        const Skeleton sk(n);
        for (int trial = 0; trial < 40; ++trial) {
            const auto p = testing::random_distribution(n, rng);
            const Chain1 f = random_edges(sk, rng);
            const auto er = reduce_edge_cochain(f, p);
            CHECK(coboundary(er.f0) == coboundary(f));
            CHECK(er.weight == weight_of(er.f0, p));
            CHECK(er.weight <= edge_reduction_factor(n) * er.boundary_weight);

            Chain0 u(sk);
            for (std::size_t v = 0; v < n; ++v) u.set(v, rng() & 1u);
            const auto vr = reduce_vertex_cochain(u, p);
            if (u.is_zero() || u.count() == n) continue;
            CHECK(coboundary(vr.u0) == coboundary(u));
            CHECK(vr.weight < vr.boundary_weight);
        }
    }
}

TEST_CASE("a zero weight vertex still gives a strict vertex bound")
{
    const Skeleton s3(3);
    const VertexDistribution p({Rational(0), Rational(1, 2), Rational(1, 2)});
    const auto r = reduce_vertex_cochain(Chain0::from_support(s3, {0}), p);
    CHECK(r.u0 == Chain0::from_support(s3, {0}));
    CHECK(r.weight == 0);
    CHECK(r.boundary_weight == Rational(1, 2));
}

}
