#pragma once

// Coboundary expansion: for a cochain, find a light representative of the
// same coboundary class, under the uniform count and under a vertex
// distribution.

#include "overlap/f2_complex.hpp"

#include <cstddef>
#include <stdexcept>

namespace overlap {

struct VertexReduction {
    Chain0 u0;
    Rational weight;           // p(U0)
    Rational boundary_weight;  // p(delta U)
};

struct EdgeReduction {
    Chain1 f0;
    Vertex chosen_vertex;      // v with F0 = F + delta N_v
    Rational weight;           // p(F0)
    Rational boundary_weight;  // p(delta F)
};

struct UniformVertexReduction {
    Chain0 u0;
    std::size_t size;           // |U0|
    std::size_t boundary_size;  // |delta U| = |U0| (n - |U0|)
};

struct OneThirdCheck {
    Chain1 f0;                  // argmin |F + delta U| over all U
    std::size_t boundary_size;  // |delta F|
    Rational ratio;             // |F0| / max(1, |delta F|)
    bool holds;                 // |F0| <= 3 |delta F|
};

class TooLarge : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Chooses U0 in {U, V \ U} with p(U0) <= p(V \ U0); prefers U on a tie.
/// U in {0, V} reduces to the zero chain with both weights 0.
VertexReduction reduce_vertex_cochain(const Chain0& u, const VertexDistribution& p);

/// Scans F + delta N_v over all v, N_v the F-neighborhood of v, and keeps the
/// lightest candidate (smallest v on ties). The result satisfies
/// p(F0) <= 3(n-2) p(delta F) / (2n).
EdgeReduction reduce_edge_cochain(const Chain1& f, const VertexDistribution& p);

/// Counting version: |U0| <= n/2 and |delta U| = |U0| (n - |U0|).
/// Throws std::logic_error if the cut identity fails.
UniformVertexReduction reduce_vertex_uniform(const Chain0& u);

inline constexpr std::size_t kOneThirdExhaustiveLimit = 6;

/// Exhaustive coset minimization over all 2^n vertex cuts. Throws TooLarge
/// above `max_n` vertices.
OneThirdCheck verify_lemma_one_third(const Chain1& f,
                                     std::size_t max_n = kOneThirdExhaustiveLimit);

/// The bound factor 3(n-2)/(2n) of the edge reduction.
Rational edge_reduction_factor(std::size_t n);

}  // namespace overlap
