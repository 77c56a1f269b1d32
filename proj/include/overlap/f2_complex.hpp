#pragma once

// The complete 2-skeleton X = (V, E, T) on n vertices, its F2 chain spaces
// and the coboundary operators between them.
//
// Cells are numbered by a fixed canonical enumeration: vertices 0..n-1,
// edges and triangles as sorted vertex tuples in lexicographic order. The
// layout of every chain follows that enumeration.

#include "overlap/rational.hpp"

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace overlap {

using Vertex = std::uint32_t;

namespace detail {
struct SkeletonTables;
}

class Skeleton {
public:
    /// Throws std::invalid_argument when n < 3.
    explicit Skeleton(std::size_t n);

    std::size_t vertex_count() const noexcept;
    std::size_t edge_count() const noexcept;
    std::size_t triangle_count() const noexcept;

    /// Index of the edge {a, b}; order of the arguments is irrelevant.
    std::size_t edge_index(Vertex a, Vertex b) const;
    /// Index of the triangle {a, b, c}; order of the arguments is irrelevant.
    std::size_t triangle_index(Vertex a, Vertex b, Vertex c) const;

    const std::array<Vertex, 2>& edge(std::size_t index) const;
    const std::array<Vertex, 3>& triangle(std::size_t index) const;
    /// Edge indices {ab, ac, bc} of triangle (a < b < c).
    const std::array<std::size_t, 3>& triangle_edges(std::size_t index) const;

    /// Number of cells in dimension 0, 1 or 2.
    std::size_t cell_count(int dim) const;

    friend bool operator==(const Skeleton& a, const Skeleton& b) noexcept
    {
        return a.vertex_count() == b.vertex_count();
    }

private:
    std::shared_ptr<const detail::SkeletonTables> tables_;
};

/// A subset of the cells of one dimension, i.e. a vector over F2.
template <int Dim>
class Chain {
    static_assert(Dim >= 0 && Dim <= 2);

public:
    explicit Chain(const Skeleton& skeleton)
        : skeleton_(skeleton)
        , size_(skeleton.cell_count(Dim))
        , words_((size_ + 63) / 64, 0)
    {}

    static Chain from_support(const Skeleton& skeleton, std::span<const std::size_t> cells)
    {
        Chain c(skeleton);
        for (std::size_t i : cells) c.set(i);
        return c;
    }

    static Chain from_support(const Skeleton& skeleton, std::initializer_list<std::size_t> cells)
    {
        return from_support(skeleton, std::span<const std::size_t>(cells.begin(), cells.size()));
    }

    /// The chain containing every cell.
    static Chain full(const Skeleton& skeleton)
    {
        Chain c(skeleton);
        for (std::size_t i = 0; i < c.size_; ++i) c.set(i);
        return c;
    }

    const Skeleton& skeleton() const noexcept { return skeleton_; }
    std::size_t size() const noexcept { return size_; }

    bool test(std::size_t i) const
    {
        check_index(i);
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i, bool value = true)
    {
        check_index(i);
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    void flip(std::size_t i)
    {
        check_index(i);
        words_[i >> 6] ^= std::uint64_t{1} << (i & 63);
    }

    std::size_t count() const noexcept
    {
        std::size_t total = 0;
        for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
        return total;
    }

    bool is_zero() const noexcept
    {
        for (auto w : words_)
            if (w != 0) return false;
        return true;
    }

    /// Indices of the cells in the chain, ascending.
    std::vector<std::size_t> support() const
    {
        std::vector<std::size_t> out;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits != 0) {
                const int b = std::countr_zero(bits);
                out.push_back(w * 64 + static_cast<std::size_t>(b));
                bits &= bits - 1;
            }
        }
        return out;
    }

    /// Smallest cell index in the chain, if any.
    std::optional<std::size_t> first() const noexcept
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            if (words_[w] != 0)
                return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
        }
        return std::nullopt;
    }

    Chain complement() const
    {
        Chain c = full(skeleton_);
        c += *this;
        return c;
    }

    Chain& operator+=(const Chain& other)
    {
        if (!(skeleton_ == other.skeleton_))
            throw std::invalid_argument("chains belong to different skeleta");
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
        return *this;
    }

    friend Chain operator+(Chain a, const Chain& b)
    {
        a += b;
        return a;
    }

    friend bool operator==(const Chain& a, const Chain& b) noexcept
    {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

    /// Total order on chains of the same skeleton (used for deduplication).
    friend bool operator<(const Chain& a, const Chain& b) noexcept
    {
        if (a.size_ != b.size_) return a.size_ < b.size_;
        return a.words_ < b.words_;
    }

    /// True when every cell of this chain is also in `other`.
    bool is_subset_of(const Chain& other) const noexcept
    {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if ((words_[w] & ~other.words_[w]) != 0) return false;
        return true;
    }

    const std::vector<std::uint64_t>& words() const noexcept { return words_; }

private:
    void check_index(std::size_t i) const
    {
        if (i >= size_) throw std::out_of_range("chain index out of range");
    }

    Skeleton skeleton_;
    std::size_t size_;
    std::vector<std::uint64_t> words_;
};

using Chain0 = Chain<0>;
using Chain1 = Chain<1>;
using Chain2 = Chain<2>;

/// delta U: edges meeting U in an odd number of vertices.
Chain1 coboundary(const Chain0& vertices);
/// delta F: triangles containing an odd number of edges of F.
Chain2 coboundary(const Chain1& edges);

enum class KernelClass { Empty, Full, NotKernel };

struct KernelWitness {
    KernelClass classification;
    /// An edge of delta U, present exactly when classification is NotKernel.
    std::optional<std::size_t> witness_edge;

    bool is_kernel() const noexcept { return classification != KernelClass::NotKernel; }
};

/// Classifies U against the kernel of delta on vertices, which is {0, V}.
KernelWitness kernel_vertex_witness(const Chain0& vertices);

class NotACocycle : public std::domain_error {
public:
    explicit NotACocycle(std::size_t witness_triangle);
    std::size_t witness_triangle() const noexcept { return witness_triangle_; }

private:
    std::size_t witness_triangle_;
};

/// For a cocycle F (delta F = 0) returns U with delta U = F, namely the color
/// class of the bipartite graph F that holds its smallest non-isolated vertex.
/// Throws NotACocycle carrying the first triangle of delta F otherwise.
Chain0 cut_decomposition(const Chain1& edges);

/// Probability weights on V, exact. Extended to edges and triangles by
/// p({a,b}) = (p(a)+p(b))/(n-1) and p({a,b,c}) = (p(a)+p(b)+p(c))/C(n-1,2).
class VertexDistribution {
public:
    /// Throws std::invalid_argument unless the weights are nonnegative and
    /// sum to exactly 1.
    explicit VertexDistribution(std::vector<Rational> weights);

    static VertexDistribution uniform(std::size_t n);

    std::size_t size() const noexcept { return weights_.size(); }
    const Rational& operator[](Vertex v) const { return weights_.at(v); }
    const std::vector<Rational>& weights() const noexcept { return weights_; }
    bool is_uniform() const;

    Rational edge_weight(Vertex a, Vertex b) const;
    Rational triangle_weight(Vertex a, Vertex b, Vertex c) const;

private:
    std::vector<Rational> weights_;
};

Rational weight_of(const Chain0& chain, const VertexDistribution& p);
Rational weight_of(const Chain1& chain, const VertexDistribution& p);
Rational weight_of(const Chain2& chain, const VertexDistribution& p);

/// Binomial coefficient for small arguments.
std::size_t choose(std::size_t n, std::size_t k);

}  // namespace overlap
