#pragma once

// The zero-sum game behind the existence of a measure mu on the plane that
// gives every vertex a large share of its incident triangle images. The
// point player picks a coverage pattern (the set of triangles whose images
// contain a point), the vertex player picks a vertex, and the payoff is the
// fraction of triangles at that vertex covered by the pattern.

#include "overlap/plane_geometry.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace overlap {

struct GameRow {
    Chain2 coverage;
    RationalPoint point;  // lexicographically smallest candidate point with this coverage
};

struct GameMatrix {
    AffineInstance instance;
    std::vector<GameRow> rows;
    std::vector<std::vector<Rational>> payoff;  // [row][vertex]
    std::size_t candidate_count = 0;            // candidate points inspected
    std::size_t dominated_removed = 0;

    std::size_t vertex_count() const noexcept { return instance.size(); }
};

/// Rows from the coverage sets at all candidate points, one per distinct set.
/// With `prune_dominated`, a row whose coverage is strictly contained in
/// another row's coverage is dropped.
GameMatrix build_game(const AffineInstance& inst, bool prune_dominated = true);

struct GameSolution {
    Rational value;
    std::vector<Rational> mu;      // per row
    std::vector<Rational> p_star;  // per vertex
    std::size_t pivots = 0;
};

/// Exact simplex (Bland's rule) on max sum(y) s.t. payoff * y <= 1, y >= 0.
/// p_star = y / sum(y), mu comes from the optimal dual, value = 1 / sum(y).
/// Throws std::invalid_argument on an empty matrix.
GameSolution solve_game(const GameMatrix& g);

class GapDetected : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct GapReport {
    Rational min_column;       // min_v sum_r mu(r) payoff(r, v)
    Rational max_row;          // max_r sum_v p_star(v) payoff(r, v)
    Rational value_bound;  // 1/13 - 3/(13(n-1))
    Rational depth_at_p_star;  // weighted depth of find_overlap_point under p_star
};

/// Recomputes both sides from scratch. Throws GapDetected unless
/// min_column = max_row = depth_at_p_star = value and value >= bound.
GapReport verify_duality_gap(const GameMatrix& g, const GameSolution& s);

}  // namespace overlap
