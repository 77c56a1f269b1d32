#include "overlap/minimax_game.hpp"

#include "depth_engine.hpp"
#include "overlap/parallel.hpp"

#include <algorithm>
#include <numeric>

namespace overlap {

GameMatrix build_game(const AffineInstance& inst, bool prune_dominated)
{
    const detail::DepthEngine engine(inst);
    const Skeleton& sk = inst.skeleton();
    const std::size_t total = engine.candidate_count();

    std::vector<std::optional<GameRow>> raw(total);
    parallel_chunks(total, [&](std::size_t, std::size_t begin, std::size_t end) {
        std::vector<std::int8_t> signs;
        for (std::size_t k = begin; k < end; ++k)
            raw[k] = GameRow{engine.coverage(k, signs), engine.candidate_point(k)};
    });

    std::vector<GameRow> rows;
    rows.reserve(total);
    for (auto& r : raw) rows.push_back(std::move(*r));
    std::sort(rows.begin(), rows.end(), [](const GameRow& a, const GameRow& b) {
        if (!(a.coverage == b.coverage)) return a.coverage < b.coverage;
        return a.point < b.point;
    });
    rows.erase(std::unique(rows.begin(), rows.end(),
                           [](const GameRow& a, const GameRow& b) { return a.coverage == b.coverage; }),
               rows.end());

    GameMatrix g{inst, {}, {}, total, 0};
    if (prune_dominated) {
        std::vector<bool> dominated(rows.size(), false);
        for (std::size_t a = 0; a < rows.size(); ++a) {
            for (std::size_t b = 0; b < rows.size() && !dominated[a]; ++b) {
                if (a != b && rows[a].coverage.is_subset_of(rows[b].coverage)) dominated[a] = true;
            }
        }
        for (std::size_t a = 0; a < rows.size(); ++a) {
            if (dominated[a])
                ++g.dominated_removed;
            else
                g.rows.push_back(std::move(rows[a]));
        }
    } else {
        g.rows = std::move(rows);
    }

    const std::size_t n = inst.size();
    const Rational per_triangle = Rational(1) / Rational(static_cast<std::int64_t>(choose(n - 1, 2)));
    g.payoff.assign(g.rows.size(), std::vector<Rational>(n));
    for (std::size_t r = 0; r < g.rows.size(); ++r) {
        std::vector<std::int64_t> degree(n, 0);
        for (std::size_t t : g.rows[r].coverage.support())
            for (Vertex v : sk.triangle(t)) ++degree[v];
        for (Vertex v = 0; v < n; ++v) g.payoff[r][v] = Rational(degree[v]) * per_triangle;
    }
    return g;
}

namespace {

// Dictionary form: basic_i = rhs_i - sum_j coef_ij * nonbasic_j and
// z = z0 + sum_j cost_j * nonbasic_j. Variables 0..n-1 are the y_v, n + r
// is the slack of row r.
struct Dictionary {
    std::vector<std::vector<Rational>> coef;
    std::vector<Rational> rhs;
    std::vector<Rational> cost;
    Rational z0;
    std::vector<std::size_t> basic;
    std::vector<std::size_t> nonbasic;

    void pivot(std::size_t row, std::size_t col)
    {
        const Rational p = coef[row][col];
        const std::size_t cols = nonbasic.size();
        // Solve row for the entering variable.
        std::vector<Rational>& pr = coef[row];
        for (std::size_t j = 0; j < cols; ++j) pr[j] = (j == col) ? Rational(1) / p : pr[j] / p;
        rhs[row] /= p;
        for (std::size_t i = 0; i < coef.size(); ++i) {
            if (i == row) continue;
            const Rational f = coef[i][col];
            if (f == 0) continue;
            for (std::size_t j = 0; j < cols; ++j)
                coef[i][j] = (j == col) ? -f * pr[j] : coef[i][j] - f * pr[j];
            rhs[i] -= f * rhs[row];
        }
        const Rational f = cost[col];
        for (std::size_t j = 0; j < cols; ++j) cost[j] = (j == col) ? -f * pr[j] : cost[j] - f * pr[j];
        z0 += f * rhs[row];
        std::swap(basic[row], nonbasic[col]);
    }
};

}  // namespace

GameSolution solve_game(const GameMatrix& g)
{
    const std::size_t rows = g.rows.size();
    const std::size_t n = g.vertex_count();
    if (rows == 0 || n == 0) throw std::invalid_argument("empty game matrix");

    Dictionary d;
    d.coef = g.payoff;
    d.rhs.assign(rows, Rational(1));
    d.cost.assign(n, Rational(1));
    d.z0 = 0;
    d.nonbasic.resize(n);
    std::iota(d.nonbasic.begin(), d.nonbasic.end(), 0);
    d.basic.resize(rows);
    std::iota(d.basic.begin(), d.basic.end(), n);

    GameSolution s;
    for (;;) {
        // Bland: smallest-labelled improving variable enters ...
        std::optional<std::size_t> col;
        for (std::size_t j = 0; j < n; ++j) {
            if (d.cost[j] > 0 && (!col || d.nonbasic[j] < d.nonbasic[*col])) col = j;
        }
        if (!col) break;
        // ... and the smallest-labelled variable among the tightest rows leaves.
        std::optional<std::size_t> row;
        Rational best;
        for (std::size_t i = 0; i < rows; ++i) {
            if (d.coef[i][*col] <= 0) continue;
            const Rational ratio = d.rhs[i] / d.coef[i][*col];
            if (!row || ratio < best || (ratio == best && d.basic[i] < d.basic[*row])) {
                row = i;
                best = ratio;
            }
        }
        if (!row) throw std::logic_error("game LP unbounded: some vertex is never covered");
        d.pivot(*row, *col);
        ++s.pivots;
    }

    if (d.z0 <= 0) throw std::logic_error("game LP has a non-positive optimum");
    std::vector<Rational> y(n), x(rows);
    for (std::size_t i = 0; i < rows; ++i)
        if (d.basic[i] < n) y[d.basic[i]] = d.rhs[i];
    for (std::size_t j = 0; j < n; ++j)
        if (d.nonbasic[j] >= n) x[d.nonbasic[j] - n] = -d.cost[j];

    s.value = Rational(1) / d.z0;
    s.p_star.resize(n);
    for (std::size_t v = 0; v < n; ++v) s.p_star[v] = y[v] * s.value;
    s.mu.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) s.mu[r] = x[r] * s.value;
    return s;
}

GapReport verify_duality_gap(const GameMatrix& g, const GameSolution& s)
{
    const std::size_t n = g.vertex_count();
    const std::size_t rows = g.rows.size();
    if (s.mu.size() != rows || s.p_star.size() != n) throw GapDetected("solution does not match the matrix");

    auto is_distribution = [](const std::vector<Rational>& w) {
        Rational total = 0;
        for (const auto& x : w) {
            if (x < 0) return false;
            total += x;
        }
        return total == 1;
    };
    if (!is_distribution(s.mu)) throw GapDetected("mu is not a probability vector");
    if (!is_distribution(s.p_star)) throw GapDetected("p_star is not a probability vector");

    GapReport report;
    for (Vertex v = 0; v < n; ++v) {
        Rational column = 0;
        for (std::size_t r = 0; r < rows; ++r) column += s.mu[r] * g.payoff[r][v];
        if (v == 0 || column < report.min_column) report.min_column = column;
    }
    for (std::size_t r = 0; r < rows; ++r) {
        Rational row = 0;
        for (Vertex v = 0; v < n; ++v) row += s.p_star[v] * g.payoff[r][v];
        if (r == 0 || row > report.max_row) report.max_row = row;
    }
    report.value_bound = weighted_overlap_constant(n);
    report.depth_at_p_star =
        find_overlap_point(g.instance.with_distribution(VertexDistribution(s.p_star))).weighted;

    if (report.min_column != s.value)
        throw GapDetected("min column payoff under mu is " + to_string(report.min_column) + ", value is " +
                          to_string(s.value));
    if (report.max_row != s.value)
        throw GapDetected("max row payoff under p_star is " + to_string(report.max_row) + ", value is " +
                          to_string(s.value));
    if (report.depth_at_p_star != s.value)
        throw GapDetected("weighted depth under p_star is " + to_string(report.depth_at_p_star) +
                          ", value is " + to_string(s.value));
    if (s.value < report.value_bound)
        throw GapDetected("value " + to_string(s.value) + " is below " + to_string(report.value_bound));
    return report;
}

}  // namespace overlap
