#include "depth_engine.hpp"

#include <stdexcept>

namespace overlap::detail {

namespace {

constexpr std::int64_t kLatticeLimit = std::int64_t{1} << 20;

int sign_of(__int128 v) { return (v > 0) - (v < 0); }

Integer to_integer(__int128 v)
{
    const bool negative = v < 0;
    unsigned __int128 mag = negative ? -static_cast<unsigned __int128>(v)
                                     : static_cast<unsigned __int128>(v);
    Integer out(static_cast<std::uint64_t>(mag >> 64));
    out <<= 64;
    out += Integer(static_cast<std::uint64_t>(mag));
    return negative ? Integer(-out) : out;
}

}  // namespace

DepthEngine::DepthEngine(const AffineInstance& inst)
    : inst_(inst)
    , n_(inst.size())
    , vertex_count_(inst.size())
{
    // Try to place the instance on a small integer lattice.
    Integer lcm = 1;
    for (const auto& p : inst.points()) {
        lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(p.x));
        lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(p.y));
        if (lcm > kLatticeLimit) break;
    }
    lattice_ = lcm <= kLatticeLimit;
    if (lattice_) {
        scale_ = lcm;
        for (const auto& p : inst.points()) {
            const Rational sx = p.x * Rational(lcm);
            const Rational sy = p.y * Rational(lcm);
            const Integer ix = boost::multiprecision::numerator(sx);
            const Integer iy = boost::multiprecision::numerator(sy);
            if (abs(ix) > kLatticeLimit || abs(iy) > kLatticeLimit) {
                lattice_ = false;
                break;
            }
            lattice_points_.push_back({ix.convert_to<std::int64_t>(), iy.convert_to<std::int64_t>()});
        }
        if (!lattice_) lattice_points_.clear();
    }

    orient_.assign(n_ * n_ * n_, 0);
    for (Vertex a = 0; a < n_; ++a) {
        for (Vertex b = 0; b < n_; ++b) {
            for (Vertex c = 0; c < n_; ++c) {
                if (a == b || b == c || a == c) continue;
                int s;
                if (lattice_) {
                    const auto& pa = lattice_points_[a];
                    const auto& pb = lattice_points_[b];
                    const auto& pc = lattice_points_[c];
                    const std::int64_t det = (pb[0] - pa[0]) * (pc[1] - pa[1]) -
                                             (pb[1] - pa[1]) * (pc[0] - pa[0]);
                    s = (det > 0) - (det < 0);
                } else {
                    s = static_cast<int>(orientation(inst.point(a), inst.point(b), inst.point(c)));
                }
                orient_[(a * n_ + b) * n_ + c] = static_cast<std::int8_t>(s);
            }
        }
    }

    const Skeleton& sk = inst.skeleton();
    triangle_orientation_.resize(sk.triangle_count());
    for (std::size_t t = 0; t < sk.triangle_count(); ++t) {
        const auto& [a, b, c] = sk.triangle(t);
        triangle_orientation_[t] = static_cast<std::int8_t>(input_orientation(a, b, c));
    }

    for (std::size_t e1 = 0; e1 < sk.edge_count(); ++e1) {
        const auto& [a, b] = sk.edge(e1);
        for (std::size_t e2 = e1 + 1; e2 < sk.edge_count(); ++e2) {
            const auto& [c, d] = sk.edge(e2);
            if (c == a || c == b || d == a || d == b) continue;
            if (input_orientation(a, b, c) != input_orientation(a, b, d) &&
                input_orientation(c, d, a) != input_orientation(c, d, b)) {
                crossings_.push_back({static_cast<std::uint32_t>(e1), static_cast<std::uint32_t>(e2)});
            }
        }
    }
}

DepthEngine::Homogeneous DepthEngine::lattice_candidate(std::size_t k) const
{
    if (k < vertex_count_) {
        const auto& p = lattice_points_[k];
        return {p[0], p[1], 1};
    }
    const Skeleton& sk = inst_.skeleton();
    const auto& cr = crossings_[k - vertex_count_];
    const auto& [a, b] = sk.edge(cr.first);
    const auto& [c, d] = sk.edge(cr.second);
    const auto& pa = lattice_points_[a];
    const auto& pb = lattice_points_[b];
    const auto& pc = lattice_points_[c];
    const auto& pd = lattice_points_[d];
    const __int128 rx = pb[0] - pa[0], ry = pb[1] - pa[1];
    const __int128 sx = pd[0] - pc[0], sy = pd[1] - pc[1];
    const __int128 den = rx * sy - ry * sx;
    const __int128 num = (pc[0] - pa[0]) * sy - (pc[1] - pa[1]) * sx;
    Homogeneous h{pa[0] * den + rx * num, pa[1] * den + ry * num, den};
    if (h.w < 0) {
        h.x = -h.x;
        h.y = -h.y;
        h.w = -h.w;
    }
    return h;
}

RationalPoint DepthEngine::candidate_point(std::size_t k) const
{
    if (k < vertex_count_) return inst_.point(static_cast<Vertex>(k));
    if (lattice_) {
        const Homogeneous h = lattice_candidate(k);
        const Integer den = to_integer(h.w) * scale_;
        return {Rational(to_integer(h.x), den), Rational(to_integer(h.y), den)};
    }
    const Skeleton& sk = inst_.skeleton();
    const auto& cr = crossings_[k - vertex_count_];
    const auto& [a, b] = sk.edge(cr.first);
    const auto& [c, d] = sk.edge(cr.second);
    auto q = proper_crossing(inst_.point(a), inst_.point(b), inst_.point(c), inst_.point(d));
    if (!q) throw std::logic_error("crossing pair without a proper crossing");
    return *q;
}

void DepthEngine::fill_signs(std::size_t k, std::vector<std::int8_t>& signs) const
{
    const Skeleton& sk = inst_.skeleton();
    signs.resize(sk.edge_count());
    if (lattice_) {
        const Homogeneous q = lattice_candidate(k);
        for (std::size_t e = 0; e < sk.edge_count(); ++e) {
            const auto& [i, j] = sk.edge(e);
            const auto& pi = lattice_points_[i];
            const auto& pj = lattice_points_[j];
            const __int128 dx = pj[0] - pi[0];
            const __int128 dy = pj[1] - pi[1];
            const __int128 det = dx * (q.y - pi[1] * q.w) - dy * (q.x - pi[0] * q.w);
            signs[e] = static_cast<std::int8_t>(sign_of(det));
        }
        return;
    }
    const RationalPoint q = candidate_point(k);
    for (std::size_t e = 0; e < sk.edge_count(); ++e) {
        const auto& [i, j] = sk.edge(e);
        signs[e] = static_cast<std::int8_t>(orientation(inst_.point(i), inst_.point(j), q));
    }
}

std::size_t DepthEngine::evaluate(std::size_t k, std::vector<std::int8_t>& signs,
                                  std::vector<std::uint32_t>* degree) const
{
    fill_signs(k, signs);
    const Skeleton& sk = inst_.skeleton();
    if (degree) degree->assign(n_, 0);
    std::size_t count = 0;
    for (std::size_t t = 0; t < sk.triangle_count(); ++t) {
        const auto& [ab, ac, bc] = sk.triangle_edges(t);
        const int o = triangle_orientation_[t];
        if (o * signs[ab] < 0 || o * signs[bc] < 0 || o * signs[ac] > 0) continue;
        ++count;
        if (degree) {
            for (Vertex v : sk.triangle(t)) ++(*degree)[v];
        }
    }
    return count;
}

Chain2 DepthEngine::coverage(std::size_t k, std::vector<std::int8_t>& signs) const
{
    fill_signs(k, signs);
    const Skeleton& sk = inst_.skeleton();
    Chain2 out(sk);
    for (std::size_t t = 0; t < sk.triangle_count(); ++t) {
        const auto& [ab, ac, bc] = sk.triangle_edges(t);
        const int o = triangle_orientation_[t];
        if (o * signs[ab] < 0 || o * signs[bc] < 0 || o * signs[ac] > 0) continue;
        out.set(t);
    }
    return out;
}

}  // namespace overlap::detail
