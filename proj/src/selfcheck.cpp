#include "overlap/selfcheck.hpp"

#include "overlap/expansion.hpp"
#include "overlap/f2_complex.hpp"
#include "overlap/random.hpp"

#include <set>
#include <stdexcept>

namespace overlap {

bool SelfcheckResult::passed() const noexcept
{
    for (const auto& i : items)
        if (!i.passed) return false;
    return true;
}

std::optional<std::string> SelfcheckResult::first_failure() const
{
    for (const auto& i : items)
        if (!i.passed) return i.name;
    return std::nullopt;
}

namespace {

constexpr std::size_t kExhaustiveLimit = 5;
constexpr std::size_t kSampledSubsets = 400;

template <int Dim>
Chain<Dim> from_mask(const Skeleton& sk, std::uint64_t mask)
{
    Chain<Dim> c(sk);
    for (std::size_t i = 0; i < c.size(); ++i)
        if ((mask >> i) & 1u) c.set(i);
    return c;
}

template <int Dim>
std::string show(const Chain<Dim>& c)
{
    std::string out = "{";
    for (std::size_t i : c.support()) out += (out.size() > 1 ? "," : "") + std::to_string(i);
    return out + "}";
}

// All subsets for small cell counts, a seeded sample otherwise.
std::vector<std::uint64_t> subsets(std::size_t cells, std::size_t n, std::mt19937_64& rng)
{
    std::vector<std::uint64_t> out;
    if (n <= kExhaustiveLimit) {
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << cells); ++m) out.push_back(m);
        return out;
    }
    const std::uint64_t full = cells >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cells) - 1;
    out.push_back(0);
    out.push_back(full);
    while (out.size() < kSampledSubsets) out.push_back(rng() & full);
    return out;
}

VertexDistribution random_distribution(std::size_t n, std::mt19937_64& rng)
{
    std::vector<std::int64_t> raw(n);
    std::int64_t total = 0;
    for (auto& w : raw) {
        // Occasional zero weights exercise the boundary of the lemmas.
        w = uniform_below(rng, 8) == 0 ? 0 : uniform_between(rng, 1, 1000);
        total += w;
    }
    if (total == 0) {
        raw[0] = 1;
        total = 1;
    }
    std::vector<Rational> w;
    for (auto x : raw) w.push_back(make_rational(x, total));
    return VertexDistribution(std::move(w));
}

void fail(SelfcheckItem& item, std::string detail)
{
    if (item.passed) item.detail = std::move(detail);
    item.passed = false;
}

}  // namespace

SelfcheckResult run_selfcheck(std::size_t max_n, std::uint64_t seed, std::size_t weight_samples)
{
    if (max_n < 3 || max_n > 6) throw std::invalid_argument("selfcheck supports 3 <= max_n <= 6");
    std::mt19937_64 rng(mix_seed(seed, 3));

    SelfcheckItem dd{"coboundary_squares_to_zero", true, 0, {}};
    SelfcheckItem claim1{"vertex_kernel_is_empty_or_full", true, 0, {}};
    SelfcheckItem claim2{"edge_kernel_is_cut_space", true, 0, {}};
    SelfcheckItem vertex{"vertex_reduction", true, 0, {}};
    SelfcheckItem edge{"edge_reduction", true, 0, {}};
    SelfcheckItem uniform{"uniform_vertex_reduction", true, 0, {}};
    SelfcheckItem third{"one_third_coset_bound", true, 0, {}};
    SelfcheckItem norms{"weight_normalization", true, 0, {}};

    for (std::size_t n = 3; n <= max_n; ++n) {
        const Skeleton sk(n);
        const std::string at = "n=" + std::to_string(n) + " ";
        std::vector<VertexDistribution> dists;
        dists.push_back(VertexDistribution::uniform(n));
        for (std::size_t k = 0; k < weight_samples; ++k) dists.push_back(random_distribution(n, rng));

        // Vertex subsets: always exhaustive (at most 64).
        std::set<Chain1> cuts;
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
            const Chain0 u = from_mask<0>(sk, m);
            const Chain1 du = coboundary(u);
            ++dd.cases;
            ++claim1.cases;
            if (!coboundary(du).is_zero()) fail(dd, at + "U=" + show(u));
            const bool trivial = u.is_zero() || u.count() == n;
            if (du.is_zero() != trivial) fail(claim1, at + "U=" + show(u));
            cuts.insert(du);

            ++uniform.cases;
            try {
                const auto r = reduce_vertex_uniform(u);
                if (2 * r.size > n || r.boundary_size != r.size * (n - r.size) || !(coboundary(r.u0) == du))
                    fail(uniform, at + "U=" + show(u));
            } catch (const std::logic_error& e) {
                fail(uniform, at + "U=" + show(u) + ": " + e.what());
            }

            for (const auto& p : dists) {
                ++vertex.cases;
                const auto r = reduce_vertex_cochain(u, p);
                if (trivial) {
                    if (!r.u0.is_zero()) fail(vertex, at + "U=" + show(u) + " not reduced to zero");
                    continue;
                }
                if (!(coboundary(r.u0) == du)) fail(vertex, at + "U=" + show(u) + " changes its coboundary");
                if (!(r.weight < weight_of(du, p)))
                    fail(vertex, at + "U=" + show(u) + " p(U0)=" + to_string(r.weight) +
                                     " p(dU)=" + to_string(weight_of(du, p)));
            }
        }
        if (cuts.size() != (std::size_t{1} << (n - 1)))
            fail(claim2, at + "cut space has " + std::to_string(cuts.size()) + " elements");

        const Rational factor = edge_reduction_factor(n);
        for (std::uint64_t m : subsets(sk.edge_count(), n, rng)) {
            const Chain1 f = from_mask<1>(sk, m);
            const Chain2 df = coboundary(f);
            ++claim2.cases;
            const bool cocycle = df.is_zero();
            if (cocycle != (cuts.count(f) == 1)) fail(claim2, at + "F=" + show(f));
            if (cocycle) {
                try {
                    if (!(coboundary(cut_decomposition(f)) == f)) fail(claim2, at + "F=" + show(f) + " bad cut");
                } catch (const NotACocycle&) {
                    fail(claim2, at + "F=" + show(f) + " rejected as non-cocycle");
                }
            }
            for (const auto& p : dists) {
                ++edge.cases;
                const auto r = reduce_edge_cochain(f, p);
                const Rational pdf = weight_of(df, p);
                if (!(coboundary(r.f0) == df)) fail(edge, at + "F=" + show(f) + " changes its coboundary");
                if (r.weight > factor * pdf || r.weight > Rational(3, 2) * pdf)
                    fail(edge, at + "F=" + show(f) + " p(F0)=" + to_string(r.weight) + " p(dF)=" + to_string(pdf));
            }
            ++third.cases;
            const auto r = verify_lemma_one_third(f);
            if (!r.holds || !(coboundary(r.f0) == df))
                fail(third, at + "F=" + show(f) + " |F0|=" + std::to_string(r.f0.count()) +
                                " |dF|=" + std::to_string(r.boundary_size));
        }

        for (const auto& p : dists) {
            ++norms.cases;
            const bool ok = weight_of(Chain0::full(sk), p) == 1 && weight_of(Chain1::full(sk), p) == 1 &&
                            weight_of(Chain2::full(sk), p) == 1;
            if (!ok) fail(norms, at + "full chains do not weigh 1");
        }
    }

    SelfcheckResult out;
    out.items = {dd, claim1, claim2, vertex, edge, uniform, third, norms};
    return out;
}

}  // namespace overlap
