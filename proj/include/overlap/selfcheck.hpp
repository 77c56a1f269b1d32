#pragma once

// Exhaustive and sampled checks of the chain calculus and the expansion
// lemmas on small complete complexes.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace overlap {

struct SelfcheckItem {
    std::string name;
    bool passed = true;
    std::size_t cases = 0;
    std::string detail;  // first counterexample on failure
};

struct SelfcheckResult {
    std::vector<SelfcheckItem> items;

    bool passed() const noexcept;
    /// Name of the first failing item.
    std::optional<std::string> first_failure() const;
};

/// Sizes 3..max_n (max_n in [3, 6]). Vertex subsets are always enumerated;
/// edge subsets exhaustively up to n = 5 and sampled at n = 6. Each weighted
/// lemma is checked against the uniform and `weight_samples` random
/// distributions drawn from `seed`; the one-third bound by full coset search.
SelfcheckResult run_selfcheck(std::size_t max_n, std::uint64_t seed, std::size_t weight_samples = 20);

}  // namespace overlap
