// Finite posets up to isomorphism.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "forge/poset.hpp"

namespace forge::harness {

namespace detail {

// Strict order on n <= 8 elements as a bitmask over ordered pairs (i, j),
// bit i*n + j set iff i < j in the order.
using Relation = std::uint64_t;

inline Relation canonical(Relation r, int n)
{
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Relation best = ~Relation{0};
    do {
        Relation img = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (r >> (i * n + j) & 1u)
                    img |= Relation{1} << (perm[i] * n + perm[j]);
        best = std::min(best, img);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace detail

/// One representative of each isomorphism class of posets on n elements,
/// n <= 6. Every poset has a linear extension, so it suffices to run over
/// transitive relations contained in the usual order on 0..n-1.
inline std::vector<FinPoset> posets_up_to_iso(int n)
{
    if (n < 0 || n > 6)
        throw std::invalid_argument("posets_up_to_iso: n must be in 0..6");
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            slots.emplace_back(i, j);
    std::set<detail::Relation> seen;
    std::vector<FinPoset> out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << slots.size()); ++bits) {
        detail::Relation r = 0;
        for (std::size_t s = 0; s < slots.size(); ++s)
            if (bits >> s & 1u)
                r |= detail::Relation{1} << (slots[s].first * n + slots[s].second);
        bool transitive = true;
        for (int i = 0; i < n && transitive; ++i)
            for (int j = 0; j < n && transitive; ++j)
                if (r >> (i * n + j) & 1u)
                    for (int k = 0; k < n; ++k)
                        if ((r >> (j * n + k) & 1u) && !(r >> (i * n + k) & 1u)) {
                            transitive = false;
                            break;
                        }
        if (!transitive || !seen.insert(detail::canonical(r, n)).second)
            continue;
        std::vector<std::string> labels;
        for (int i = 0; i < n; ++i)
            labels.push_back(std::string(1, static_cast<char>('a' + i)));
        std::vector<std::pair<int, int>> rel;
        for (auto [i, j] : slots)
            if (r >> (i * n + j) & 1u)
                rel.emplace_back(i, j);
        out.push_back(FinPoset::build(std::move(labels), rel, "P" + std::to_string(n) + "_" + std::to_string(out.size())));
    }
    return out;
}

}  // namespace forge::harness
