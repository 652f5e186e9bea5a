// Non-singularity and regularity of simplicial sets.
#pragma once

#include <optional>

#include "forge/colimits.hpp"

namespace forge {

/// Every cell has pairwise distinct vertices. A face operator is determined
/// by its image, so this makes every representing map injective.
inline bool is_nonsingular(const SimplicialSet& x)
{
    for (CellId c = 0; c < x.num_cells(); ++c)
        if (!is_embedded(x, x.cell(c)))
            return false;
    return true;
}

struct RegularityResult {
    bool regular = true;
    std::optional<CellId> witness;  // a cell whose attaching square fails

    explicit operator bool() const { return regular; }
};

/// Whether the canonical map Delta[n] +_{Delta[n-1]} Y' -> X is degreewise
/// injective, Y' being generated by the last face of the n-cell y.
inline bool is_regularly_attached(const SimplicialSet& x, CellId y)
{
    const int n = x.dim(y);
    if (n == 0)
        return true;
    const Simplex last = x.eval(x.cell(y), make_face(n, n));
    const Subcomplex sub = generate(x, {last.cell});
    CellId local = -1;
    for (std::size_t i = 0; i < sub.cells.size(); ++i)
        if (sub.cells[i] == last.cell)
            local = static_cast<CellId>(i);
    const SimplicialSet simplex = standard_simplex(n);
    const StandardSimplexIndex idx(n);
    const SimplicialMap front = representing_map(simplex, Simplex{idx.id(full_mask(n - 1)), identity(n - 1)});
    const SimplicialMap attach = representing_map(sub.space, Simplex{local, last.degen});
    const Pushout po = pushout(front, attach);
    const SimplicialMap canonical = po.induced(representing_map(x, y), sub.inclusion);
    return is_degreewise_injective(canonical);
}

inline RegularityResult is_regular(const SimplicialSet& x)
{
    for (CellId c = 0; c < x.num_cells(); ++c)
        if (!is_regularly_attached(x, c))
            return {false, c};
    return {};
}

}  // namespace forge
