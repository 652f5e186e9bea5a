// Kan subdivision, with the natural maps Sd X -> BX and Sd X -> X.
//
// A simplex of Sd X is a pair (x, M_0 <= ... <= M_q) with x a cell of
// dimension n and M_j subsets of {0..n}. It is in normal form when the last
// set is all of {0..n}; it is non-degenerate when the chain is strict.
#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "forge/poset.hpp"

namespace forge {

struct SdCell {
    CellId carrier = -1;
    std::vector<Mask> chain;  // strictly increasing, ends at the full set
};

class Subdivision {
public:
    Subdivision() = default;

    explicit Subdivision(SimplicialSet base, std::string name = {}) : base_(std::move(base))
    {
        for (CellId x = 0; x < base_.num_cells(); ++x) {
            const int n = base_.dim(x);
            std::vector<Mask> chain{full_mask(n)};
            add_chains(x, chain);
        }
        std::vector<CellSpec> specs;
        specs.reserve(cells_.size());
        for (const SdCell& c : cells_) {
            const int q = static_cast<int>(c.chain.size()) - 1;
            CellSpec spec{q, {}};
            if (q > 0)
                for (int i = 0; i <= q; ++i) {
                    std::vector<Mask> f = c.chain;
                    f.erase(f.begin() + i);
                    const Simplex s = i < q ? Simplex{lookup(c.carrier, f), identity(q - 1)}
                                            : normal_form(base_.cell(c.carrier), f);
                    spec.faces.push_back({s.cell, s.degen});
                }
            specs.push_back(std::move(spec));
        }
        space_ = SimplicialSet::build(std::move(specs), name.empty() ? "Sd(" + base_.name() + ")" : std::move(name));
    }

    const SimplicialSet& base() const { return base_; }
    const SimplicialSet& space() const { return space_; }
    const SdCell& cell(CellId c) const { return cells_.at(c); }

    /// The vertex of Sd X that is the barycentre of a cell.
    CellId barycentre(CellId x) const { return lookup(x, {full_mask(base_.dim(x))}); }

    /// Normal form of (x, chain) for a possibly degenerate simplex x of
    /// degree n and a weakly increasing chain of non-empty subsets of {0..n}.
    Simplex normal_form(Simplex x, std::vector<Mask> chain) const
    {
        if (chain.empty())
            throw std::invalid_argument("subdivision: empty chain");
        for (;;) {
            for (Mask& m : chain)
                m = x.degen.is_identity() ? m : push(m, x.degen);
            const int n = base_.dim(x.cell);
            const Mask top = chain.back();
            if (top == full_mask(n))
                break;
            x = base_.face_of_cell(x.cell, top);
            for (Mask& m : chain)
                m = detail::compress_bits(m, ~top);
        }
        std::vector<Mask> strict{chain[0]};
        Mask rep = 0;
        for (std::size_t i = 1; i < chain.size(); ++i) {
            if ((chain[i - 1] & ~chain[i]) != 0)
                throw std::invalid_argument("subdivision: chain is not increasing");
            if (chain[i] == chain[i - 1])
                rep |= Mask{1} << (i - 1);
            else
                strict.push_back(chain[i]);
        }
        return {lookup(x.cell, strict), degen_from_repeats(static_cast<int>(chain.size()) - 1, rep)};
    }

private:
    static Mask push(Mask m, const Operator& a)
    {
        Mask out = 0;
        for (int i = 0; i <= a.src(); ++i)
            if (m >> i & 1u)
                out |= Mask{1} << a[i];
        return out;
    }

    // Prepends every proper non-empty subset of chain.front(), recursively.
    void add_chains(CellId x, std::vector<Mask>& chain)
    {
        std::vector<Mask> rev(chain.rbegin(), chain.rend());
        key_.assign(1, static_cast<Mask>(x));
        key_.insert(key_.end(), rev.begin(), rev.end());
        ids_.emplace(key_, static_cast<int>(cells_.size()));
        cells_.push_back({x, rev});
        const Mask front = chain.back();
        for (Mask sub = (front - 1) & front; sub != 0; sub = (sub - 1) & front) {
            chain.push_back(sub);
            add_chains(x, chain);
            chain.pop_back();
        }
    }

    CellId lookup(CellId x, const std::vector<Mask>& chain) const
    {
        key_.assign(1, static_cast<Mask>(x));
        key_.insert(key_.end(), chain.begin(), chain.end());
        auto it = ids_.find(key_);
        if (it == ids_.end())
            throw std::logic_error("subdivision: chain has no cell");
        return it->second;
    }

    struct KeyHash {
        std::size_t operator()(const std::vector<Mask>& v) const
        {
            std::size_t h = v.size();
            for (Mask m : v)
                h = h * 0x100000001b3ull ^ m;
            return h;
        }
    };

    SimplicialSet base_;
    SimplicialSet space_;
    std::vector<SdCell> cells_;
    std::unordered_map<std::vector<Mask>, int, KeyHash> ids_;
    mutable std::vector<Mask> key_;
};

inline Subdivision sd(const SimplicialSet& x) { return Subdivision(x); }

/// Sd f : (x, chain) |-> normal form of (f(x), chain).
inline SimplicialMap sd_map(const SimplicialMap& f, const Subdivision& src, const Subdivision& dst)
{
    std::vector<Simplex> a;
    a.reserve(src.space().num_cells());
    for (CellId c = 0; c < src.space().num_cells(); ++c) {
        const SdCell& cell = src.cell(c);
        a.push_back(dst.normal_form(f.image(cell.carrier), cell.chain));
    }
    return SimplicialMap::build(src.space(), dst.space(), std::move(a));
}

/// b_X : Sd X -> BX, (x, M_0 < ... < M_q) |-> the chain of (x M_j) non-degenerate parts.
inline SimplicialMap b_nat(const Subdivision& s, const PosetNerve& b)
{
    std::vector<Simplex> a;
    a.reserve(s.space().num_cells());
    std::vector<int> weak;
    for (CellId c = 0; c < s.space().num_cells(); ++c) {
        const SdCell& cell = s.cell(c);
        weak.clear();
        for (Mask m : cell.chain)
            weak.push_back(s.base().face_of_cell(cell.carrier, m).cell);
        a.push_back(b.simplex_of_chain(weak));
    }
    return SimplicialMap::build(s.space(), b.space(), std::move(a));
}

/// d_X : Sd X -> X, sending the j-th vertex to the last vertex of M_j.
inline SimplicialMap last_vertex(const Subdivision& s)
{
    std::vector<Simplex> a;
    a.reserve(s.space().num_cells());
    for (CellId c = 0; c < s.space().num_cells(); ++c) {
        const SdCell& cell = s.cell(c);
        const int n = s.base().dim(cell.carrier);
        std::vector<int> v;
        for (Mask m : cell.chain)
            v.push_back(31 - std::countl_zero(m));
        a.push_back(s.base().eval(s.base().cell(cell.carrier), Operator::from_values(n, v)));
    }
    return SimplicialMap::build(s.space(), s.base(), std::move(a));
}

}  // namespace forge
