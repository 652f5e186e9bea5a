// Isomorphism search between finite simplicial sets: colour refinement on
// the face structure, then backtracking with face propagation.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "forge/simplicial_set.hpp"

namespace forge {

namespace detail {

class IsoSearch {
public:
    IsoSearch(const SimplicialSet& a, const SimplicialSet& b) : a_(a), b_(b)
    {
        refine();
        fwd_.assign(a_.num_cells(), -1);
        bwd_.assign(b_.num_cells(), -1);
    }

    std::optional<std::vector<CellId>> run()
    {
        if (a_.cell_counts() != b_.cell_counts())
            return std::nullopt;
        std::vector<int> hist_a(num_colors_, 0), hist_b(num_colors_, 0);
        for (int c : color_a_)
            ++hist_a[c];
        for (int c : color_b_)
            ++hist_b[c];
        if (hist_a != hist_b)
            return std::nullopt;
        for (CellId c = 0; c < b_.num_cells(); ++c)
            by_color_[color_b_[c]].push_back(c);
        order_.resize(a_.num_cells());
        for (CellId c = 0; c < a_.num_cells(); ++c)
            order_[c] = c;
        // Highest dimension first, then rarest colour.
        std::stable_sort(order_.begin(), order_.end(), [&](CellId x, CellId y) {
            if (a_.dim(x) != a_.dim(y))
                return a_.dim(x) > a_.dim(y);
            return hist_a[color_a_[x]] < hist_a[color_a_[y]];
        });
        if (!search(0))
            return std::nullopt;
        return fwd_;
    }

private:
    using Signature = std::vector<long long>;

    void refine()
    {
        color_a_.resize(a_.num_cells());
        color_b_.resize(b_.num_cells());
        for (CellId c = 0; c < a_.num_cells(); ++c)
            color_a_[c] = a_.dim(c);
        for (CellId c = 0; c < b_.num_cells(); ++c)
            color_b_[c] = b_.dim(c);
        num_colors_ = std::max(a_.dimension(), b_.dimension()) + 1;
        const auto cof_a = cofaces(a_);
        const auto cof_b = cofaces(b_);
        for (;;) {
            std::map<Signature, int> ids;
            auto sig = [&](const SimplicialSet& x, const std::vector<int>& color,
                           const std::vector<std::vector<std::pair<CellId, int>>>& cof, CellId c) {
                Signature s{color[c]};
                const auto faces = x.faces(c);
                for (const Face& f : faces) {
                    s.push_back(color[f.target]);
                    s.push_back(static_cast<long long>(f.degen.repeat_mask()));
                }
                s.push_back(-1);
                std::vector<long long> up;
                for (auto [d, i] : cof[c])
                    up.push_back((static_cast<long long>(color[d]) << 32) | (i << 16)
                                 | static_cast<long long>(x.faces(d)[i].degen.repeat_mask() & 0xffff));
                std::sort(up.begin(), up.end());
                s.insert(s.end(), up.begin(), up.end());
                return s;
            };
            std::vector<Signature> sa(a_.num_cells()), sb(b_.num_cells());
            for (CellId c = 0; c < a_.num_cells(); ++c)
                ids.emplace(sa[c] = sig(a_, color_a_, cof_a, c), 0);
            for (CellId c = 0; c < b_.num_cells(); ++c)
                ids.emplace(sb[c] = sig(b_, color_b_, cof_b, c), 0);
            int k = 0;
            for (auto& [s, id] : ids)
                id = k++;
            const bool stable = k == num_colors_;
            num_colors_ = k;
            for (CellId c = 0; c < a_.num_cells(); ++c)
                color_a_[c] = ids[sa[c]];
            for (CellId c = 0; c < b_.num_cells(); ++c)
                color_b_[c] = ids[sb[c]];
            if (stable)
                break;
        }
        by_color_.assign(num_colors_, {});
    }

    static std::vector<std::vector<std::pair<CellId, int>>> cofaces(const SimplicialSet& x)
    {
        std::vector<std::vector<std::pair<CellId, int>>> out(x.num_cells());
        for (CellId c = 0; c < x.num_cells(); ++c) {
            const auto faces = x.faces(c);
            for (int i = 0; i < static_cast<int>(faces.size()); ++i)
                out[faces[i].target].emplace_back(c, i);
        }
        return out;
    }

    bool assign(CellId x, CellId y)
    {
        if (fwd_[x] == y)
            return true;
        if (fwd_[x] >= 0 || bwd_[y] >= 0 || color_a_[x] != color_b_[y])
            return false;
        fwd_[x] = y;
        bwd_[y] = x;
        trail_.push_back(x);
        const auto fx = a_.faces(x);
        const auto fy = b_.faces(y);
        for (std::size_t i = 0; i < fx.size(); ++i) {
            if (!(fx[i].degen == fy[i].degen))
                return false;
            if (!assign(fx[i].target, fy[i].target))
                return false;
        }
        return true;
    }

    void undo(std::size_t mark)
    {
        while (trail_.size() > mark) {
            const CellId x = trail_.back();
            trail_.pop_back();
            bwd_[fwd_[x]] = -1;
            fwd_[x] = -1;
        }
    }

    bool search(std::size_t k)
    {
        while (k < order_.size() && fwd_[order_[k]] >= 0)
            ++k;
        if (k == order_.size())
            return true;
        const CellId x = order_[k];
        for (CellId y : by_color_[color_a_[x]]) {
            if (bwd_[y] >= 0)
                continue;
            const std::size_t mark = trail_.size();
            if (assign(x, y) && search(k + 1))
                return true;
            undo(mark);
        }
        return false;
    }

    const SimplicialSet& a_;
    const SimplicialSet& b_;
    std::vector<int> color_a_, color_b_;
    int num_colors_ = 0;
    std::vector<std::vector<CellId>> by_color_;
    std::vector<CellId> order_;
    std::vector<CellId> fwd_, bwd_;
    std::vector<CellId> trail_;
};

}  // namespace detail

/// A cell bijection a -> b preserving dimensions and face data, if any.
inline std::optional<std::vector<CellId>> find_isomorphism(const SimplicialSet& a, const SimplicialSet& b)
{
    return detail::IsoSearch(a, b).run();
}

inline bool are_isomorphic(const SimplicialSet& a, const SimplicialSet& b)
{
    return find_isomorphism(a, b).has_value();
}

/// The isomorphism a -> b as a simplicial map, if one exists.
inline std::optional<SimplicialMap> isomorphism_map(const SimplicialSet& a, const SimplicialSet& b)
{
    auto m = find_isomorphism(a, b);
    if (!m)
        return std::nullopt;
    std::vector<Simplex> img;
    for (CellId c = 0; c < a.num_cells(); ++c)
        img.push_back(b.cell((*m)[c]));
    return SimplicialMap::build(a, b, std::move(img));
}

}  // namespace forge
