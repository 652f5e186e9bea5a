// Finite simplicial sets presented by their non-degenerate cells, simplicial
// maps, and the degreewise predicates used throughout the library.
#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "forge/delta.hpp"

namespace forge {

using CellId = int;

/// A simplex in Eilenberg-Zilber normal form: the non-degenerate cell it
/// degenerates from, and the degeneracy operator doing it.
struct Simplex {
    CellId cell = -1;
    Operator degen;

    int degree() const { return degen.src(); }
    bool is_nondegenerate() const { return degen.src() == degen.dst(); }

    friend bool operator==(const Simplex& a, const Simplex& b)
    {
        return a.cell == b.cell && a.degen == b.degen;
    }
};

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const
    {
        return static_cast<std::size_t>(s.cell) * 0x9e3779b97f4a7c15ull ^ s.degen.hash();
    }
};

/// Normal form of (cell) * delta_i: the cell it lands on and a degeneracy.
struct Face {
    CellId target = -1;
    Operator degen;

    friend bool operator==(const Face& a, const Face& b)
    {
        return a.target == b.target && a.degen == b.degen;
    }
};

struct CellSpec {
    int dim = 0;
    std::vector<Face> faces;  // dim + 1 entries, none for vertices
};

inline std::size_t binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    return r;
}

/// Calls fn(mask) for every subset of {0..n-1} with k elements, in
/// increasing numeric order.
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn)
{
    if (k < 0 || k > n)
        return;
    if (k == 0) {
        fn(Mask{0});
        return;
    }
    const std::uint64_t limit = std::uint64_t{1} << n;
    std::uint64_t m = (std::uint64_t{1} << k) - 1;
    while (m < limit) {
        fn(static_cast<Mask>(m));
        const std::uint64_t c = m & (~m + 1);
        const std::uint64_t r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
}

class SimplicialSet {
public:
    SimplicialSet() : impl_(std::make_shared<Impl>()) {}

    /// Validates the presentation: face pairs in normal form with the right
    /// ranks, and the simplicial identity d_i d_j = d_{j-1} d_i (i < j).
    static SimplicialSet build(std::vector<CellSpec> cells, std::string name = {})
    {
        auto impl = std::make_shared<Impl>();
        impl->name = std::move(name);
        const int n = static_cast<int>(cells.size());
        impl->dims.resize(n);
        impl->faces.resize(n);
        impl->table.resize(n);
        int top = -1;
        for (int c = 0; c < n; ++c) {
            const CellSpec& spec = cells[c];
            if (spec.dim < 0 || spec.dim > kMaxRank)
                throw std::invalid_argument("cell " + std::to_string(c) + ": bad dimension");
            const std::size_t want = spec.dim == 0 ? 0 : static_cast<std::size_t>(spec.dim) + 1;
            if (spec.faces.size() != want)
                throw std::invalid_argument("cell " + std::to_string(c) + ": expected "
                                            + std::to_string(want) + " faces");
            impl->dims[c] = spec.dim;
            top = std::max(top, spec.dim);
        }
        impl->by_dim.resize(top + 1);
        for (int c = 0; c < n; ++c)
            impl->by_dim[impl->dims[c]].push_back(c);

        SimplicialSet x;
        x.impl_ = impl;
        for (int d = 0; d <= top; ++d) {
            for (CellId c : impl->by_dim[d]) {
                for (std::size_t i = 0; i < cells[c].faces.size(); ++i) {
                    const Face& f = cells[c].faces[i];
                    const std::string where =
                        "cell " + std::to_string(c) + " face " + std::to_string(i) + ": ";
                    if (f.target < 0 || f.target >= n)
                        throw std::invalid_argument(where + "dangling cell id "
                                                    + std::to_string(f.target));
                    if (impl->dims[f.target] >= d)
                        throw std::invalid_argument(where + "target has too high a dimension");
                    if (f.degen.src() != d - 1 || f.degen.dst() != impl->dims[f.target]
                        || !f.degen.is_degeneracy())
                        throw std::invalid_argument(where + "face pair is not in normal form");
                }
                impl->faces[c] = std::move(cells[c].faces);
                for (int j = 1; d >= 2 && j <= d; ++j)
                    for (int i = 0; i < j; ++i) {
                        const Simplex a = x.eval(x.stored_face(c, j), make_face(i, d - 1));
                        const Simplex b = x.eval(x.stored_face(c, i), make_face(j - 1, d - 1));
                        if (!(a == b))
                            throw std::invalid_argument(
                                "cell " + std::to_string(c) + ": simplicial identity fails for d"
                                + std::to_string(i) + " d" + std::to_string(j));
                    }
                x.fill_table(c);
            }
        }
        return x;
    }

    const std::string& name() const { return impl_->name; }

    SimplicialSet renamed(std::string name) const
    {
        auto impl = std::make_shared<Impl>(*impl_);
        impl->name = std::move(name);
        SimplicialSet x;
        x.impl_ = std::move(impl);
        return x;
    }

    int num_cells() const { return static_cast<int>(impl_->dims.size()); }
    bool empty() const { return impl_->dims.empty(); }
    int dim(CellId c) const { return impl_->dims.at(c); }

    /// Largest cell dimension, -1 when empty.
    int dimension() const { return static_cast<int>(impl_->by_dim.size()) - 1; }

    std::span<const Face> faces(CellId c) const { return impl_->faces.at(c); }

    std::span<const CellId> cells_of_dim(int d) const
    {
        if (d < 0 || d > dimension())
            return {};
        return impl_->by_dim[d];
    }

    std::vector<int> cell_counts() const
    {
        std::vector<int> counts;
        for (const auto& v : impl_->by_dim)
            counts.push_back(static_cast<int>(v.size()));
        return counts;
    }

    Simplex cell(CellId c) const { return {c, identity(dim(c))}; }

    Simplex stored_face(CellId c, int i) const
    {
        const Face& f = impl_->faces[c][i];
        return {f.target, f.degen};
    }

    /// Normal form of c * mu where mu is the face operator with this image.
    Simplex face_of_cell(CellId c, Mask image) const
    {
        const int n = impl_->dims[c];
        if (image == full_mask(n))
            return cell(c);
        const auto& tab = impl_->table[c];
        if (!tab.empty()) {
            const Entry& e = tab[image - 1];
            return {e.cell, degen_from_repeats(std::popcount(image) - 1, e.repeats)};
        }
        return compute_face(c, image);
    }

    /// s * a, in normal form. Requires a.dst() == s.degree().
    Simplex eval(const Simplex& s, const Operator& a) const
    {
        if (a.dst() != s.degree())
            throw std::invalid_argument("eval: rank mismatch");
        const Operator beta = compose(a, s.degen);
        const Simplex r = face_of_cell(s.cell, beta.image_mask());
        const Operator tau = degen_from_repeats(beta.src(), beta.repeat_mask());
        return {r.cell, compose(tau, r.degen)};
    }

    CellId vertex(const Simplex& s, int j) const
    {
        const int v = s.degen[j];
        return face_of_cell(s.cell, Mask{1} << v).cell;
    }

    std::vector<CellId> vertices(const Simplex& s) const
    {
        std::vector<CellId> out(s.degree() + 1);
        for (int j = 0; j <= s.degree(); ++j)
            out[j] = vertex(s, j);
        return out;
    }

    std::vector<CellSpec> specs() const
    {
        std::vector<CellSpec> out(num_cells());
        for (int c = 0; c < num_cells(); ++c)
            out[c] = {impl_->dims[c], impl_->faces[c]};
        return out;
    }

    bool same_as(const SimplicialSet& other) const { return impl_ == other.impl_; }

    /// Structural equality of the presentations (same ids, same face data).
    friend bool operator==(const SimplicialSet& a, const SimplicialSet& b)
    {
        return a.impl_ == b.impl_
               || (a.impl_->dims == b.impl_->dims && a.impl_->faces == b.impl_->faces);
    }

private:
    struct Entry {
        CellId cell;
        Mask repeats;
    };
    struct Impl {
        std::string name;
        std::vector<int> dims;
        std::vector<std::vector<Face>> faces;
        std::vector<std::vector<Entry>> table;  // indexed by image mask - 1
        std::vector<std::vector<CellId>> by_dim;
    };

    static constexpr int kTableMaxDim = 11;

    Simplex compute_face(CellId c, Mask image) const
    {
        const int n = impl_->dims[c];
        int i = n;
        while (image >> i & 1u)
            --i;
        const Face& f = impl_->faces[c][i];
        const Mask low = image & ((Mask{1} << i) - 1);
        const Mask high = (image >> (i + 1)) << i;
        const Operator beta = compose(face_from_mask(n - 1, low | high), f.degen);
        const Simplex r = face_of_cell(f.target, beta.image_mask());
        const Operator tau = degen_from_repeats(beta.src(), beta.repeat_mask());
        return {r.cell, compose(tau, r.degen)};
    }

    void fill_table(CellId c)
    {
        const int n = impl_->dims[c];
        if (n > kTableMaxDim)
            return;
        auto& impl = const_cast<Impl&>(*impl_);
        std::vector<Entry> tab(full_mask(n));
        for (Mask m = 1; m < full_mask(n); ++m) {
            const Simplex s = compute_face(c, m);
            tab[m - 1] = {s.cell, s.degen.repeat_mask()};
        }
        tab[full_mask(n) - 1] = {c, 0};
        impl.table[c] = std::move(tab);
    }

    std::shared_ptr<const Impl> impl_;
};

/// Number of simplices of degree q.
inline std::size_t count_simplices(const SimplicialSet& x, int q)
{
    std::size_t total = 0;
    for (int d = 0; d <= std::min(q, x.dimension()); ++d)
        total += x.cells_of_dim(d).size() * binomial(q, q - d);
    return total;
}

/// Calls fn(simplex) for every simplex of degree q.
template <typename Fn>
void for_each_simplex(const SimplicialSet& x, int q, Fn&& fn)
{
    for (int d = 0; d <= std::min(q, x.dimension()); ++d)
        for (CellId c : x.cells_of_dim(d))
            for_each_subset(q, q - d, [&](Mask rep) { fn(Simplex{c, degen_from_repeats(q, rep)}); });
}

inline std::vector<Simplex> simplices_of_degree(const SimplicialSet& x, int q)
{
    std::vector<Simplex> out;
    out.reserve(count_simplices(x, q));
    for_each_simplex(x, q, [&](const Simplex& s) { out.push_back(s); });
    return out;
}

inline Simplex eval(const SimplicialSet& x, const Simplex& s, const Operator& a) { return x.eval(s, a); }

inline std::vector<CellId> vertices(const SimplicialSet& x, const Simplex& s) { return x.vertices(s); }

/// Same degree and the same vertex sequence.
inline bool are_siblings(const SimplicialSet& x, const Simplex& s, const Simplex& t)
{
    if (s.degree() != t.degree())
        throw std::invalid_argument("are_siblings: degree mismatch");
    for (int j = 0; j <= s.degree(); ++j)
        if (x.vertex(s, j) != x.vertex(t, j))
            return false;
    return true;
}

/// Pairwise distinct vertices.
inline bool is_embedded(const SimplicialSet& x, const Simplex& s)
{
    std::vector<CellId> v = x.vertices(s);
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
}

/// A simplicial map, given by where it sends each cell of the source.
class SimplicialMap {
public:
    SimplicialMap() = default;

    /// Checks ranks and compatibility with every stored face.
    static SimplicialMap build(SimplicialSet source, SimplicialSet target, std::vector<Simplex> assignment)
    {
        if (static_cast<int>(assignment.size()) != source.num_cells())
            throw std::invalid_argument("simplicial map: assignment size differs from cell count");
        for (int c = 0; c < source.num_cells(); ++c) {
            const Simplex& s = assignment[c];
            if (s.cell < 0 || s.cell >= target.num_cells())
                throw std::invalid_argument("simplicial map: cell " + std::to_string(c)
                                            + " sent to a missing cell");
            if (s.degree() != source.dim(c) || s.degen.dst() != target.dim(s.cell)
                || !s.degen.is_degeneracy())
                throw std::invalid_argument("simplicial map: cell " + std::to_string(c)
                                            + " sent to a simplex of the wrong shape");
        }
        SimplicialMap f;
        f.source_ = std::move(source);
        f.target_ = std::move(target);
        f.assignment_ = std::move(assignment);
        for (int c = 0; c < f.source_.num_cells(); ++c) {
            const int d = f.source_.dim(c);
            if (d == 0)
                continue;
            for (int i = 0; i <= d; ++i) {
                const Simplex lhs = f.target_.eval(f.assignment_[c], make_face(i, d));
                const Simplex rhs = f.apply(f.source_.stored_face(c, i));
                if (!(lhs == rhs))
                    throw std::invalid_argument("simplicial map: not compatible with face "
                                                + std::to_string(i) + " of cell "
                                                + std::to_string(c));
            }
        }
        return f;
    }

    static SimplicialMap identity_of(const SimplicialSet& x)
    {
        SimplicialMap f;
        f.source_ = x;
        f.target_ = x;
        f.assignment_.reserve(x.num_cells());
        for (int c = 0; c < x.num_cells(); ++c)
            f.assignment_.push_back(x.cell(c));
        return f;
    }

    const SimplicialSet& source() const { return source_; }
    const SimplicialSet& target() const { return target_; }
    const Simplex& image(CellId c) const { return assignment_.at(c); }
    std::span<const Simplex> assignment() const { return assignment_; }

    Simplex apply(const Simplex& s) const
    {
        const Simplex& img = assignment_[s.cell];
        return {img.cell, compose(s.degen, img.degen)};
    }

    friend bool operator==(const SimplicialMap& a, const SimplicialMap& b)
    {
        return a.source_ == b.source_ && a.target_ == b.target_ && a.assignment_ == b.assignment_;
    }

private:
    SimplicialSet source_;
    SimplicialSet target_;
    std::vector<Simplex> assignment_;
};

/// second o first.
inline SimplicialMap compose(const SimplicialMap& first, const SimplicialMap& second)
{
    if (!(first.target() == second.source()))
        throw std::invalid_argument("compose: maps are not composable");
    std::vector<Simplex> a;
    a.reserve(first.source().num_cells());
    for (int c = 0; c < first.source().num_cells(); ++c)
        a.push_back(second.apply(first.image(c)));
    return SimplicialMap::build(first.source(), second.target(), std::move(a));
}

inline bool injective_in_degree(const SimplicialMap& f, int q)
{
    std::unordered_set<Simplex, SimplexHash> seen;
    seen.reserve(count_simplices(f.source(), q));
    bool ok = true;
    for_each_simplex(f.source(), q, [&](const Simplex& s) {
        if (ok && !seen.insert(f.apply(s)).second)
            ok = false;
    });
    return ok;
}

inline bool surjective_in_degree(const SimplicialMap& f, int q)
{
    std::unordered_set<Simplex, SimplexHash> seen;
    for_each_simplex(f.source(), q, [&](const Simplex& s) { seen.insert(f.apply(s)); });
    return seen.size() == count_simplices(f.target(), q);
}

/// Injective in every degree. Degrees above dim(source) hold only
/// degeneracies of lower simplices, so 0..dim(source) is checked.
inline bool is_degreewise_injective(const SimplicialMap& f)
{
    for (int q = 0; q <= f.source().dimension(); ++q)
        if (!injective_in_degree(f, q))
            return false;
    return true;
}

/// Every target cell is the non-degenerate part of the image of a cell.
inline bool is_degreewise_surjective(const SimplicialMap& f)
{
    std::vector<char> hit(f.target().num_cells(), 0);
    for (const Simplex& s : f.assignment())
        hit[s.cell] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
}

/// Cells go to cells, bijectively.
inline bool is_isomorphism(const SimplicialMap& f)
{
    if (f.source().num_cells() != f.target().num_cells())
        return false;
    std::vector<char> hit(f.target().num_cells(), 0);
    for (const Simplex& s : f.assignment()) {
        if (!s.is_nondegenerate() || hit[s.cell])
            return false;
        hit[s.cell] = 1;
    }
    return true;
}

/// The unique m with m o eta == h, for a degreewise surjective eta.
/// Throws std::logic_error if h does not factor.
inline SimplicialMap factor_through(const SimplicialMap& eta, const SimplicialMap& h)
{
    if (!(eta.source() == h.source()))
        throw std::invalid_argument("factor_through: maps have different sources");
    const SimplicialSet& q = eta.target();
    std::vector<int> pre(q.num_cells(), -1);
    for (int c = 0; c < eta.source().num_cells(); ++c) {
        const Simplex& s = eta.image(c);
        if (s.is_nondegenerate() && pre[s.cell] < 0)
            pre[s.cell] = c;
    }
    std::vector<Simplex> a(q.num_cells());
    for (int w = 0; w < q.num_cells(); ++w) {
        if (pre[w] < 0)
            throw std::invalid_argument("factor_through: first map is not surjective");
        a[w] = h.image(pre[w]);
    }
    SimplicialMap m;
    try {
        m = SimplicialMap::build(q, h.target(), std::move(a));
    } catch (const std::invalid_argument& e) {
        throw std::logic_error(std::string("factor_through: induced map is not simplicial: ") + e.what());
    }
    for (int c = 0; c < eta.source().num_cells(); ++c)
        if (!(m.apply(eta.image(c)) == h.image(c)))
            throw std::logic_error("factor_through: map is not constant on fibres (cell "
                                   + std::to_string(c) + ")");
    return m;
}

}  // namespace forge
