// Standard simplices and their boundaries, subcomplexes, pushouts and
// binary products.
#pragma once

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "forge/congruence.hpp"

namespace forge {

namespace detail {

/// Non-empty subsets of {0..n}, ordered by size and then numerically.
inline std::vector<Mask> subsets_by_size(int n)
{
    std::vector<Mask> out;
    for (int k = 1; k <= n + 1; ++k)
        for_each_subset(n + 1, k, [&](Mask m) { out.push_back(m); });
    return out;
}

/// Removes the bit positions in `drop` from `m`, shifting higher bits down.
inline Mask compress_bits(Mask m, Mask drop)
{
    Mask out = 0;
    int k = 0;
    for (int i = 0; i < 32; ++i) {
        if (drop >> i & 1u)
            continue;
        if (m >> i & 1u)
            out |= Mask{1} << k;
        ++k;
    }
    return out;
}

}  // namespace detail

/// Cell ids of the standard simplex, indexed by vertex mask.
class StandardSimplexIndex {
public:
    explicit StandardSimplexIndex(int n) : n_(n), masks_(detail::subsets_by_size(n))
    {
        ids_.assign(std::size_t{full_mask(n)} + 1, -1);
        for (std::size_t i = 0; i < masks_.size(); ++i)
            ids_[masks_[i]] = static_cast<int>(i);
    }
    int rank() const { return n_; }
    CellId id(Mask m) const { return ids_.at(m); }
    Mask mask(CellId c) const { return masks_.at(c); }
    std::span<const Mask> masks() const { return masks_; }

private:
    int n_;
    std::vector<Mask> masks_;
    std::vector<int> ids_;
};

namespace detail {

inline SimplicialSet simplex_from_masks(int n, const std::vector<Mask>& masks, std::string name)
{
    std::unordered_map<Mask, int> id;
    for (std::size_t i = 0; i < masks.size(); ++i)
        id[masks[i]] = static_cast<int>(i);
    std::vector<CellSpec> specs;
    for (Mask m : masks) {
        const int d = std::popcount(m) - 1;
        CellSpec spec{d, {}};
        if (d > 0)
            for (int i = 0; i <= n; ++i)
                if (m >> i & 1u)
                    spec.faces.push_back({id.at(m & ~(Mask{1} << i)), identity(d - 1)});
        specs.push_back(std::move(spec));
    }
    return SimplicialSet::build(std::move(specs), std::move(name));
}

}  // namespace detail

/// Delta[n]; cell ids follow StandardSimplexIndex(n).
inline SimplicialSet standard_simplex(int n)
{
    check_rank(n);
    return detail::simplex_from_masks(n, detail::subsets_by_size(n), "Delta[" + std::to_string(n) + "]");
}

/// The boundary of Delta[n] (empty for n = 0), cells ordered as in Delta[n].
inline SimplicialSet boundary(int n)
{
    check_rank(n);
    std::vector<Mask> masks = detail::subsets_by_size(n);
    masks.pop_back();
    return detail::simplex_from_masks(n, masks, "dDelta[" + std::to_string(n) + "]");
}

inline SimplicialMap boundary_inclusion(int n)
{
    const SimplicialSet b = boundary(n);
    std::vector<Simplex> a;
    for (CellId c = 0; c < b.num_cells(); ++c)
        a.push_back(Simplex{c, identity(b.dim(c))});
    return SimplicialMap::build(b, standard_simplex(n), std::move(a));
}

/// Delta[n] with its boundary collapsed to a point; for n = 0 two points.
inline SimplicialSet sphere(int n)
{
    check_rank(n);
    const std::string name = "Delta[" + std::to_string(n) + "]/dDelta[" + std::to_string(n) + "]";
    if (n == 0)
        return SimplicialSet::build({{0, {}}, {0, {}}}, name);
    CellSpec top{n, {}};
    for (int i = 0; i <= n; ++i)
        top.faces.push_back({0, degen_from_repeats(n - 1, n >= 2 ? full_mask(n - 2) : 0)});
    return SimplicialSet::build({{0, {}}, top}, name);
}

/// The Yoneda map Delta[n] -> X sending the top cell to x.
inline SimplicialMap representing_map(const SimplicialSet& x, CellId cell)
{
    const int n = x.dim(cell);
    const StandardSimplexIndex idx(n);
    std::vector<Simplex> a;
    for (Mask m : idx.masks())
        a.push_back(x.face_of_cell(cell, m));
    return SimplicialMap::build(standard_simplex(n), x, std::move(a));
}

/// The map Delta[q] -> X sending the top cell to a possibly degenerate
/// simplex s of degree q.
inline SimplicialMap representing_map(const SimplicialSet& x, const Simplex& s)
{
    const int q = s.degree();
    const StandardSimplexIndex idx(q);
    std::vector<Simplex> a;
    for (Mask m : idx.masks())
        a.push_back(x.eval(s, face_from_mask(q, m)));
    return SimplicialMap::build(standard_simplex(q), x, std::move(a));
}

struct Subcomplex {
    SimplicialSet space;
    SimplicialMap inclusion;
    std::vector<CellId> cells;  // ambient id of each subcomplex cell
};

/// The smallest simplicial subset containing the seed cells. Cells keep the
/// relative order of their ambient ids.
inline Subcomplex generate(const SimplicialSet& x, std::span<const CellId> seeds, std::string name = {})
{
    std::vector<char> keep(x.num_cells(), 0);
    std::vector<CellId> stack;
    for (CellId c : seeds) {
        if (c < 0 || c >= x.num_cells())
            throw std::out_of_range("generate: invalid cell id " + std::to_string(c));
        if (!keep[c]) {
            keep[c] = 1;
            stack.push_back(c);
        }
    }
    while (!stack.empty()) {
        const CellId c = stack.back();
        stack.pop_back();
        for (const Face& f : x.faces(c))
            if (!keep[f.target]) {
                keep[f.target] = 1;
                stack.push_back(f.target);
            }
    }
    std::vector<int> new_id(x.num_cells(), -1);
    std::vector<CellId> cells;
    for (CellId c = 0; c < x.num_cells(); ++c)
        if (keep[c]) {
            new_id[c] = static_cast<int>(cells.size());
            cells.push_back(c);
        }
    std::vector<CellSpec> specs;
    std::vector<Simplex> inc;
    for (CellId c : cells) {
        CellSpec spec{x.dim(c), {}};
        for (const Face& f : x.faces(c))
            spec.faces.push_back({new_id[f.target], f.degen});
        specs.push_back(std::move(spec));
        inc.push_back(x.cell(c));
    }
    SimplicialSet sub = SimplicialSet::build(std::move(specs), std::move(name));
    SimplicialMap i = SimplicialMap::build(sub, x, std::move(inc));
    return {std::move(sub), std::move(i), std::move(cells)};
}

inline Subcomplex generate(const SimplicialSet& x, std::initializer_list<CellId> seeds, std::string name = {})
{
    return generate(x, std::span<const CellId>(seeds.begin(), seeds.size()), std::move(name));
}

/// Image of f as a subcomplex of its target.
inline Subcomplex image(const SimplicialMap& f)
{
    std::vector<CellId> seeds;
    for (const Simplex& s : f.assignment())
        seeds.push_back(s.cell);
    return generate(f.target(), seeds);
}

struct Coproduct {
    SimplicialSet space;
    SimplicialMap left;
    SimplicialMap right;
};

inline Coproduct disjoint_union(const SimplicialSet& x, const SimplicialSet& y, std::string name = {})
{
    const int shift = x.num_cells();
    std::vector<CellSpec> specs = x.specs();
    for (CellSpec spec : y.specs()) {
        for (Face& f : spec.faces)
            f.target += shift;
        specs.push_back(std::move(spec));
    }
    SimplicialSet u = SimplicialSet::build(std::move(specs), std::move(name));
    std::vector<Simplex> l, r;
    for (CellId c = 0; c < x.num_cells(); ++c)
        l.push_back(u.cell(c));
    for (CellId c = 0; c < y.num_cells(); ++c)
        r.push_back(u.cell(c + shift));
    SimplicialMap lm = SimplicialMap::build(x, u, std::move(l));
    SimplicialMap rm = SimplicialMap::build(y, u, std::move(r));
    return {std::move(u), std::move(lm), std::move(rm)};
}

/// The map X + Y -> Z restricting to h and k.
inline SimplicialMap copair(const Coproduct& u, const SimplicialMap& h, const SimplicialMap& k)
{
    if (!(h.target() == k.target()))
        throw std::invalid_argument("copair: maps have different targets");
    std::vector<Simplex> a(h.assignment().begin(), h.assignment().end());
    a.insert(a.end(), k.assignment().begin(), k.assignment().end());
    return SimplicialMap::build(u.space, h.target(), std::move(a));
}

/// X +_A Y for f : A -> X and g : A -> Y, computed degreewise as a quotient
/// of the disjoint union.
struct Pushout {
    SimplicialSet space;
    SimplicialMap left;        // X -> P
    SimplicialMap right;       // Y -> P
    Coproduct sum;             // X + Y
    SimplicialMap projection;  // X + Y -> P

    /// The unique map P -> Z restricting to h on X and k on Y. Throws
    /// std::logic_error if h and k disagree on A.
    SimplicialMap induced(const SimplicialMap& h, const SimplicialMap& k) const
    {
        return factor_through(projection, copair(sum, h, k));
    }
};

inline Pushout pushout(const SimplicialMap& f, const SimplicialMap& g, std::string name = {})
{
    if (!(f.source() == g.source()))
        throw std::invalid_argument("pushout: maps have different sources");
    Coproduct u = disjoint_union(f.target(), g.target());
    const int top = std::max({f.source().dimension(), f.target().dimension(), g.target().dimension(), 0});
    Congruence cong(std::make_shared<const SimplexTable>(u.space, top));
    for (CellId a = 0; a < f.source().num_cells(); ++a)
        cong.merge(u.left.apply(f.image(a)), u.right.apply(g.image(a)));
    QuotientResult q = quotient(cong, std::move(name));
    SimplicialMap l = compose(u.left, q.projection);
    SimplicialMap r = compose(u.right, q.projection);
    return {std::move(q.space), std::move(l), std::move(r), std::move(u), std::move(q.projection)};
}

/// Binary product. Cells of degree q are the pairs of q-simplices whose
/// degeneracies share no repeat position.
class Product {
public:
    Product(SimplicialSet x, SimplicialSet y, std::string name = {}) : x_(std::move(x)), y_(std::move(y))
    {
        std::vector<CellSpec> specs;
        for (int q = 0; q <= x_.dimension() + y_.dimension(); ++q)
            for (CellId a = 0; a < x_.num_cells(); ++a)
                for (CellId b = 0; b < y_.num_cells(); ++b) {
                    const int p = x_.dim(a), r = y_.dim(b);
                    if (p > q || r > q || p + r < q)
                        continue;
                    for_each_subset(q, q - p, [&](Mask ra) {
                        for_each_subset(q, q - r, [&](Mask rb) {
                            if (ra & rb)
                                return;
                            ids_.emplace(Key{q, a, ra, b, rb}, static_cast<int>(pairs_.size()));
                            pairs_.push_back({q, a, ra, b, rb});
                        });
                    });
                }
        for (const Key& k : pairs_) {
            CellSpec spec{k.q, {}};
            if (k.q > 0)
                for (int i = 0; i <= k.q; ++i) {
                    const Simplex s = x_.eval({k.a, degen_from_repeats(k.q, k.ra)}, make_face(i, k.q));
                    const Simplex t = y_.eval({k.b, degen_from_repeats(k.q, k.rb)}, make_face(i, k.q));
                    const Simplex f = pair(s, t);
                    spec.faces.push_back({f.cell, f.degen});
                }
            specs.push_back(std::move(spec));
        }
        space_ = SimplicialSet::build(std::move(specs), std::move(name));
        std::vector<Simplex> p1, p2;
        for (const Key& k : pairs_) {
            p1.push_back({k.a, degen_from_repeats(k.q, k.ra)});
            p2.push_back({k.b, degen_from_repeats(k.q, k.rb)});
        }
        first_ = SimplicialMap::build(space_, x_, std::move(p1));
        second_ = SimplicialMap::build(space_, y_, std::move(p2));
    }

    const SimplicialSet& space() const { return space_; }
    const SimplicialMap& first() const { return first_; }
    const SimplicialMap& second() const { return second_; }

    /// Normal form of the pair (s, t) of equal-degree simplices.
    Simplex pair(const Simplex& s, const Simplex& t) const
    {
        if (s.degree() != t.degree())
            throw std::invalid_argument("product pair: degree mismatch");
        const int q = s.degree();
        const Mask ra = s.degen.repeat_mask(), rb = t.degen.repeat_mask();
        const Mask common = ra & rb;
        const int q2 = q - std::popcount(common);
        const Key key{q2, s.cell, detail::compress_bits(ra, common), t.cell, detail::compress_bits(rb, common)};
        return {ids_.at(key), degen_from_repeats(q, common)};
    }

    /// The map (f, g) : W -> X x Y.
    SimplicialMap pairing(const SimplicialMap& f, const SimplicialMap& g) const
    {
        std::vector<Simplex> a;
        for (CellId c = 0; c < f.source().num_cells(); ++c)
            a.push_back(pair(f.image(c), g.image(c)));
        return SimplicialMap::build(f.source(), space_, std::move(a));
    }

private:
    struct Key {
        int q;
        CellId a;
        Mask ra;
        CellId b;
        Mask rb;
        friend bool operator==(const Key&, const Key&) = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const
        {
            std::size_t h = static_cast<std::size_t>(k.q);
            h = h * 1000003u ^ static_cast<std::size_t>(k.a);
            h = h * 1000003u ^ k.ra;
            h = h * 1000003u ^ static_cast<std::size_t>(k.b);
            h = h * 1000003u ^ k.rb;
            return h;
        }
    };

    SimplicialSet x_, y_, space_;
    SimplicialMap first_, second_;
    std::vector<Key> pairs_;
    std::unordered_map<Key, int, KeyHash> ids_;
};

inline Product product(const SimplicialSet& x, const SimplicialSet& y, std::string name = {})
{
    return Product(x, y, std::move(name));
}

}  // namespace forge
