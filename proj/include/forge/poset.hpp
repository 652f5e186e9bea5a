// Finite posets, monotone maps, nerves, the face poset of a simplicial set,
// (co)sieves, Dwyer maps and pushouts along them.
#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "forge/colimits.hpp"

namespace forge {

using Bits = boost::dynamic_bitset<>;

class FinPoset {
public:
    FinPoset() : impl_(std::make_shared<Impl>()) {}

    /// Order generated by the given pairs (a <= b); reflexive-transitive
    /// closure is taken. Throws std::invalid_argument if it is not
    /// antisymmetric.
    static FinPoset build(std::vector<std::string> labels, const std::vector<std::pair<int, int>>& relations,
                          std::string name = {})
    {
        const int n = static_cast<int>(labels.size());
        std::vector<Bits> up(n, Bits(n));
        for (int i = 0; i < n; ++i)
            up[i].set(i);
        for (auto [a, b] : relations) {
            if (a < 0 || a >= n || b < 0 || b >= n)
                throw std::invalid_argument("poset: relation mentions a missing element");
            up[a].set(b);
        }
        close(up);
        return from_rows(std::move(labels), std::move(up), std::move(name));
    }

    /// up[a] holds every b with a <= b. The rows must already be closed.
    static FinPoset from_rows(std::vector<std::string> labels, std::vector<Bits> up, std::string name = {})
    {
        const int n = static_cast<int>(labels.size());
        if (static_cast<int>(up.size()) != n)
            throw std::invalid_argument("poset: row count differs from element count");
        auto impl = std::make_shared<Impl>();
        impl->name = std::move(name);
        impl->labels = std::move(labels);
        impl->down.assign(n, Bits(n));
        for (int a = 0; a < n; ++a) {
            if (up[a].size() != static_cast<std::size_t>(n) || !up[a].test(a))
                throw std::invalid_argument("poset: relation is not reflexive");
            for (int b = static_cast<int>(up[a].find_first()); b >= 0 && b < n;
                 b = static_cast<int>(up[a].find_next(b))) {
                if (b != a && up[b].test(a))
                    throw std::invalid_argument("poset: relation is not antisymmetric ("
                                                + impl->labels[a] + ", " + impl->labels[b] + ")");
                if (!up[b].is_subset_of(up[a]))
                    throw std::invalid_argument("poset: relation is not transitive");
                impl->down[b].set(a);
            }
        }
        impl->up = std::move(up);
        FinPoset p;
        p.impl_ = std::move(impl);
        return p;
    }

    const std::string& name() const { return impl_->name; }
    int size() const { return static_cast<int>(impl_->labels.size()); }
    const std::string& label(int a) const { return impl_->labels.at(a); }
    std::span<const std::string> labels() const { return impl_->labels; }

    bool leq(int a, int b) const { return impl_->up[a].test(b); }
    bool less(int a, int b) const { return a != b && leq(a, b); }
    const Bits& up(int a) const { return impl_->up[a]; }
    const Bits& down(int a) const { return impl_->down[a]; }

    /// Pairs a < b with nothing strictly between them.
    std::vector<std::pair<int, int>> covers() const
    {
        std::vector<std::pair<int, int>> out;
        for (int a = 0; a < size(); ++a)
            for (int b = 0; b < size(); ++b) {
                if (!less(a, b))
                    continue;
                Bits between = up(a) & down(b);
                if (between.count() == 2)
                    out.emplace_back(a, b);
            }
        return out;
    }

    int index_of(std::string_view label) const
    {
        for (int a = 0; a < size(); ++a)
            if (impl_->labels[a] == label)
                return a;
        return -1;
    }

    friend bool operator==(const FinPoset& a, const FinPoset& b)
    {
        return a.impl_ == b.impl_ || (a.impl_->labels == b.impl_->labels && a.impl_->up == b.impl_->up);
    }

    static void close(std::vector<Bits>& up)
    {
        // Warshall on rows.
        const int n = static_cast<int>(up.size());
        for (int k = 0; k < n; ++k)
            for (int a = 0; a < n; ++a)
                if (up[a].test(k))
                    up[a] |= up[k];
    }

private:
    struct Impl {
        std::string name;
        std::vector<std::string> labels;
        std::vector<Bits> up;
        std::vector<Bits> down;
    };
    std::shared_ptr<const Impl> impl_;
};

class MonotoneMap {
public:
    MonotoneMap() = default;

    static MonotoneMap build(FinPoset source, FinPoset target, std::vector<int> assignment)
    {
        if (static_cast<int>(assignment.size()) != source.size())
            throw std::invalid_argument("monotone map: assignment size differs from element count");
        for (int v : assignment)
            if (v < 0 || v >= target.size())
                throw std::invalid_argument("monotone map: value out of range");
        for (int a = 0; a < source.size(); ++a)
            for (int b = 0; b < source.size(); ++b)
                if (source.leq(a, b) && !target.leq(assignment[a], assignment[b]))
                    throw std::invalid_argument("monotone map: order not preserved at (" + source.label(a)
                                                + ", " + source.label(b) + ")");
        MonotoneMap f;
        f.source_ = std::move(source);
        f.target_ = std::move(target);
        f.assignment_ = std::move(assignment);
        return f;
    }

    static MonotoneMap identity_of(const FinPoset& p)
    {
        std::vector<int> a(p.size());
        for (int i = 0; i < p.size(); ++i)
            a[i] = i;
        return build(p, p, std::move(a));
    }

    const FinPoset& source() const { return source_; }
    const FinPoset& target() const { return target_; }
    int operator()(int a) const { return assignment_.at(a); }
    std::span<const int> assignment() const { return assignment_; }

    bool is_injective() const
    {
        std::vector<int> v = assignment_;
        std::sort(v.begin(), v.end());
        return std::adjacent_find(v.begin(), v.end()) == v.end();
    }

    /// Injective and reflecting the order: an isomorphism onto a full subposet.
    bool is_embedding() const
    {
        if (!is_injective())
            return false;
        for (int a = 0; a < source_.size(); ++a)
            for (int b = 0; b < source_.size(); ++b)
                if (target_.leq(assignment_[a], assignment_[b]) && !source_.leq(a, b))
                    return false;
        return true;
    }

    std::vector<int> image() const
    {
        std::vector<int> v = assignment_;
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    }

    friend bool operator==(const MonotoneMap& a, const MonotoneMap& b)
    {
        return a.source_ == b.source_ && a.target_ == b.target_ && a.assignment_ == b.assignment_;
    }

private:
    FinPoset source_;
    FinPoset target_;
    std::vector<int> assignment_;
};

/// second o first.
inline MonotoneMap compose(const MonotoneMap& first, const MonotoneMap& second)
{
    if (!(first.target() == second.source()))
        throw std::invalid_argument("compose: monotone maps are not composable");
    std::vector<int> a;
    for (int x : first.assignment())
        a.push_back(second(x));
    return MonotoneMap::build(first.source(), second.target(), std::move(a));
}

/// The chain 0 < 1 < ... < n.
inline FinPoset chain(int n)
{
    std::vector<std::string> labels;
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i <= n; ++i) {
        labels.push_back(std::to_string(i));
        if (i > 0)
            rel.emplace_back(i - 1, i);
    }
    return FinPoset::build(std::move(labels), rel, "[" + std::to_string(n) + "]");
}

/// Product order; the pair (a, b) has id a * |R| + b.
inline FinPoset poset_product(const FinPoset& p, const FinPoset& r)
{
    const int n = p.size() * r.size();
    std::vector<std::string> labels;
    std::vector<Bits> up(n, Bits(n));
    for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < r.size(); ++b)
            labels.push_back("(" + p.label(a) + "," + r.label(b) + ")");
    for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < r.size(); ++b)
            for (int c = 0; c < p.size(); ++c)
                for (int d = 0; d < r.size(); ++d)
                    if (p.leq(a, c) && r.leq(b, d))
                        up[a * r.size() + b].set(c * r.size() + d);
    return FinPoset::from_rows(std::move(labels), std::move(up), p.name() + "x" + r.name());
}

/// p |-> (p, end) into P x [1].
inline MonotoneMap cylinder_end(const FinPoset& p, int end)
{
    const FinPoset cyl = poset_product(p, chain(1));
    std::vector<int> a;
    for (int i = 0; i < p.size(); ++i)
        a.push_back(i * 2 + end);
    return MonotoneMap::build(p, cyl, std::move(a));
}

inline MonotoneMap cylinder_projection(const FinPoset& p)
{
    const FinPoset cyl = poset_product(p, chain(1));
    std::vector<int> a;
    for (int i = 0; i < cyl.size(); ++i)
        a.push_back(i / 2);
    return MonotoneMap::build(cyl, p, std::move(a));
}

inline MonotoneMap to_point(const FinPoset& p)
{
    return MonotoneMap::build(p, chain(0), std::vector<int>(p.size(), 0));
}

/// The full subposet on the given elements (ascending) and its inclusion.
inline MonotoneMap full_subposet(const FinPoset& q, std::vector<int> elements, std::string name = {})
{
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    const int n = static_cast<int>(elements.size());
    std::vector<std::string> labels;
    std::vector<Bits> up(n, Bits(n));
    for (int i = 0; i < n; ++i) {
        labels.push_back(q.label(elements.at(i)));
        for (int j = 0; j < n; ++j)
            if (q.leq(elements[i], elements[j]))
                up[i].set(j);
    }
    FinPoset sub = FinPoset::from_rows(std::move(labels), std::move(up), std::move(name));
    return MonotoneMap::build(std::move(sub), q, std::move(elements));
}

/// The unique g with f = g followed by the inclusion. Throws if f leaves the subposet.
inline MonotoneMap corestrict(const MonotoneMap& f, const MonotoneMap& inclusion)
{
    std::vector<int> a;
    for (int x : f.assignment()) {
        const auto im = inclusion.assignment();
        auto it = std::find(im.begin(), im.end(), x);
        if (it == im.end())
            throw std::invalid_argument("corestrict: value outside the subposet");
        a.push_back(static_cast<int>(it - im.begin()));
    }
    return MonotoneMap::build(f.source(), inclusion.source(), std::move(a));
}

/// Downward closed.
inline bool is_sieve(const FinPoset& b, std::span<const int> elements)
{
    Bits in(b.size());
    for (int e : elements) {
        if (e < 0 || e >= b.size())
            throw std::invalid_argument("is_sieve: element outside the poset");
        in.set(e);
    }
    for (int e : elements)
        if (!b.down(e).is_subset_of(in))
            return false;
    return true;
}

/// Upward closed.
inline bool is_cosieve(const FinPoset& b, std::span<const int> elements)
{
    Bits in(b.size());
    for (int e : elements) {
        if (e < 0 || e >= b.size())
            throw std::invalid_argument("is_cosieve: element outside the poset");
        in.set(e);
    }
    for (int e : elements)
        if (!b.up(e).is_subset_of(in))
            return false;
    return true;
}

inline std::optional<int> join(const FinPoset& p, int a, int b)
{
    const Bits upper = p.up(a) & p.up(b);
    for (std::size_t u = upper.find_first(); u != Bits::npos; u = upper.find_next(u))
        if (upper.is_subset_of(p.up(static_cast<int>(u))))
            return static_cast<int>(u);
    return std::nullopt;
}

/// A factorization P -> W -> Q of a Dwyer map: W is a cosieve of Q and r
/// is right adjoint to the inclusion of P.
struct DwyerWitness {
    std::vector<int> cosieve;     // elements of Q, ascending
    std::vector<int> retraction;  // r(w) for each entry of cosieve
};

/// Any admissible W contains the upward closure of im k, and an element of
/// W above no k(p) has no maximal lower bound in P. So W is forced to be
/// that upward closure and only it is tested.
inline std::optional<DwyerWitness> is_dwyer(const MonotoneMap& k)
{
    const FinPoset& p = k.source();
    const FinPoset& q = k.target();
    if (!k.is_embedding())
        return std::nullopt;
    const std::vector<int> im = k.image();
    if (!is_sieve(q, im))
        return std::nullopt;
    Bits w(q.size());
    for (int e : im)
        w |= q.up(e);
    DwyerWitness out;
    for (std::size_t e = w.find_first(); e != Bits::npos; e = w.find_next(e)) {
        const int x = static_cast<int>(e);
        std::vector<int> below;
        for (int a = 0; a < p.size(); ++a)
            if (q.leq(k(a), x))
                below.push_back(a);
        std::optional<int> top;
        for (int a : below)
            if (std::all_of(below.begin(), below.end(), [&](int b) { return p.leq(b, a); }))
                top = a;
        if (!top)
            return std::nullopt;
        out.cosieve.push_back(x);
        out.retraction.push_back(*top);
    }
    // i(p) <= w  <=>  p <= r(w)
    for (std::size_t i = 0; i < out.cosieve.size(); ++i)
        for (int a = 0; a < p.size(); ++a)
            if (q.leq(k(a), out.cosieve[i]) != p.leq(a, out.retraction[i]))
                throw std::logic_error("is_dwyer: retraction is not right adjoint");
    return out;
}

struct PosetPushout {
    FinPoset poset;
    MonotoneMap from_q;  // Q -> Q +_P R
    MonotoneMap from_r;  // R -> Q +_P R
};

/// Q +_P R along a Dwyer map k : P -> Q. Elements of R come first, then
/// those of Q outside im k. Throws std::invalid_argument if k is not Dwyer
/// and std::logic_error if the glued relation fails to be antisymmetric.
inline PosetPushout poset_pushout(const MonotoneMap& k, const MonotoneMap& phi, std::string name = {})
{
    if (!(k.source() == phi.source()))
        throw std::invalid_argument("poset_pushout: maps have different sources");
    if (!is_dwyer(k))
        throw std::invalid_argument("poset_pushout: first map is not a Dwyer map");
    const FinPoset& q = k.target();
    const FinPoset& r = phi.target();
    std::vector<int> to(q.size(), -1);
    for (int a = 0; a < k.source().size(); ++a)
        to[k(a)] = phi(a);
    std::vector<std::string> labels(r.labels().begin(), r.labels().end());
    for (int x = 0; x < q.size(); ++x)
        if (to[x] < 0) {
            to[x] = static_cast<int>(labels.size());
            std::string l = q.label(x);
            while (std::find(labels.begin(), labels.end(), l) != labels.end())
                l += "'";
            labels.push_back(std::move(l));
        }
    const int n = static_cast<int>(labels.size());
    std::vector<Bits> up(n, Bits(n));
    for (int i = 0; i < n; ++i)
        up[i].set(i);
    for (int a = 0; a < r.size(); ++a)
        for (int b = 0; b < r.size(); ++b)
            if (r.leq(a, b))
                up[a].set(b);
    for (int x = 0; x < q.size(); ++x)
        for (int y = 0; y < q.size(); ++y)
            if (q.leq(x, y))
                up[to[x]].set(to[y]);
    FinPoset::close(up);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (up[a].test(b) && up[b].test(a))
                throw std::logic_error("poset_pushout: glued order is not antisymmetric at (" + labels[a]
                                       + ", " + labels[b] + ")");
    FinPoset out = FinPoset::from_rows(std::move(labels), std::move(up), std::move(name));
    std::vector<int> rr(r.size());
    for (int a = 0; a < r.size(); ++a)
        rr[a] = a;
    MonotoneMap fq = MonotoneMap::build(q, out, std::move(to));
    MonotoneMap fr = MonotoneMap::build(r, out, std::move(rr));
    return {std::move(out), std::move(fq), std::move(fr)};
}

/// The nerve: q-cells are strictly increasing chains of q+1 elements,
/// ordered by length and then lexicographically.
class PosetNerve {
public:
    PosetNerve() = default;

    explicit PosetNerve(FinPoset p, std::string name = {}) : poset_(std::move(p))
    {
        std::vector<std::vector<int>> level;
        for (int a = 0; a < poset_.size(); ++a)
            level.push_back({a});
        while (!level.empty()) {
            std::sort(level.begin(), level.end());
            std::vector<std::vector<int>> next;
            for (auto& c : level) {
                const Bits& above = poset_.up(c.back());
                for (std::size_t b = above.find_first(); b != Bits::npos; b = above.find_next(b))
                    if (static_cast<int>(b) != c.back()) {
                        next.push_back(c);
                        next.back().push_back(static_cast<int>(b));
                    }
                ids_.emplace(c, static_cast<int>(chains_.size()));
                chains_.push_back(std::move(c));
            }
            level = std::move(next);
        }
        std::vector<CellSpec> specs;
        for (const auto& c : chains_) {
            const int d = static_cast<int>(c.size()) - 1;
            CellSpec spec{d, {}};
            if (d > 0)
                for (int i = 0; i <= d; ++i) {
                    std::vector<int> f = c;
                    f.erase(f.begin() + i);
                    spec.faces.push_back({ids_.at(f), identity(d - 1)});
                }
            specs.push_back(std::move(spec));
        }
        space_ = SimplicialSet::build(std::move(specs), name.empty() ? "N" + poset_.name() : std::move(name));
    }

    const FinPoset& poset() const { return poset_; }
    const SimplicialSet& space() const { return space_; }
    const std::vector<int>& chain_of(CellId c) const { return chains_.at(c); }

    CellId cell_of(const std::vector<int>& strict_chain) const
    {
        auto it = ids_.find(strict_chain);
        if (it == ids_.end())
            throw std::invalid_argument("nerve: not a chain");
        return it->second;
    }

    /// Normal form of the simplex given by a weakly increasing sequence.
    Simplex simplex_of_chain(std::span<const int> weak) const
    {
        if (weak.empty())
            throw std::invalid_argument("nerve: empty chain");
        std::vector<int> strict{weak[0]};
        Mask rep = 0;
        for (std::size_t i = 1; i < weak.size(); ++i) {
            if (!poset_.leq(weak[i - 1], weak[i]))
                throw std::invalid_argument("nerve: sequence is not weakly increasing");
            if (weak[i] == weak[i - 1])
                rep |= Mask{1} << (i - 1);
            else
                strict.push_back(weak[i]);
        }
        return {cell_of(strict), degen_from_repeats(static_cast<int>(weak.size()) - 1, rep)};
    }

    /// Vertex sequence of a simplex, as poset elements.
    std::vector<int> elements(const Simplex& s) const
    {
        const auto& c = chains_.at(s.cell);
        std::vector<int> out;
        for (int j = 0; j <= s.degree(); ++j)
            out.push_back(c[s.degen[j]]);
        return out;
    }

private:
    struct VecHash {
        std::size_t operator()(const std::vector<int>& v) const
        {
            std::size_t h = v.size();
            for (int x : v)
                h = h * 1000003u ^ static_cast<std::size_t>(x);
            return h;
        }
    };

    FinPoset poset_;
    SimplicialSet space_;
    std::vector<std::vector<int>> chains_;
    std::unordered_map<std::vector<int>, int, VecHash> ids_;
};

inline PosetNerve nerve(const FinPoset& p) { return PosetNerve(p); }

inline SimplicialMap nerve_map(const MonotoneMap& f, const PosetNerve& src, const PosetNerve& dst)
{
    std::vector<Simplex> a;
    for (CellId c = 0; c < src.space().num_cells(); ++c) {
        std::vector<int> img;
        for (int x : src.chain_of(c))
            img.push_back(f(x));
        a.push_back(dst.simplex_of_chain(img));
    }
    return SimplicialMap::build(src.space(), dst.space(), std::move(a));
}

/// Poset of cells, y <= x when y is the non-degenerate part of a face of x.
/// Element ids are cell ids.
inline FinPoset sharp(const SimplicialSet& x)
{
    const int n = x.num_cells();
    std::vector<Bits> down(n, Bits(n));
    for (int d = 0; d <= x.dimension(); ++d)
        for (CellId c : x.cells_of_dim(d)) {
            down[c].set(c);
            for (const Face& f : x.faces(c))
                down[c] |= down[f.target];
        }
    std::vector<Bits> up(n, Bits(n));
    std::vector<std::string> labels;
    for (CellId c = 0; c < n; ++c) {
        labels.push_back(std::to_string(c));
        for (std::size_t b = down[c].find_first(); b != Bits::npos; b = down[c].find_next(b))
            up[b].set(c);
    }
    return FinPoset::from_rows(std::move(labels), std::move(up), x.name() + "#");
}

/// x |-> f(x) non-degenerate part. Images of degreewise injective maps are
/// sieves.
inline MonotoneMap sharp_map(const SimplicialMap& f)
{
    std::vector<int> a;
    for (const Simplex& s : f.assignment())
        a.push_back(s.cell);
    return MonotoneMap::build(sharp(f.source()), sharp(f.target()), std::move(a));
}

inline PosetNerve barratt(const SimplicialSet& x) { return PosetNerve(sharp(x), "B" + x.name()); }

inline SimplicialMap barratt_map(const SimplicialMap& f, const PosetNerve& bsrc, const PosetNerve& bdst)
{
    return nerve_map(sharp_map(f), bsrc, bdst);
}

inline SimplicialMap barratt_map(const SimplicialMap& f)
{
    return barratt_map(f, barratt(f.source()), barratt(f.target()));
}

/// The face poset of Delta[n]; element ids follow StandardSimplexIndex(n).
inline FinPoset simplex_poset(int n) { return sharp(standard_simplex(n)); }

namespace detail {

inline MonotoneMap cylinder_into_simplex(int n, bool collapse_bottom)
{
    if (n < 1)
        throw std::invalid_argument("cylinder embedding needs n >= 1");
    const StandardSimplexIndex lo(n - 1), hi(n);
    const FinPoset p = simplex_poset(n - 1);
    const FinPoset w = poset_product(p, chain(1));
    std::vector<int> a(w.size());
    const Mask top = Mask{1} << n;
    for (int mu = 0; mu < p.size(); ++mu) {
        const Mask m = lo.mask(mu);
        a[mu * 2] = collapse_bottom ? hi.id(top) : hi.id(m);
        a[mu * 2 + 1] = hi.id(m | top);
    }
    return MonotoneMap::build(w, simplex_poset(n), std::move(a));
}

}  // namespace detail

/// Delta[n-1]# x [1] -> Delta[n]#: (mu,0) |-> mu, (mu,1) |-> mu with n added.
inline MonotoneMap psi(int n) { return detail::cylinder_into_simplex(n, false); }

/// As psi on the 1-end; the 0-end goes to the last vertex.
inline MonotoneMap omega(int n) { return detail::cylinder_into_simplex(n, true); }

}  // namespace forge
