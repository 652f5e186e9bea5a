// Mapping cylinders of nerves of monotone maps, in the backwards convention:
// the target is glued to the 0-end.
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "forge/colimits.hpp"
#include "forge/desingularize.hpp"
#include "forge/isomorphism.hpp"
#include "forge/poset.hpp"

namespace forge {

/// Both pushouts of P -k-> Q and P -phi-> R, one taken in sSet after N and
/// one taken in posets, with the comparison cr between them. k must be Dwyer.
struct ReductionBundle {
    MonotoneMap k;
    MonotoneMap phi;
    PosetNerve np, nq, nr;
    Pushout t;         // NQ +_{NP} NR
    PosetPushout poset;  // Q +_P R
    PosetNerve nm;
    SimplicialMap cr;  // t.space -> nm.space()

    const SimplicialSet& topological() const { return t.space; }
    const SimplicialSet& reduced() const { return nm.space(); }
};

inline ReductionBundle reduction_bundle(const MonotoneMap& k, const MonotoneMap& phi)
{
    ReductionBundle b;
    b.k = k;
    b.phi = phi;
    b.poset = poset_pushout(k, phi);
    b.np = PosetNerve(k.source());
    b.nq = PosetNerve(k.target());
    b.nr = PosetNerve(phi.target());
    b.nm = PosetNerve(b.poset.poset, "M");
    b.t = pushout(nerve_map(k, b.np, b.nq), nerve_map(phi, b.np, b.nr), "T");
    b.cr = b.t.induced(nerve_map(b.poset.from_q, b.nq, b.nm), nerve_map(b.poset.from_r, b.nr, b.nm));
    if (b.t.space.cells_of_dim(0).size() != b.nm.space().cells_of_dim(0).size()
        || !injective_in_degree(b.cr, 0))
        throw std::logic_error("cylinder reduction is not a bijection on vertices");
    return b;
}

/// The cylinders of phi : P -> R, glued along i_0 : P -> P x [1]. The
/// simplicial cylinder is N(P x [1]), isomorphic to NP x Delta[1].
struct CylinderBundle : ReductionBundle {
    /// NR -> T, the 0-end.
    SimplicialMap front() const { return t.right; }
    /// NP -> T, the 1-end.
    SimplicialMap back() const { return compose(nerve_map(cylinder_end(k.source(), 1), np, nq), t.left); }
};

inline CylinderBundle cylinder_reduction(const MonotoneMap& phi)
{
    CylinderBundle c;
    static_cast<ReductionBundle&>(c) = reduction_bundle(cylinder_end(phi.source(), 0), phi);
    return c;
}

inline SimplicialSet topological_cylinder(const MonotoneMap& phi) { return cylinder_reduction(phi).t.space; }

inline SimplicialSet reduced_cylinder(const MonotoneMap& phi)
{
    return nerve(poset_pushout(cylinder_end(phi.source(), 0), phi).poset).space();
}

struct DcrResult {
    DesingResult desing;
    SimplicialMap dcr;  // D(topological) -> reduced
};

/// dcr, the unique map with dcr o eta = cr. Throws std::runtime_error if
/// the topological cylinder cannot be desingularized with a certificate.
inline DcrResult dcr(const ReductionBundle& b, std::optional<int> oracle_bound = std::nullopt)
{
    DesingResult d = desingularize(b.topological(), oracle_bound);
    if (d.certificate == Certificate::Uncertified)
        throw std::runtime_error("dcr: desingularization of " + b.topological().name() + " is uncertified");
    SimplicialMap m = factor_through(d.eta, b.cr);
    return {std::move(d), std::move(m)};
}

/// Vertex j of cell c, for j = 0..dim c.
inline std::vector<CellId> vertex_sequence(const SimplicialSet& x, CellId c) { return x.vertices(x.cell(c)); }

/// Unordered pairs of distinct q-cells with the same vertex sequence.
inline std::vector<std::pair<CellId, CellId>> sibling_pairs(const SimplicialSet& x, int q, bool embedded_only = false)
{
    std::map<std::vector<CellId>, std::vector<CellId>> groups;
    for (CellId c : x.cells_of_dim(q))
        if (!embedded_only || is_embedded(x, x.cell(c)))
            groups[vertex_sequence(x, c)].push_back(c);
    std::vector<std::pair<CellId, CellId>> out;
    for (const auto& [vs, cs] : groups)
        for (std::size_t i = 0; i < cs.size(); ++i)
            for (std::size_t j = i + 1; j < cs.size(); ++j)
                out.emplace_back(cs[i], cs[j]);
    return out;
}

/// Both sides of the sibling criterion in one degree q > 0. dcr is
/// injective in degree q exactly when eta identifies embedded siblings of
/// the topological cylinder in every degree 1..q: injectivity in degree q
/// passes down to lower degrees through degeneracies, and a pair of
/// q-simplices with equal images reduces to their non-degenerate parts,
/// which may have lower degree.
struct SiblingCheck {
    int degree;
    bool injective;
    bool identified_here;      // embedded q-siblings only
    bool identified_up_to;     // embedded p-siblings for all 1 <= p <= q
    bool agrees() const { return injective == identified_up_to; }
};

inline std::vector<SiblingCheck> sibling_criterion(const ReductionBundle& b, const DcrResult& d)
{
    std::vector<SiblingCheck> out;
    const SimplicialSet& t = b.topological();
    bool so_far = true;
    for (int q = 1; q <= t.dimension(); ++q) {
        bool here = true;
        for (auto [x, y] : sibling_pairs(t, q, true))
            if (d.desing.eta.image(x) != d.desing.eta.image(y))
                here = false;
        so_far = so_far && here;
        out.push_back({q, injective_in_degree(d.dcr, q), here, so_far});
    }
    return out;
}

/// For a Dwyer map k : P -> Q with cosieve W, the pair of reductions along
/// P -> W and along k, both against phi.
struct DwyerPair {
    ReductionBundle w_level;
    ReductionBundle q_level;
};

inline DwyerPair dwyer_pair(const MonotoneMap& k, const MonotoneMap& phi)
{
    const std::optional<DwyerWitness> w = is_dwyer(k);
    if (!w)
        throw std::invalid_argument("dwyer_pair: not a Dwyer map");
    const MonotoneMap inc = full_subposet(k.target(), w->cosieve, "W");
    return {reduction_bundle(corestrict(k, inc), phi), reduction_bundle(k, phi)};
}

/// (y-bar)# : Delta[n]# -> X#, or its corestriction to Y# where Y is the
/// subcomplex generated by y.
inline MonotoneMap barratt_representing(const SimplicialSet& x, CellId y, bool corestricted = false)
{
    const MonotoneMap f = sharp_map(representing_map(x, y));
    if (!corestricted)
        return f;
    const Subcomplex sub = generate(x, {y});
    return corestrict(f, full_subposet(f.target(), sub.cells, "Y#"));
}

/// The poset P with X isomorphic to NP, if there is one. Element i is the
/// i-th vertex of X.
inline std::optional<FinPoset> as_poset_nerve(const SimplicialSet& x)
{
    const auto vs = x.cells_of_dim(0);
    const std::vector<CellId> verts(vs.begin(), vs.end());
    std::vector<int> pos(x.num_cells(), -1);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        pos[verts[i]] = static_cast<int>(i);
        labels.push_back(std::to_string(verts[i]));
    }
    std::vector<std::pair<int, int>> rel;
    if (x.dimension() >= 1)
        for (CellId e : x.cells_of_dim(1)) {
            const int a = pos[x.faces(e)[1].target];
            const int b = pos[x.faces(e)[0].target];
            if (a == b)
                return std::nullopt;
            rel.emplace_back(a, b);
        }
    FinPoset p;
    try {
        p = FinPoset::build(std::move(labels), rel, x.name() + "#0");
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
    if (!are_isomorphic(x, nerve(p).space()))
        return std::nullopt;
    return p;
}

/// The cone on a poset nerve: the topological cylinder of NP -> Delta[0].
inline CylinderBundle cone_bundle(const FinPoset& p) { return cylinder_reduction(to_point(p)); }

inline SimplicialSet cone(const SimplicialSet& x)
{
    const std::optional<FinPoset> p = as_poset_nerve(x);
    if (!p)
        throw std::invalid_argument("cone: " + x.name() + " is not the nerve of a poset");
    return cone_bundle(*p).t.space;
}

}  // namespace forge
