#include <catch_amalgamated.hpp>

#include "forge/desingularize.hpp"
#include "forge/harness/corpus.hpp"
#include "forge/isomorphism.hpp"
#include "forge/regularity.hpp"
#include "forge/subdivision.hpp"

using namespace forge;

namespace {

// Sd X assembled cell by cell: Sd X^n = Sd X^{n-1} +_{B dDelta[n]} B Delta[n].
// legs[w] is the image of B Delta[dim w] for each cell w attached so far.
SimplicialSet sd_by_colimit(const SimplicialSet& x)
{
    SimplicialSet cur = SimplicialSet::build({});
    std::vector<std::optional<SimplicialMap>> legs(x.num_cells());
    for (int n = 0; n <= x.dimension(); ++n)
        for (CellId y : x.cells_of_dim(n)) {
            const PosetNerve bd = barratt(standard_simplex(n));
            if (n == 0) {
                const Coproduct u = disjoint_union(cur, bd.space());
                for (auto& l : legs)
                    if (l)
                        l = compose(*l, u.left);
                legs[y] = u.right;
                cur = u.space;
                continue;
            }
            const PosetNerve bb = barratt(boundary(n));
            const StandardSimplexIndex idx(n);
            std::vector<Simplex> attach;
            for (CellId c = 0; c < bb.space().num_cells(); ++c) {
                const auto& ch = bb.chain_of(c);
                const Mask top = idx.mask(ch.back());
                const Simplex f = x.face_of_cell(y, top);
                const PosetNerve bw = barratt(standard_simplex(x.dim(f.cell)));
                const StandardSimplexIndex widx(x.dim(f.cell));
                std::vector<int> weak;
                for (int e : ch) {
                    const Mask m = detail::compress_bits(idx.mask(e), ~top);
                    Mask pushed = 0;
                    for (int i = 0; i <= f.degen.src(); ++i)
                        if (m >> i & 1u)
                            pushed |= Mask{1} << f.degen[i];
                    weak.push_back(widx.id(pushed));
                }
                attach.push_back(legs[f.cell]->apply(bw.simplex_of_chain(weak)));
            }
            const SimplicialMap g = SimplicialMap::build(bb.space(), cur, attach);
            const SimplicialMap inc = barratt_map(boundary_inclusion(n), bb, bd);
            const Pushout po = pushout(g, inc);
            for (auto& l : legs)
                if (l)
                    l = compose(*l, po.left);
            legs[y] = po.right;
            cur = po.space;
        }
    return cur;
}

std::vector<SimplicialSet> small_spaces()
{
    std::vector<SimplicialSet> out;
    for (const auto& e : harness::builtins())
        out.push_back(e.space);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 8; ++i)
        out.push_back(harness::random_quotient(rng, {}, "q" + std::to_string(i)));
    return out;
}

}  // namespace

TEST_CASE("Sd of standard simplices is the barycentric subdivision", "[subdivision]")
{
    for (int n = 0; n <= 3; ++n) {
        const Subdivision s(standard_simplex(n));
        CHECK(are_isomorphic(s.space(), barratt(standard_simplex(n)).space()));
    }
    CHECK(Subdivision(standard_simplex(3)).space().cell_counts() == std::vector<int>{15, 50, 60, 24});
    CHECK(Subdivision(SimplicialSet::build({})).space().empty());
}

TEST_CASE("Sd of the circle with one vertex", "[subdivision]")
{
    const Subdivision s(sphere(1));
    CHECK(s.space().cell_counts() == std::vector<int>{2, 2});
    CHECK(is_nonsingular(s.space()));
    // Vertices of Sd X are the cells of X.
    for (const SimplicialSet& x : small_spaces())
        CHECK(static_cast<int>(Subdivision(x).space().cells_of_dim(0).size()) == x.num_cells());
}

TEST_CASE("normal forms agree with the skeletal colimit", "[subdivision][oracle]")
{
    for (const SimplicialSet& x : small_spaces()) {
        INFO(x.name());
        CHECK(are_isomorphic(Subdivision(x).space(), sd_by_colimit(x)));
    }
}

TEST_CASE("Sd X is regular", "[subdivision][property]")
{
    for (const SimplicialSet& x : small_spaces()) {
        INFO(x.name());
        CHECK(is_regular(Subdivision(x).space()));
    }
}

TEST_CASE("b_X is surjective, and an isomorphism exactly for non-singular X", "[subdivision]")
{
    for (const SimplicialSet& x : small_spaces()) {
        INFO(x.name());
        const Subdivision s(x);
        const PosetNerve b = barratt(x);
        const SimplicialMap bx = b_nat(s, b);
        CHECK(is_degreewise_surjective(bx));
        CHECK(is_isomorphism(bx) == is_nonsingular(x));
    }
    const Subdivision s(sphere(1));
    const SimplicialMap bx = b_nat(s, barratt(sphere(1)));
    CHECK(injective_in_degree(bx, 0));
    CHECK(barratt(sphere(1)).space().cell_counts() == std::vector<int>{2, 1});
}

TEST_CASE("Sd on maps", "[subdivision]")
{
    const SimplicialSet d1 = standard_simplex(1);
    const SimplicialSet circle = sphere(1);
    const SimplicialMap f = SimplicialMap::build(d1, circle, {circle.cell(0), circle.cell(0), circle.cell(1)});
    const Subdivision sd1(d1), sdc(circle);
    CHECK(is_degreewise_surjective(sd_map(f, sd1, sdc)));
    CHECK(sd_map(SimplicialMap::identity_of(circle), sdc, sdc) == SimplicialMap::identity_of(sdc.space()));

    for (int n = 1; n <= 3; ++n) {
        const SimplicialMap dn = representing_map(standard_simplex(n), StandardSimplexIndex(n).id(full_mask(n - 1)));
        const Subdivision a(standard_simplex(n - 1)), b(standard_simplex(n));
        CHECK(is_degreewise_injective(sd_map(dn, a, b)));
    }

    // Functoriality and naturality of b and d on random maps between corpus members.
    std::mt19937_64 rng(5);
    for (const SimplicialSet& x : small_spaces()) {
        if (x.empty())
            continue;
        for (CellId c = 0; c < x.num_cells(); ++c) {
            const SimplicialMap g = representing_map(x, c);
            const Subdivision sa(g.source()), sx(x);
            const SimplicialMap sg = sd_map(g, sa, sx);
            const PosetNerve ba = barratt(g.source()), bx = barratt(x);
            CHECK(compose(b_nat(sa, ba), barratt_map(g, ba, bx)) == compose(sg, b_nat(sx, bx)));
            CHECK(compose(last_vertex(sa), g) == compose(sg, last_vertex(sx)));
        }
    }
}

TEST_CASE("the last vertex map", "[subdivision]")
{
    const Subdivision s(standard_simplex(1));
    const SimplicialMap d = last_vertex(s);
    int degenerate = 0, identity_edges = 0;
    for (CellId c : s.space().cells_of_dim(1)) {
        const Simplex img = d.image(c);
        if (img.is_nondegenerate())
            ++identity_edges;
        else
            ++degenerate;
    }
    CHECK(degenerate == 1);
    CHECK(identity_edges == 1);
    const Subdivision p(standard_simplex(0));
    CHECK(is_isomorphism(last_vertex(p)));
}

TEST_CASE("t_X is an isomorphism on small regular inputs", "[subdivision]")
{
    for (const SimplicialSet& x : {standard_simplex(2), harness::collapse_face(2, 0b011), boundary(3)}) {
        const Subdivision s(x);
        const DesingResult d = zipper_desingularize(s.space());
        REQUIRE(d.certificate == Certificate::ZipperCertified);
        const PosetNerve b = barratt(x);
        const SimplicialMap t = t_nat(d.eta, b_nat(s, b));
        CHECK(is_isomorphism(t));
    }
}
