#include <catch_amalgamated.hpp>

#include <random>

#include "forge/colimits.hpp"
#include "forge/isomorphism.hpp"
#include "forge/regularity.hpp"
#include "oracles.hpp"

using namespace forge;

namespace {

std::vector<long long> counts_ll(const SimplicialSet& x)
{
    std::vector<long long> out;
    for (int c : x.cell_counts())
        out.push_back(c);
    return out;
}

SimplicialSet circle() { return sphere(1); }

// Delta[2] with the edge {v0,v1} collapsed onto a vertex.
QuotientResult collapse_edge(Mask edge)
{
    const SimplicialSet d2 = standard_simplex(2);
    const StandardSimplexIndex idx(2);
    Congruence c(d2);
    const int lo = std::countr_zero(edge);
    const int hi = 31 - std::countl_zero(edge);
    c.merge(d2.cell(idx.id(Mask{1} << lo)), d2.cell(idx.id(Mask{1} << hi)));
    c.merge(d2.cell(idx.id(edge)), Simplex{idx.id(Mask{1} << lo), make_degen(0, 0)});
    return quotient(c);
}

}  // namespace

TEST_CASE("building simplicial sets validates face data", "[simplicial]")
{
    const SimplicialSet d2 = standard_simplex(2);
    CHECK(d2.cell_counts() == std::vector<int>{3, 3, 1});

    const SimplicialSet s1 = SimplicialSet::build({{0, {}}, {1, {{0, identity(0)}, {0, identity(0)}}}});
    CHECK(s1.cell_counts() == std::vector<int>{1, 1});

    // A 1-cell whose face targets a 1-cell.
    CHECK_THROWS_AS(SimplicialSet::build({{0, {}}, {1, {{0, identity(0)}, {0, identity(0)}}},
                                          {1, {{1, identity(0)}, {0, identity(0)}}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(SimplicialSet::build({{1, {{3, identity(0)}, {0, identity(0)}}}, {0, {}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(SimplicialSet::build({{0, {}}, {1, {{0, identity(0)}}}}), std::invalid_argument);
    // A triangle whose edges do not close up.
    CHECK_THROWS_AS(SimplicialSet::build({{0, {}},
                                          {0, {}},
                                          {1, {{1, identity(0)}, {0, identity(0)}}},
                                          {2, {{2, identity(1)}, {2, identity(1)}, {2, identity(1)}}}}),
                    std::invalid_argument);
}

TEST_CASE("evaluation of operators", "[simplicial]")
{
    const SimplicialSet d2 = standard_simplex(2);
    const StandardSimplexIndex idx(2);
    const Simplex top = d2.cell(idx.id(0b111));
    CHECK(d2.eval(top, make_face(2, 2)) == d2.cell(idx.id(0b011)));
    CHECK(d2.eval(top, identity(2)) == top);
    CHECK_THROWS_AS(d2.eval(top, make_face(0, 1)), std::invalid_argument);

    const SimplicialSet s1 = circle();
    const Simplex e = s1.cell(1);
    CHECK(s1.eval(e, make_vertex(0, 1)) == s1.eval(e, make_vertex(1, 1)));
    CHECK(s1.eval(e, make_vertex(0, 1)).cell == 0);
}

TEST_CASE("evaluation is functorial", "[simplicial][property]")
{
    std::mt19937_64 rng(11);
    const std::vector<SimplicialSet> spaces{standard_simplex(3), sphere(2), sphere(3), boundary(3),
                                            collapse_edge(0b110).space};
    for (const SimplicialSet& x : spaces)
        for (int q = 0; q <= x.dimension() + 1; ++q)
            for (const Simplex& s : simplices_of_degree(x, q)) {
                for (int trial = 0; trial < 4; ++trial) {
                    std::uniform_int_distribution<int> rank(0, 4);
                    const int m = rank(rng), p = rank(rng);
                    const Operator a = oracle::random_operator(rng, m, q);
                    const Operator b = oracle::random_operator(rng, p, m);
                    REQUIRE(x.eval(s, compose(b, a)) == x.eval(x.eval(s, a), b));
                }
                const Simplex again = x.eval(s, identity(q));
                CHECK(again == s);
            }
}

TEST_CASE("vertices, siblings and embedded simplices", "[simplicial]")
{
    const SimplicialSet d2 = standard_simplex(2);
    const StandardSimplexIndex idx(2);
    CHECK(vertices(d2, d2.cell(idx.id(0b111)))
          == std::vector<CellId>{idx.id(0b001), idx.id(0b010), idx.id(0b100)});
    const SimplicialSet s1 = circle();
    CHECK(vertices(s1, s1.cell(1)) == std::vector<CellId>{0, 0});

    const Simplex deg{idx.id(0b011), make_degen(0, 1)};
    const auto v = vertices(d2, deg);
    CHECK(v[0] == v[1]);
    CHECK_FALSE(is_embedded(d2, deg));

    const SimplicialSet b2 = boundary(2);
    CHECK(are_siblings(b2, b2.cell(3), b2.cell(3)));
    CHECK_FALSE(are_siblings(b2, b2.cell(3), b2.cell(4)));
    CHECK_THROWS_AS(are_siblings(b2, b2.cell(0), b2.cell(3)), std::invalid_argument);

    CHECK(is_embedded(standard_simplex(3), standard_simplex(3).cell(14)));
    CHECK_FALSE(is_embedded(s1, s1.cell(1)));
}

TEST_CASE("generated subcomplexes", "[simplicial]")
{
    const SimplicialSet d2 = standard_simplex(2);
    const StandardSimplexIndex idx(2);
    const Subcomplex all = generate(d2, {idx.id(0b111)});
    CHECK(all.space.cell_counts() == std::vector<int>{3, 3, 1});
    const Subcomplex two = generate(d2, {idx.id(0b011), idx.id(0b110)});
    CHECK(two.space.cell_counts() == std::vector<int>{3, 2});
    CHECK(is_degreewise_injective(two.inclusion));
    const Subcomplex none = generate(d2, std::span<const CellId>{});
    CHECK(none.space.empty());
    CHECK_THROWS_AS(generate(d2, {9}), std::out_of_range);
}

TEST_CASE("pushouts", "[simplicial]")
{
    // Identity leg.
    const SimplicialMap inc = boundary_inclusion(2);
    const Pushout trivial = pushout(inc, SimplicialMap::identity_of(inc.source()));
    CHECK(are_isomorphic(trivial.space, standard_simplex(2)));

    // Two triangles glued along an edge.
    const SimplicialSet d1 = standard_simplex(1);
    const SimplicialSet d2 = standard_simplex(2);
    const StandardSimplexIndex idx(2);
    const SimplicialMap edge = representing_map(d2, idx.id(0b011));
    const Pushout glued = pushout(edge, edge);
    std::vector<long long> card;
    for (int q = 0; q <= 3; ++q)
        card.push_back(2 * oracle::count_operators(q, 2) - oracle::count_operators(q, 1));
    const auto expected = oracle::nondegenerate_counts(card);
    CHECK(expected == std::vector<long long>{4, 5, 2, 0});
    CHECK(counts_ll(glued.space) == std::vector<long long>{4, 5, 2});

    // Attaching a 2-cell along its boundary reproduces the cell.
    const SimplicialMap b = boundary_inclusion(2);
    const Pushout attach = pushout(b, SimplicialMap::identity_of(b.source()));
    CHECK(attach.space.cell_counts() == std::vector<int>{3, 3, 1});

    // Mediating maps.
    const SimplicialMap h = SimplicialMap::identity_of(d2);
    const SimplicialMap m = glued.induced(h, h);
    CHECK(compose(glued.left, m) == h);
    CHECK(compose(glued.right, m) == h);
    const SimplicialMap other = representing_map(d2, Simplex{idx.id(0b111), identity(2)});
    CHECK_NOTHROW(glued.induced(h, other));
    // Incompatible maps do not glue.
    std::vector<Simplex> to_vertex;
    for (CellId c = 0; c < d2.num_cells(); ++c)
        to_vertex.push_back({idx.id(0b001), degen_from_repeats(d2.dim(c), d2.dim(c) > 0 ? full_mask(d2.dim(c) - 1) : 0)});
    const SimplicialMap constant = SimplicialMap::build(d2, d2, to_vertex);
    CHECK_THROWS_AS(glued.induced(h, constant), std::logic_error);
    CHECK(d1.cell_counts() == std::vector<int>{2, 1});
}
