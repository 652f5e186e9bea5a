#include <catch_amalgamated.hpp>

#include <deque>
#include <set>

#include "forge/desingularize.hpp"
#include "forge/harness/corpus.hpp"
#include "forge/isomorphism.hpp"
#include "forge/subdivision.hpp"

using namespace forge;

namespace {

// Delta[2] with its first and last vertex identified: vertex pattern a, b, a.
SimplicialSet folded_triangle()
{
    const SimplicialSet d2 = standard_simplex(2);
    const StandardSimplexIndex idx(2);
    Congruence c(d2);
    c.merge(d2.cell(idx.id(0b001)), d2.cell(idx.id(0b100)));
    return quotient(c, "fold").space;
}

// Every congruence on x, by closing under single merges.
std::vector<Congruence> all_congruences(const SimplicialSet& x)
{
    Congruence start(x);
    const SimplexTable& tab = start.table();
    std::set<std::vector<int>> seen{start.labels()};
    std::deque<Congruence> queue{start};
    std::vector<Congruence> out;
    while (!queue.empty()) {
        Congruence cur = queue.front();
        queue.pop_front();
        out.push_back(cur);
        for (int s = 0; s < tab.size(); ++s)
            for (int t = s + 1; t < tab.size(); ++t) {
                if (tab.degree(s) != tab.degree(t) || cur.equivalent(s, t))
                    continue;
                Congruence next = cur;
                next.merge(s, t);
                if (seen.insert(next.labels()).second)
                    queue.push_back(next);
            }
    }
    return out;
}

std::vector<SimplicialSet> tiny_inputs()
{
    std::vector<SimplicialSet> out{sphere(1), sphere(2), folded_triangle(), harness::collapse_face(2, 0b011),
                                   standard_simplex(1), boundary(2)};
    std::mt19937_64 rng(17);
    harness::CorpusParams params;
    params.max_dim = 2;
    while (out.size() < 14) {
        const SimplicialSet q = harness::random_quotient(rng, params, "t" + std::to_string(out.size()));
        if (q.num_cells() <= 6)
            out.push_back(q);
    }
    return out;
}

}  // namespace

TEST_CASE("non-singular inputs are fixed", "[desingularize]")
{
    for (const SimplicialSet& x : {standard_simplex(3), boundary(3), barratt(sphere(2)).space()}) {
        const DesingResult d = zipper_desingularize(x);
        CHECK(d.certificate == Certificate::ZipperCertified);
        CHECK(d.moves.empty());
        CHECK(is_isomorphism(d.eta));
    }
    CHECK(is_isomorphism(oracle_desingularize(standard_simplex(1)).eta));
}

TEST_CASE("the circle with one vertex desingularizes to a point", "[desingularize]")
{
    const DesingResult z = zipper_desingularize(sphere(1));
    CHECK(z.certificate == Certificate::ZipperCertified);
    CHECK(z.quotient.cell_counts() == std::vector<int>{1});
    CHECK(z.moves.size() == 1);
    const DesingResult o = oracle_desingularize(sphere(1));
    CHECK(o.certificate == Certificate::OracleExact);
    CHECK(o.quotient.cell_counts() == std::vector<int>{1});
}

TEST_CASE("a non-adjacent vertex repeat is left to the oracle", "[desingularize]")
{
    const SimplicialSet x = folded_triangle();
    const DesingResult z = zipper_desingularize(x);
    CHECK(z.certificate == Certificate::Uncertified);
    const DesingResult d = desingularize(x);
    CHECK(d.certificate == Certificate::OracleExact);
    CHECK(d.quotient.cell_counts() == std::vector<int>{1});
    CHECK_THROWS_AS(oracle_desingularize(x, 2), std::length_error);
}

TEST_CASE("double subdivision of the 2-sphere", "[desingularize]")
{
    const Subdivision s1(sphere(2));
    const Subdivision s2(s1.space());
    const DesingResult d = zipper_desingularize(s2.space());
    REQUIRE(d.certificate == Certificate::ZipperCertified);
    CHECK(zipper_log_sound(s2.space(), d.moves));
    CHECK(are_isomorphic(d.quotient, barratt(s1.space()).space()));
    // eta is a bijection on vertices here.
    CHECK(injective_in_degree(d.eta, 0));
    CHECK(is_degreewise_surjective(d.eta));
    CHECK(zipper_desingularize(d.quotient).moves.empty());
}

TEST_CASE("zipper and oracle agree and are universal on tiny inputs", "[desingularize][oracle]")
{
    CHECK(all_congruences(sphere(1)).size() == 2);
    CHECK(all_congruences(standard_simplex(1)).size() == 3);
    for (const SimplicialSet& x : tiny_inputs()) {
        INFO(x.name() << " cells " << x.num_cells());
        const DesingResult z = zipper_desingularize(x);
        CHECK(zipper_log_sound(x, z.moves));
        const DesingResult o = oracle_desingularize(x);
        CHECK(is_nonsingular(o.quotient));
        if (z.certificate == Certificate::ZipperCertified) {
            CHECK(kernel_congruence(z.eta) == kernel_congruence(o.eta));
            CHECK(zipper_desingularize(z.quotient).moves.empty());
        }
        // Every surjection onto a non-singular quotient factors through eta.
        if (x.num_cells() <= 5)
            for (const Congruence& c : all_congruences(x)) {
                const QuotientResult q = quotient(c);
                if (is_nonsingular(q.space))
                    CHECK_NOTHROW(factor_through(o.eta, q.projection));
            }
    }
}

TEST_CASE("regularization", "[desingularize][oracle]")
{
    const QuotientResult r0 = regularize_oracle(standard_simplex(2));
    CHECK(is_isomorphism(r0.projection));
    const QuotientResult r1 = regularize_oracle(sphere(1));
    CHECK(r1.space.cell_counts() == std::vector<int>{1});
    for (const SimplicialSet& x : tiny_inputs()) {
        INFO(x.name());
        const QuotientResult r = regularize_oracle(x);
        CHECK(is_regular(r.space));
        if (x.num_cells() <= 5)
            for (const Congruence& c : all_congruences(x)) {
                const QuotientResult q = quotient(c);
                if (is_regular(q.space))
                    CHECK_NOTHROW(factor_through(r.projection, q.projection));
            }
    }
}
