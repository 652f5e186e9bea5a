// Test populations of small simplicial sets.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "forge/colimits.hpp"
#include "forge/congruence.hpp"
#include "forge/poset.hpp"
#include "forge/subdivision.hpp"

namespace forge::harness {

enum class Provenance { Builtin, RandomQuotient, SdImage };

inline const char* to_string(Provenance p)
{
    switch (p) {
    case Provenance::Builtin: return "builtin";
    case Provenance::RandomQuotient: return "random-quotient";
    case Provenance::SdImage: return "sd-image";
    }
    return "?";
}

struct CorpusEntry {
    std::string name;
    SimplicialSet space;
    Provenance provenance;
};

struct CorpusParams {
    int random_quotients = 16;
    int max_pieces = 2;       // standard simplices in the disjoint union
    int max_dim = 3;
    int max_merges = 3;
    int max_sd_cells = 200;   // Sd images larger than this are dropped
};

struct Corpus {
    std::uint64_t seed = 0;
    std::vector<CorpusEntry> members;

    const CorpusEntry* find(const std::string& name) const
    {
        for (const CorpusEntry& e : members)
            if (e.name == name)
                return &e;
        return nullptr;
    }
};

/// Delta[n] with the face spanned by mask collapsed onto its first vertex.
inline SimplicialSet collapse_face(int n, Mask face)
{
    const SimplicialSet d = standard_simplex(n);
    const StandardSimplexIndex idx(n);
    Congruence c(d);
    const CellId v = idx.id(Mask{1} << std::countr_zero(face));
    for (Mask m : idx.masks())
        if ((m & ~face) == 0) {
            const int k = std::popcount(m) - 1;
            c.merge(d.cell(idx.id(m)), Simplex{v, degen_from_repeats(k, k > 0 ? full_mask(k - 1) : 0)});
        }
    std::string name = "Delta[" + std::to_string(n) + "]/{";
    for (int i = 0; i <= n; ++i)
        if (face >> i & 1u)
            name += std::to_string(i);
    return quotient(c, name + "}").space;
}

inline std::vector<CorpusEntry> builtins()
{
    std::vector<CorpusEntry> out;
    auto add = [&](SimplicialSet x) {
        std::string name = x.name();
        out.push_back({std::move(name), std::move(x), Provenance::Builtin});
    };
    for (int n = 0; n <= 3; ++n)
        add(standard_simplex(n));
    for (int n = 1; n <= 3; ++n)
        add(boundary(n));
    for (int n = 0; n <= 3; ++n)
        add(sphere(n));
    add(collapse_face(2, 0b011));
    add(collapse_face(3, 0b0111));
    add(collapse_face(3, 0b0011));
    // The posets of the two counterexamples.
    add(nerve(FinPoset::build({"b", "a", "c"}, {{1, 0}, {1, 2}}, "V")).space());
    add(nerve(FinPoset::build({"a", "b", "c", "d"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, "Diamond")).space());
    return out;
}

/// A random quotient of a disjoint union of standard simplices.
inline SimplicialSet random_quotient(std::mt19937_64& rng, const CorpusParams& params, std::string name)
{
    std::uniform_int_distribution<int> pieces(1, params.max_pieces);
    std::uniform_int_distribution<int> dims(1, params.max_dim);
    SimplicialSet base = standard_simplex(dims(rng));
    for (int k = pieces(rng); k > 1; --k)
        base = disjoint_union(base, standard_simplex(dims(rng))).space;
    Congruence c(base);
    std::uniform_int_distribution<int> merges(1, params.max_merges);
    for (int k = merges(rng); k > 0; --k) {
        std::uniform_int_distribution<int> deg(0, base.dimension());
        const int q = deg(rng);
        const auto cells = base.cells_of_dim(q);
        std::uniform_int_distribution<std::size_t> pick(0, cells.size() - 1);
        const CellId a = cells[pick(rng)];
        const SimplexTable& tab = c.table();
        // Either another cell of the same dimension or any simplex of that degree.
        if (std::bernoulli_distribution(0.6)(rng)) {
            c.merge(base.cell(a), base.cell(cells[pick(rng)]));
        } else {
            std::uniform_int_distribution<int> any(tab.degree_begin(q), tab.degree_end(q) - 1);
            c.merge(tab.cell_index(a), any(rng));
        }
    }
    return quotient(c, std::move(name)).space;
}

/// Builtins, random quotients and the Sd images of all of them whose size
/// is at most params.max_sd_cells. Deterministic in the seed.
inline Corpus gen_corpus(std::uint64_t seed, const CorpusParams& params = {})
{
    Corpus corpus;
    corpus.seed = seed;
    corpus.members = builtins();
    std::mt19937_64 rng(seed);
    for (int i = 0; i < params.random_quotients; ++i)
        corpus.members.push_back(
            {"rq" + std::to_string(i), random_quotient(rng, params, "rq" + std::to_string(i)), Provenance::RandomQuotient});
    const std::size_t base_count = corpus.members.size();
    for (std::size_t i = 0; i < base_count; ++i) {
        const SimplicialSet& x = corpus.members[i].space;
        if (x.num_cells() > params.max_sd_cells)
            continue;
        Subdivision s(x);
        if (s.space().num_cells() > params.max_sd_cells)
            continue;
        const std::string name = "Sd(" + corpus.members[i].name + ")";
        corpus.members.push_back({name, s.space().renamed(name), Provenance::SdImage});
    }
    return corpus;
}

}  // namespace forge::harness
