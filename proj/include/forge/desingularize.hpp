// Desingularization D and regularization R as quotients by congruences.
#pragma once

#include <cstdlib>
#include <deque>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "forge/congruence.hpp"
#include "forge/regularity.hpp"

namespace forge {

enum class Certificate { ZipperCertified, OracleExact, Uncertified };

inline const char* to_string(Certificate c)
{
    switch (c) {
    case Certificate::ZipperCertified: return "zipper-certified";
    case Certificate::OracleExact: return "oracle-exact";
    case Certificate::Uncertified: return "uncertified";
    }
    return "?";
}

/// One zipper step: the cell u, with u e_p ~ u e_{p+1}, was merged with u d_p s_p.
struct ZipperMove {
    CellId cell;
    int p;
};

struct DesingResult {
    SimplicialSet quotient;
    SimplicialMap eta;
    Certificate certificate = Certificate::Uncertified;
    std::vector<ZipperMove> moves;
};

namespace detail {

/// Quotient by cong is non-singular: every class with no degenerate member
/// has vertex classes that are pairwise distinct.
inline bool nonsingular_quotient(const Congruence& cong)
{
    const SimplexTable& tab = cong.table();
    std::vector<char> degenerate(tab.size(), 0);
    for (int s = 0; s < tab.size(); ++s)
        if (tab.is_degenerate(s))
            degenerate[cong.find(s)] = 1;
    std::vector<int> vs;
    for (CellId c = 0; c < tab.space().num_cells(); ++c) {
        const int s = tab.cell_index(c);
        if (degenerate[cong.find(s)])
            continue;
        vs.clear();
        for (int j = 0; j <= tab.degree(s); ++j)
            vs.push_back(cong.find(tab.vertex(s, j)));
        std::sort(vs.begin(), vs.end());
        if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
            return false;
    }
    return true;
}

inline int oracle_bound(std::optional<int> bound)
{
    if (bound)
        return *bound;
    if (const char* env = std::getenv("FORGE_ORACLE_BOUND"))
        return std::stoi(env);
    return 10;
}

/// The meet of every congruence satisfying good that is minimal with that
/// property, found breadth-first from the identity congruence. Generators
/// pair a cell with a simplex of the same degree; these generate every
/// congruence.
inline Congruence minimal_meet(const SimplicialSet& x, const std::function<bool(const Congruence&)>& good,
                               std::optional<int> bound, std::size_t max_states)
{
    const int limit = oracle_bound(bound);
    if (x.num_cells() > limit)
        throw std::length_error("oracle: " + std::to_string(x.num_cells()) + " cells exceeds the bound of "
                                + std::to_string(limit));
    Congruence start(x);
    const SimplexTable& tab = start.table();
    std::set<std::vector<int>> seen{start.labels()};
    std::deque<Congruence> queue{start};
    std::optional<Congruence> acc;
    while (!queue.empty()) {
        Congruence cur = std::move(queue.front());
        queue.pop_front();
        if (good(cur)) {
            acc = acc ? meet(*acc, cur) : cur;
            continue;
        }
        for (CellId c = 0; c < x.num_cells(); ++c) {
            const int s = tab.cell_index(c);
            const int q = tab.degree(s);
            for (int t = tab.degree_begin(q); t < tab.degree_end(q); ++t) {
                if (cur.equivalent(s, t))
                    continue;
                Congruence next = cur;
                next.merge(s, t);
                if (seen.insert(next.labels()).second) {
                    if (seen.size() > max_states)
                        throw std::length_error("oracle: congruence search exceeded its state cap");
                    queue.push_back(std::move(next));
                }
            }
        }
    }
    if (!acc)
        throw std::logic_error("oracle: no congruence has the required property");
    return *acc;
}

}  // namespace detail

/// Iterates the forced collapse to a fixpoint. Cells are visited by degree,
/// then id, then p.
inline DesingResult zipper_desingularize(const SimplicialSet& x)
{
    Congruence cong(x);
    const SimplexTable& tab = cong.table();
    std::vector<ZipperMove> moves;
    for (bool changed = true; changed;) {
        changed = false;
        for (int q = 1; q <= std::max(x.dimension(), 0); ++q)
            for (CellId c : x.cells_of_dim(q)) {
                const int s = tab.cell_index(c);
                for (int p = 0; p < q; ++p)
                    if (cong.find(tab.vertex(s, p)) == cong.find(tab.vertex(s, p + 1))
                        && cong.merge(s, tab.degen(tab.face(s, p), p))) {
                        moves.push_back({c, p});
                        changed = true;
                    }
            }
    }
    QuotientResult qr = quotient(cong, "D" + x.name());
    const Certificate cert = is_nonsingular(qr.space) ? Certificate::ZipperCertified : Certificate::Uncertified;
    return {std::move(qr.space), std::move(qr.projection), cert, std::move(moves)};
}

/// Replays a zipper log on a fresh congruence and reports whether every
/// move's premise held when it was applied.
inline bool zipper_log_sound(const SimplicialSet& x, const std::vector<ZipperMove>& moves)
{
    Congruence cong(x);
    const SimplexTable& tab = cong.table();
    for (const ZipperMove& m : moves) {
        const int s = tab.cell_index(m.cell);
        if (cong.find(tab.vertex(s, m.p)) != cong.find(tab.vertex(s, m.p + 1)))
            return false;
        cong.merge(s, tab.degen(tab.face(s, m.p), m.p));
    }
    return true;
}

inline DesingResult oracle_desingularize(const SimplicialSet& x, std::optional<int> bound = std::nullopt,
                                         std::size_t max_states = 200000)
{
    const Congruence c = detail::minimal_meet(x, detail::nonsingular_quotient, bound, max_states);
    QuotientResult qr = quotient(c, "D" + x.name());
    if (!is_nonsingular(qr.space))
        throw std::logic_error("oracle: meet of non-singular quotients is singular");
    return {std::move(qr.space), std::move(qr.projection), Certificate::OracleExact, {}};
}

inline QuotientResult regularize_oracle(const SimplicialSet& x, std::optional<int> bound = std::nullopt,
                                        std::size_t max_states = 200000)
{
    auto regular = [](const Congruence& c) { return is_regular(quotient(c).space).regular; };
    const Congruence c = detail::minimal_meet(x, regular, bound, max_states);
    QuotientResult qr = quotient(c, "R" + x.name());
    if (!is_regular(qr.space))
        throw std::logic_error("oracle: meet of regular quotients is not regular");
    return qr;
}

/// The zipper, falling back to the oracle when it does not certify and the
/// input is small enough.
inline DesingResult desingularize(const SimplicialSet& x, std::optional<int> bound = std::nullopt)
{
    DesingResult z = zipper_desingularize(x);
    if (z.certificate == Certificate::ZipperCertified || x.num_cells() > detail::oracle_bound(bound))
        return z;
    return oracle_desingularize(x, bound);
}

/// t_X : DSd X -> BX, the unique map with t o eta = b_X.
inline SimplicialMap t_nat(const SimplicialMap& eta, const SimplicialMap& b)
{
    return factor_through(eta, b);
}

}  // namespace forge
