// Verification campaigns. Each campaign returns a Report and records failing
// instances instead of throwing.
#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "forge/cylinders.hpp"
#include "forge/desingularize.hpp"
#include "forge/harness/corpus.hpp"
#include "forge/harness/posets.hpp"
#include "forge/harness/report.hpp"
#include "forge/io.hpp"
#include "forge/isomorphism.hpp"
#include "forge/regularity.hpp"
#include "forge/subdivision.hpp"

namespace forge::harness {

struct CampaignParams {
    std::optional<int> oracle_bound;
    int t_max_dim = 3;               // regular members above this are not used for t_X
    int corollary_max_sd_cells = 200;
    int representing_max_cells = 60;  // members swept cell by cell for dcr
    int cone_max_elements = 5;
    int oracle_cases = 60;
    int oracle_max_cells = 10;
    int random_subcomplexes = 50;
    int product_max_cells = 60;      // bound on |X| * |Y|
    int deflation_max_degree = 4;
    int structural_max_cells = 30;   // members used for cylinder instances
};

/// Counts instances of one statement and keeps the first few failures.
class Tally {
public:
    explicit Tally(std::string name) : start_(std::chrono::steady_clock::now()) { c_.name = std::move(name); }

    void record(bool ok, const std::string& what, const std::string& dump = {})
    {
        ++instances_;
        if (ok)
            return;
        if (++failures_ <= 3)
            c_.fail(what);
        if (c_.dump.empty())
            c_.dump = dump;
    }

    void skip() { ++skipped_; }

    template <class Body>
    void attempt(const std::string& what, Body&& body, const std::string& dump = {})
    {
        try {
            body();
        } catch (const std::length_error&) {
            skip();
        } catch (const std::exception& e) {
            record(false, what + ": " + e.what(), dump);
        }
    }

    CaseResult finish(int min_instances = 1)
    {
        c_.put("instances", std::to_string(instances_));
        c_.put("failures", std::to_string(failures_));
        c_.put("skipped", std::to_string(skipped_));
        if (instances_ < min_instances)
            c_.fail("only " + std::to_string(instances_) + " instances, wanted " + std::to_string(min_instances));
        c_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return c_;
    }

private:
    CaseResult c_;
    int instances_ = 0, failures_ = 0, skipped_ = 0;
    std::chrono::steady_clock::time_point start_;
};

namespace detail {

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

/// First degree where f fails to be injective or surjective, if any.
inline std::optional<int> non_iso_degree(const SimplicialMap& f)
{
    const int top = std::max(f.source().dimension(), f.target().dimension());
    for (int q = 0; q <= top; ++q)
        if (!injective_in_degree(f, q) || !surjective_in_degree(f, q))
            return q;
    return std::nullopt;
}

inline std::string dump_cell(const SimplicialSet& x, CellId y)
{
    return io::to_sset(x) + "# simplex " + std::to_string(y) + "\n";
}

/// t_X : D Sd X -> B X is an isomorphism, with a certified zipper.
inline void check_t_iso(CaseResult& c, const SimplicialSet& x)
{
    const Subdivision s(x);
    c.put_counts("sd", s.space().cell_counts());
    const DesingResult d = zipper_desingularize(s.space());
    c.put("certificate", to_string(d.certificate));
    if (d.certificate != Certificate::ZipperCertified) {
        c.fail("zipper desingularization of Sd is uncertified");
        c.dump = io::to_sset(x);
        return;
    }
    const PosetNerve b = barratt(x);
    c.put_counts("dsd", d.quotient.cell_counts());
    c.put_counts("b", b.space().cell_counts());
    const SimplicialMap t = t_nat(d.eta, b_nat(s, b));
    if (const auto q = non_iso_degree(t)) {
        c.fail("t is not bijective in degree " + std::to_string(*q));
        c.dump = io::to_sset(x);
    }
}

inline std::vector<char> regular_flags(const Corpus& corpus)
{
    std::vector<char> out;
    for (const CorpusEntry& e : corpus.members)
        out.push_back(is_regular(e.space).regular);
    return out;
}

inline bool antisymmetric(const FinPoset& p)
{
    for (int a = 0; a < p.size(); ++a)
        for (int b = a + 1; b < p.size(); ++b)
            if (p.leq(a, b) && p.leq(b, a))
                return false;
    return true;
}

/// The canonical map Q +_P R -> T# for the pushout T of nerves, where the
/// poset pushout is taken along the sharps of the nerve legs. Returns a
/// description of the first defect, or nothing if it is an order
/// isomorphism.
inline std::optional<std::string> sharp_pushout_defect(const ReductionBundle& b)
{
    const MonotoneMap kq = sharp_map(nerve_map(b.k, b.np, b.nq));
    const MonotoneMap kr = sharp_map(nerve_map(b.phi, b.np, b.nr));
    const PosetPushout pp = poset_pushout(kq, kr);
    const MonotoneMap lq = sharp_map(b.t.left), lr = sharp_map(b.t.right);
    const FinPoset& ts = lq.target();
    if (!antisymmetric(pp.poset))
        return "poset pushout of sharps is not antisymmetric";
    std::vector<int> to(pp.poset.size(), -1);
    auto assign = [&](int e, int v) {
        if (to[e] >= 0 && to[e] != v)
            return false;
        to[e] = v;
        return true;
    };
    for (int e = 0; e < kq.target().size(); ++e)
        if (!assign(pp.from_q(e), lq(e)))
            return std::string("comparison map is not well defined");
    for (int e = 0; e < kr.target().size(); ++e)
        if (!assign(pp.from_r(e), lr(e)))
            return std::string("comparison map is not well defined");
    if (pp.poset.size() != ts.size())
        return "sizes differ: " + std::to_string(pp.poset.size()) + " vs " + std::to_string(ts.size());
    std::vector<int> sorted = to;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() < 0 || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        return std::string("comparison map is not a bijection");
    for (int a = 0; a < pp.poset.size(); ++a)
        for (int c = 0; c < pp.poset.size(); ++c)
            if (pp.poset.leq(a, c) != ts.leq(to[a], to[c]))
                return std::string("comparison map does not reflect the order");
    return std::nullopt;
}

inline FinPoset random_poset(std::mt19937_64& rng, int n, double p, const std::string& prefix)
{
    std::vector<std::string> labels;
    std::vector<std::pair<int, int>> rel;
    std::bernoulli_distribution coin(p);
    for (int i = 0; i < n; ++i) {
        labels.push_back(prefix + std::to_string(i));
        for (int j = i + 1; j < n; ++j)
            if (coin(rng))
                rel.emplace_back(i, j);
    }
    return FinPoset::build(std::move(labels), rel, prefix);
}

/// A random monotone map, choosing each value among those compatible with
/// the values already chosen. Falls back to a constant map.
inline MonotoneMap random_monotone(std::mt19937_64& rng, const FinPoset& p, const FinPoset& r)
{
    for (int attempt = 0; attempt < 20; ++attempt) {
        std::vector<int> a(p.size(), -1);
        bool stuck = false;
        for (int x = 0; x < p.size() && !stuck; ++x) {
            std::vector<int> ok;
            for (int t = 0; t < r.size(); ++t) {
                bool fits = true;
                for (int y = 0; y < x && fits; ++y)
                    fits = !(p.leq(y, x) && !r.leq(a[y], t)) && !(p.leq(x, y) && !r.leq(t, a[y]));
                if (fits)
                    ok.push_back(t);
            }
            if (ok.empty())
                stuck = true;
            else
                a[x] = ok[std::uniform_int_distribution<std::size_t>(0, ok.size() - 1)(rng)];
        }
        if (!stuck)
            return MonotoneMap::build(p, r, std::move(a));
    }
    return MonotoneMap::build(p, r, std::vector<int>(p.size(), 0));
}

/// Random Dwyer inclusions of sieves into posets on four elements.
inline std::vector<MonotoneMap> random_dwyer_maps(std::mt19937_64& rng, int count)
{
    std::vector<MonotoneMap> out;
    for (int trial = 0; trial < 50 * count && static_cast<int>(out.size()) < count; ++trial) {
        const FinPoset q = random_poset(rng, 4, 0.4, "q");
        std::vector<int> sieve;
        for (int e = 0; e < q.size(); ++e)
            if (std::bernoulli_distribution(0.5)(rng))
                sieve.push_back(e);
        if (sieve.empty() || !is_sieve(q, sieve))
            continue;
        MonotoneMap k = full_subposet(q, sieve, "p");
        if (is_dwyer(k))
            out.push_back(std::move(k));
    }
    return out;
}

/// (delta_n)# : Delta[n-1]# -> Delta[n]#.
inline MonotoneMap last_face_sharp(int n)
{
    return sharp_map(representing_map(standard_simplex(n), StandardSimplexIndex(n).id(full_mask(n - 1))));
}

}  // namespace detail

// ---------------------------------------------------------------- t_X

/// t_X is an isomorphism for every regular member of dimension at most
/// params.t_max_dim.
inline Report verify_main_theorem(const Corpus& corpus, const CampaignParams& params = {})
{
    Report r{"t-iso", {}};
    const std::vector<char> regular = detail::regular_flags(corpus);
    for (std::size_t i = 0; i < corpus.members.size(); ++i) {
        const CorpusEntry& e = corpus.members[i];
        if (!regular[i] || e.space.dimension() > params.t_max_dim)
            continue;
        r.cases.push_back(run_case("t/" + e.name, [&](CaseResult& c) { detail::check_t_iso(c, e.space); }));
    }
    return r;
}

/// D Sd^2 Y = B Sd Y through t_{Sd Y}, for every member that is not itself
/// an Sd image and whose subdivision is small enough.
inline Report verify_corollary(const Corpus& corpus, const CampaignParams& params = {})
{
    Report r{"double-subdivision", {}};
    for (const CorpusEntry& e : corpus.members) {
        if (e.provenance == Provenance::SdImage)
            continue;
        const Subdivision s(e.space);
        if (s.space().num_cells() > params.corollary_max_sd_cells)
            continue;
        r.cases.push_back(run_case("dsd2/" + e.name, [&](CaseResult& c) {
            c.put("regular", detail::yes_no(is_regular(e.space).regular));
            detail::check_t_iso(c, s.space());
            if (c.outcome == Outcome::Fail)
                c.dump = io::to_sset(e.space);
        }));
    }
    return r;
}

// ---------------------------------------------------------------- counterexamples

/// V = {b <- a -> c} onto the chain a' -> b' -> c'.
inline MonotoneMap non_surjective_example()
{
    const FinPoset p = FinPoset::build({"b", "a", "c"}, {{1, 0}, {1, 2}}, "V");
    const FinPoset r = FinPoset::build({"a'", "b'", "c'"}, {{0, 1}, {1, 2}}, "C");
    return MonotoneMap::build(p, r, {1, 0, 2});
}

/// f# for the quotient f : Delta[1] -> Delta[1]/dDelta[1].
inline MonotoneMap non_injective_example()
{
    const SimplicialSet circle = sphere(1);
    return barratt_representing(circle, circle.cells_of_dim(1)[0]);
}

inline Report run_counterexamples(const CampaignParams& params = {})
{
    Report r{"counterexamples", {}};
    r.cases.push_back(run_case("non-surjective-cr", [&](CaseResult& c) {
        const MonotoneMap phi = non_surjective_example();
        const CylinderBundle b = cylinder_reduction(phi);
        c.put("dim-T", std::to_string(b.topological().dimension()));
        c.put("dim-M", std::to_string(b.reduced().dimension()));
        c.put_counts("T", b.topological().cell_counts());
        c.put_counts("M", b.reduced().cell_counts());
        const bool surj3 = surjective_in_degree(b.cr, 3);
        c.put("cr-surjective-3", detail::yes_no(surj3));
        c.put("cr-bijective-0", detail::yes_no(injective_in_degree(b.cr, 0) && surjective_in_degree(b.cr, 0)));
        if (b.topological().dimension() != 2)
            c.fail("dim T is not 2");
        if (b.reduced().dimension() != 3)
            c.fail("dim M is not 3");
        if (surj3)
            c.fail("cr is surjective in degree 3");
        if (!injective_in_degree(b.cr, 0) || !surjective_in_degree(b.cr, 0))
            c.fail("cr is not bijective in degree 0");
        if (c.outcome == Outcome::Fail)
            c.dump = io::to_pmap(phi);
    }));
    r.cases.push_back(run_case("non-injective-dcr", [&](CaseResult& c) {
        const MonotoneMap phi = non_injective_example();
        const CylinderBundle b = cylinder_reduction(phi);
        const DcrResult d = dcr(b, params.oracle_bound);
        const SimplicialSet& dt = d.desing.quotient;
        c.put("certificate", to_string(d.desing.certificate));
        c.put_counts("T", b.topological().cell_counts());
        c.put_counts("DT", dt.cell_counts());
        c.put_counts("M", b.reduced().cell_counts());
        std::string inj;
        for (int q = 0; q <= dt.dimension(); ++q)
            inj += (q ? " " : "") + std::to_string(q) + ":" + detail::yes_no(injective_in_degree(d.dcr, q));
        c.put("dcr-injective", inj);
        const auto sib = sibling_pairs(dt, 2);
        std::string pairs;
        for (auto [x, y] : sib)
            pairs += (pairs.empty() ? "" : " ") + std::to_string(x) + "~" + std::to_string(y);
        c.put("sibling-2-simplices", pairs.empty() ? "-" : pairs);
        if (!injective_in_degree(d.dcr, 0))
            c.fail("dcr is not injective in degree 0");
        if (injective_in_degree(d.dcr, 1))
            c.fail("dcr is injective in degree 1");
        if (injective_in_degree(d.dcr, 2))
            c.fail("dcr is injective in degree 2");
        if (sib.empty())
            c.fail("no pair of distinct sibling 2-simplices in DT");
        for (auto [x, y] : sib)
            if (x == y || dt.dim(x) != 2 || !is_embedded(dt, dt.cell(x)))
                c.fail("sibling pair is not a pair of distinct non-degenerate 2-simplices");
        if (c.outcome == Outcome::Fail)
            c.dump = io::to_pmap(phi);
    }));
    return r;
}

// ---------------------------------------------------------------- dcr sweeps

/// dcr is an isomorphism for the cylinder of (y-bar)#, for every cell y of
/// every regular member with at most params.representing_max_cells cells,
/// both with target X# and corestricted to Y#.
inline Report verify_representing_cylinders(const Corpus& corpus, const CampaignParams& params = {})
{
    Report r{"representing-cylinders", {}};
    const std::vector<char> regular = detail::regular_flags(corpus);
    for (std::size_t i = 0; i < corpus.members.size(); ++i) {
        const CorpusEntry& e = corpus.members[i];
        if (!regular[i] || e.space.num_cells() > params.representing_max_cells)
            continue;
        for (CellId y = 0; y < e.space.num_cells(); ++y)
            r.cases.push_back(run_case("dcr/" + e.name + "/" + std::to_string(y), [&](CaseResult& c) {
                for (bool corestricted : {false, true}) {
                    const CylinderBundle b = cylinder_reduction(barratt_representing(e.space, y, corestricted));
                    const DcrResult d = dcr(b, params.oracle_bound);
                    const std::string key = corestricted ? "Y" : "X";
                    c.put("DT-" + key, std::to_string(d.desing.quotient.num_cells()));
                    c.put("M-" + key, std::to_string(b.reduced().num_cells()));
                    if (const auto q = detail::non_iso_degree(d.dcr)) {
                        c.fail("dcr into " + key + "# is not bijective in degree " + std::to_string(*q));
                        c.dump = detail::dump_cell(e.space, y);
                    }
                }
            }));
    }
    return r;
}

/// D(cone NP) = M(NP -> Delta[0]) for every poset with at most
/// params.cone_max_elements elements, one per isomorphism class.
inline Report verify_cones(const CampaignParams& params = {})
{
    Report r{"cones", {}};
    for (int n = 0; n <= params.cone_max_elements; ++n)
        for (const FinPoset& p : posets_up_to_iso(n))
            r.cases.push_back(run_case("cone/" + p.name(), [&](CaseResult& c) {
                const CylinderBundle b = cone_bundle(p);
                const DcrResult d = dcr(b, params.oracle_bound);
                c.put_counts("T", b.topological().cell_counts());
                c.put_counts("DT", d.desing.quotient.cell_counts());
                c.put_counts("M", b.reduced().cell_counts());
                if (!is_degreewise_surjective(b.cr))
                    c.fail("cr is not degreewise surjective");
                if (const auto q = detail::non_iso_degree(d.dcr))
                    c.fail("dcr is not bijective in degree " + std::to_string(*q));
                if (c.outcome == Outcome::Fail)
                    c.dump = io::to_poset(p);
            }));
    return r;
}

// ---------------------------------------------------------------- oracle

/// Zipper and oracle desingularization have the same kernel on every input
/// with at most params.oracle_max_cells cells where the zipper certifies.
/// Inputs are the small corpus members followed by random quotients drawn
/// from seed, up to isomorphism.
inline Report verify_oracle_agreement(const Corpus& corpus, std::uint64_t seed, const CampaignParams& params = {})
{
    Report r{"oracle-agreement", {}};
    std::vector<SimplicialSet> inputs;
    auto consider = [&](const SimplicialSet& x) {
        if (x.num_cells() > params.oracle_max_cells || x.empty())
            return;
        for (const SimplicialSet& y : inputs)
            if (are_isomorphic(x, y))
                return;
        inputs.push_back(x);
    };
    for (const CorpusEntry& e : corpus.members)
        consider(e.space);
    std::mt19937_64 rng(seed ^ 0x6f7261636c65ULL);
    CorpusParams qp;
    qp.max_dim = 2;
    for (int attempt = 0; attempt < 4000 && static_cast<int>(inputs.size()) < params.oracle_cases + 20; ++attempt)
        consider(random_quotient(rng, qp, "oq" + std::to_string(attempt)));

    int certified = 0;
    for (const SimplicialSet& x : inputs) {
        if (certified >= params.oracle_cases)
            break;
        r.cases.push_back(run_case("oracle/" + x.name(), [&](CaseResult& c) {
            c.put_counts("cells", x.cell_counts());
            const DesingResult z = zipper_desingularize(x);
            c.put("zipper", to_string(z.certificate));
            if (z.certificate != Certificate::ZipperCertified) {
                c.skip("zipper does not certify");
                return;
            }
            ++certified;
            const DesingResult o = oracle_desingularize(x, params.oracle_bound);
            c.put_counts("quotient", z.quotient.cell_counts());
            if (!(kernel_congruence(z.eta) == kernel_congruence(o.eta))) {
                c.fail("zipper and oracle quotients differ");
                c.dump = io::to_sset(x);
            }
        }));
    }
    return r;
}

// ---------------------------------------------------------------- regularity

inline Report verify_regularity_battery(const Corpus& corpus, std::uint64_t seed, const CampaignParams& params = {})
{
    Report r{"regularity", {}};
    const std::vector<char> regular = detail::regular_flags(corpus);

    {
        Tally t("sd-image-regular");
        for (const CorpusEntry& e : corpus.members)
            t.attempt(e.name, [&] {
                const RegularityResult reg = is_regular(Subdivision(e.space).space());
                t.record(reg.regular, "Sd " + e.name + " is not regular", io::to_sset(e.space));
            });
        for (std::size_t i = 0; i < corpus.members.size(); ++i)
            if (corpus.members[i].provenance == Provenance::SdImage)
                t.record(regular[i], corpus.members[i].name + " is tagged sd-image but not regular",
                         io::to_sset(corpus.members[i].space));
        r.cases.push_back(t.finish());
    }
    {
        Tally t("subcomplex-regularity");
        std::vector<const CorpusEntry*> pool;
        for (std::size_t i = 0; i < corpus.members.size(); ++i)
            if (regular[i] && !corpus.members[i].space.empty())
                pool.push_back(&corpus.members[i]);
        std::mt19937_64 rng(seed ^ 0x7375626bULL);
        for (int k = 0; k < params.random_subcomplexes && !pool.empty(); ++k) {
            const CorpusEntry& e = *pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
            std::uniform_int_distribution<CellId> pick(0, e.space.num_cells() - 1);
            std::vector<CellId> seeds;
            for (int j = std::uniform_int_distribution<int>(1, 3)(rng); j > 0; --j)
                seeds.push_back(pick(rng));
            t.attempt(e.name, [&] {
                const Subcomplex a = generate(e.space, seeds, e.name + "|sub");
                t.record(is_regular(a.space).regular, "a subcomplex of " + e.name + " is not regular",
                         io::to_sset(a.space));
            });
        }
        r.cases.push_back(t.finish(params.random_subcomplexes));
    }
    {
        Tally t("product-regularity");
        for (std::size_t i = 0; i < corpus.members.size(); ++i)
            for (std::size_t j = i; j < corpus.members.size(); ++j) {
                const CorpusEntry &a = corpus.members[i], &b = corpus.members[j];
                if (!regular[i] || !regular[j] || a.space.empty() || b.space.empty()
                    || a.space.num_cells() * b.space.num_cells() > params.product_max_cells)
                    continue;
                t.attempt(a.name + " x " + b.name, [&] {
                    const Product p = product(a.space, b.space);
                    t.record(is_regular(p.space()).regular, a.name + " x " + b.name + " is not regular",
                             io::to_sset(a.space) + io::to_sset(b.space));
                });
            }
        r.cases.push_back(t.finish());
    }
    {
        Tally t("b-iso-iff-nonsingular");
        for (const CorpusEntry& e : corpus.members)
            t.attempt(e.name, [&] {
                const Subdivision s(e.space);
                const bool iso = is_isomorphism(b_nat(s, barratt(e.space)));
                t.record(iso == is_nonsingular(e.space), "b is " + std::string(iso ? "" : "not ")
                                                             + "an isomorphism for " + e.name,
                         io::to_sset(e.space));
            });
        r.cases.push_back(t.finish());
    }
    {
        Tally t("nonsingular-vs-representing-maps");
        for (const CorpusEntry& e : corpus.members)
            t.attempt(e.name, [&] {
                bool all = true;
                for (CellId c = 0; c < e.space.num_cells() && all; ++c)
                    all = is_degreewise_injective(representing_map(e.space, c));
                t.record(all == is_nonsingular(e.space), "vertex test disagrees for " + e.name,
                         io::to_sset(e.space));
            });
        r.cases.push_back(t.finish());
    }
    return r;
}

// ---------------------------------------------------------------- structural lemmas

/// Faces of a cell that contain its last vertex are determined by their
/// non-degenerate parts. Returns the first offending pair of masks.
inline std::optional<std::pair<Mask, Mask>> face_determination_defect(const SimplicialSet& x, CellId y)
{
    const int n = x.dim(y);
    const Mask last = Mask{1} << n;
    std::vector<CellId> part(std::size_t{1} << (n + 1), -1);
    for (Mask m = 1; m <= full_mask(n); ++m)
        part[m] = x.face_of_cell(y, m).cell;
    for (Mask m = 1; m <= full_mask(n); ++m)
        for (Mask k = m + 1; k <= full_mask(n); ++k)
            if (((m | k) & last) && part[m] == part[k])
                return std::pair{m, k};
    return std::nullopt;
}

/// Deflation: for masks M, N covering [n] with neither inside the other,
/// equal non-degenerate parts of yM and yN force y to be degenerate with
/// that same non-degenerate part. Returns the first offending pair.
inline std::optional<std::pair<Mask, Mask>> deflation_defect(const SimplicialSet& x, const Simplex& y)
{
    const int n = y.degree();
    const Mask full = full_mask(n);
    std::vector<CellId> part(std::size_t{1} << (n + 1), -1);
    for (Mask m = 1; m <= full; ++m)
        part[m] = x.eval(y, face_from_mask(n, m)).cell;
    for (Mask m = 1; m <= full; ++m)
        for (Mask k = m + 1; k <= full; ++k) {
            if ((m | k) != full || (m & k) == m || (m & k) == k || part[m] != part[k])
                continue;
            if (y.is_nondegenerate() || y.cell != part[m])
                return std::pair{m, k};
        }
    return std::nullopt;
}

inline Report verify_structural_lemmas(const Corpus& corpus, std::uint64_t seed, const CampaignParams& params = {})
{
    Report r{"structural-lemmas", {}};
    const std::vector<char> regular = detail::regular_flags(corpus);

    // Cylinder instances: the two counterexamples, cones, and representing
    // maps of small members, regular or not.
    struct Instance {
        std::string tag;
        MonotoneMap phi;
    };
    std::vector<Instance> cylinders{{"non-surjective", non_surjective_example()},
                                    {"non-injective", non_injective_example()}};
    for (int n = 0; n <= 4; ++n)
        for (const FinPoset& p : posets_up_to_iso(n))
            cylinders.push_back({"cone " + p.name(), to_point(p)});
    for (std::size_t i = 0; i < corpus.members.size(); ++i) {
        const CorpusEntry& e = corpus.members[i];
        if (e.space.num_cells() > params.structural_max_cells)
            continue;
        for (CellId y = 0; y < e.space.num_cells(); ++y) {
            cylinders.push_back({e.name + " cell " + std::to_string(y), barratt_representing(e.space, y)});
            if (regular[i])
                cylinders.push_back({e.name + " cell " + std::to_string(y) + " (Y#)",
                                     barratt_representing(e.space, y, true)});
        }
    }

    Tally cr0("cr-vertex-bijection"), sibling("sibling-criterion"), sharp_po("sharp-preserves-pushouts"),
        antisym("dwyer-pushout-antisymmetry"), nerve_po("nerve-preserves-sieve-pushouts"),
        reduction("dwyer-cosieve-reduction");

    // Cases where siblings of degree q alone do not decide injectivity in
    // degree q; reported, not a failure.
    int single_degree_mismatches = 0;

    auto vertex_bijection = [&](const ReductionBundle& b, const std::string& tag, const std::string& dump) {
        cr0.record(injective_in_degree(b.cr, 0) && surjective_in_degree(b.cr, 0), "cr for " + tag, dump);
        antisym.record(detail::antisymmetric(b.poset.poset), "pushout for " + tag, dump);
    };

    for (const Instance& in : cylinders) {
        const std::string dump = io::to_pmap(in.phi);
        std::optional<CylinderBundle> b;
        cr0.attempt(in.tag, [&] { b = cylinder_reduction(in.phi); }, dump);
        if (!b)
            continue;
        vertex_bijection(*b, in.tag, dump);
        sharp_po.attempt(in.tag, [&] {
            const auto defect = detail::sharp_pushout_defect(*b);
            sharp_po.record(!defect, in.tag + ": " + defect.value_or(""), dump);
        }, dump);
        sibling.attempt(in.tag, [&] {
            const DcrResult d = dcr(*b, params.oracle_bound);
            for (const SiblingCheck& s : sibling_criterion(*b, d)) {
                sibling.record(s.agrees(), in.tag + " degree " + std::to_string(s.degree) + ": dcr injective "
                                               + detail::yes_no(s.injective) + ", siblings identified "
                                               + detail::yes_no(s.identified_up_to),
                               dump);
                single_degree_mismatches += s.injective != s.identified_here;
            }
        }, dump);
    }

    // Dwyer maps that are not cylinder ends.
    struct DwyerInstance {
        std::string tag;
        MonotoneMap phi;
        int n;  // k = (delta_n)#, or 0 for a random sieve
    };
    std::vector<DwyerInstance> dwyer_ks;
    for (int n = 1; n <= 3; ++n)
        dwyer_ks.push_back({"last face " + std::to_string(n), detail::last_face_sharp(n), n});
    std::mt19937_64 rng(seed ^ 0x64777965ULL);
    for (MonotoneMap& k : detail::random_dwyer_maps(rng, 25))
        dwyer_ks.push_back({"random sieve " + std::to_string(dwyer_ks.size()), std::move(k), 0});

    for (const DwyerInstance& k : dwyer_ks) {
        std::vector<Instance> phis;
        // Representing maps of small regular members, of matching dimension.
        if (k.n > 0) {
            const int n = k.n;
            for (std::size_t i = 0; i < corpus.members.size(); ++i) {
                const CorpusEntry& e = corpus.members[i];
                if (!regular[i] || e.space.num_cells() > params.structural_max_cells || e.space.dimension() < n - 1)
                    continue;
                for (CellId y : e.space.cells_of_dim(n - 1))
                    phis.push_back({e.name + " cell " + std::to_string(y), barratt_representing(e.space, y)});
            }
        } else {
            phis.push_back({"identity", MonotoneMap::identity_of(k.phi.source())});
            for (int j = 0; j < 3; ++j) {
                const FinPoset target = detail::random_poset(rng, 3, 0.5, "r");
                phis.push_back({"random " + std::to_string(j), detail::random_monotone(rng, k.phi.source(), target)});
            }
        }
        for (const Instance& phi : phis) {
            const std::string tag = k.tag + " / " + phi.tag;
            const std::string dump = io::to_pmap(k.phi) + io::to_pmap(phi.phi);
            std::optional<DwyerPair> pr;
            cr0.attempt(tag, [&] { pr = dwyer_pair(k.phi, phi.phi); }, dump);
            if (!pr)
                continue;
            vertex_bijection(pr->w_level, tag + " (W)", dump);
            vertex_bijection(pr->q_level, tag, dump);
            reduction.attempt(tag, [&] {
                const bool w_iso = is_isomorphism(dcr(pr->w_level, params.oracle_bound).dcr);
                const bool q_iso = is_isomorphism(dcr(pr->q_level, params.oracle_bound).dcr);
                reduction.record(!w_iso || q_iso, tag + ": W-level dcr is an isomorphism, Q-level is not", dump);
            }, dump);
            const bool sieve_leg = phi.phi.is_embedding() && is_sieve(phi.phi.target(), phi.phi.image());
            if (sieve_leg)
                nerve_po.record(is_isomorphism(pr->q_level.cr), tag + ": cr is not an isomorphism", dump);
        }
        // Q +_P Q along k twice: both legs are sieves.
        const std::string tag = k.tag + " / itself";
        const std::string dump = io::to_pmap(k.phi);
        nerve_po.attempt(tag, [&] {
            const ReductionBundle b = reduction_bundle(k.phi, k.phi);
            vertex_bijection(b, tag, dump);
            nerve_po.record(is_isomorphism(b.cr), tag + ": cr is not an isomorphism", dump);
        }, dump);
    }

    r.cases.push_back(cr0.finish());
    r.cases.push_back(sibling.finish());
    r.cases.back().put("single-degree-mismatches", std::to_string(single_degree_mismatches));
    r.cases.push_back(sharp_po.finish());
    r.cases.push_back(nerve_po.finish());
    r.cases.push_back(antisym.finish());
    r.cases.push_back(reduction.finish());

    Tally faces("face-determination"), deflation("deflation");
    for (std::size_t i = 0; i < corpus.members.size(); ++i) {
        if (!regular[i])
            continue;
        const SimplicialSet& x = corpus.members[i].space;
        for (CellId y = 0; y < x.num_cells(); ++y)
            if (const auto bad = face_determination_defect(x, y))
                faces.record(false, x.name() + " cell " + std::to_string(y) + " masks " + forge::detail::mask_set(bad->first)
                                        + " " + forge::detail::mask_set(bad->second),
                             detail::dump_cell(x, y));
            else
                faces.record(true, {});
        const int top = std::min(x.dimension() + 1, params.deflation_max_degree);
        for (int n = 1; n <= top; ++n)
            for_each_simplex(x, n, [&](const Simplex& y) {
                if (const auto bad = deflation_defect(x, y))
                    deflation.record(false, x.name() + " simplex (" + std::to_string(y.cell) + ", "
                                                + degen_to_string(y.degen) + ") masks " + forge::detail::mask_set(bad->first)
                                                + " " + forge::detail::mask_set(bad->second),
                                     io::to_sset(x));
                else
                    deflation.record(true, {});
            });
    }
    r.cases.push_back(faces.finish());
    r.cases.push_back(deflation.finish());
    return r;
}

/// Every property campaign: regularity, cones, oracle agreement and the
/// structural lemmas.
inline Report verify_lemma_suite(const Corpus& corpus, const CampaignParams& params = {})
{
    Report r{"lemmas", {}};
    r.append(verify_regularity_battery(corpus, corpus.seed, params));
    r.append(verify_cones(params));
    r.append(verify_oracle_agreement(corpus, corpus.seed, params));
    r.append(verify_structural_lemmas(corpus, corpus.seed, params));
    return r;
}

/// t_X, D Sd^2 Y = B Sd Y and the representing-map cylinders.
inline Report verify_main(const Corpus& corpus, const CampaignParams& params = {})
{
    Report r{"main", {}};
    r.append(verify_main_theorem(corpus, params));
    r.append(verify_corollary(corpus, params));
    r.append(verify_representing_cylinders(corpus, params));
    return r;
}

}  // namespace forge::harness
