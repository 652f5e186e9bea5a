// forge: command-line front end.
//
// Exit codes: 0 success, 1 error or failing report, 2 uncertified
// desingularization, 3 oracle size gate exceeded.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "forge/forge.hpp"

using namespace forge;

namespace {

constexpr int kUncertified = 2;
constexpr int kOracleRefused = 3;

void emit(const std::string& text, const std::string& path)
{
    if (path.empty() || path == "-")
        std::cout << text;
    else
        io::write_file(path, text);
}

SimplicialSet load_sset(const std::string& path) { return io::parse_sset(io::read_file(path)); }
MonotoneMap load_pmap(const std::string& path) { return io::parse_pmap(io::read_file(path)); }

std::string degree_table(const SimplicialMap& f)
{
    // Cells are non-degenerate simplices; the verdicts cover all simplices.
    std::string out = "degree source-cells target-cells injective surjective\n";
    const std::vector<int> src = f.source().cell_counts(), dst = f.target().cell_counts();
    const auto at = [](const std::vector<int>& v, int q) { return q < static_cast<int>(v.size()) ? v[q] : 0; };
    const int top = std::max(f.source().dimension(), f.target().dimension());
    for (int q = 0; q <= top; ++q)
        out += std::to_string(q) + " " + std::to_string(at(src, q)) + " " + std::to_string(at(dst, q)) + " "
               + (injective_in_degree(f, q) ? "yes" : "no") + " " + (surjective_in_degree(f, q) ? "yes" : "no")
               + "\n";
    return out;
}

harness::Corpus corpus_from(const std::string& dir, std::uint64_t seed)
{
    return dir.empty() ? harness::gen_corpus(seed) : harness::read_corpus(dir);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Finite simplicial sets, posets, subdivision, desingularization and mapping cylinders"};
    app.require_subcommand(1);
    int status = 0;

    std::string in, out;

    auto* sd_cmd = app.add_subcommand("sd", "Kan subdivision of an SSET");
    sd_cmd->add_option("input", in, "SSET file")->required();
    sd_cmd->add_option("-o,--output", out, "output file (default stdout)");
    sd_cmd->callback([&] { emit(io::to_sset(Subdivision(load_sset(in)).space()), out); });

    bool as_poset = false;
    auto* barratt_cmd = app.add_subcommand("barratt", "Barratt nerve of an SSET");
    barratt_cmd->add_option("input", in, "SSET file")->required();
    barratt_cmd->add_option("-o,--output", out, "output file (default stdout)");
    barratt_cmd->add_flag("--poset", as_poset, "print the poset of non-degenerate simplices instead");
    barratt_cmd->callback([&] {
        const SimplicialSet x = load_sset(in);
        emit(as_poset ? io::to_poset(sharp(x)) : io::to_sset(barratt(x).space()), out);
    });

    auto* bnat_cmd = app.add_subcommand("bnat", "the map b : Sd X -> B X");
    bnat_cmd->add_option("input", in, "SSET file")->required();
    bnat_cmd->add_option("-o,--output", out, "output SMAP file (default stdout)");
    bnat_cmd->callback([&] {
        const SimplicialSet x = load_sset(in);
        const Subdivision s(x);
        emit(io::to_smap(b_nat(s, barratt(x))), out);
    });

    auto* lv_cmd = app.add_subcommand("lastvertex", "the last vertex map d : Sd X -> X");
    lv_cmd->add_option("input", in, "SSET file")->required();
    lv_cmd->add_option("-o,--output", out, "output SMAP file (default stdout)");
    lv_cmd->callback([&] { emit(io::to_smap(last_vertex(Subdivision(load_sset(in)))), out); });

    std::string method = "auto", eta_out;
    std::optional<int> bound;
    auto* desing_cmd = app.add_subcommand("desing", "desingularization");
    desing_cmd->add_option("input", in, "SSET file")->required();
    desing_cmd->add_option("--method", method, "zipper, oracle, or auto (zipper, then oracle)")
        ->check(CLI::IsMember({"zipper", "oracle", "auto"}));
    desing_cmd->add_option("--bound", bound, "oracle size gate in cells (default FORGE_ORACLE_BOUND or 10)");
    desing_cmd->add_option("-o,--output", out, "output SSET file (default stdout)");
    desing_cmd->add_option("--emit-eta", eta_out, "write the quotient map as SMAP");
    desing_cmd->callback([&] {
        const SimplicialSet x = load_sset(in);
        DesingResult d;
        try {
            d = method == "zipper" ? zipper_desingularize(x)
                : method == "oracle" ? oracle_desingularize(x, bound)
                                     : desingularize(x, bound);
        } catch (const std::length_error& e) {
            std::cerr << "oracle refused: " << e.what() << "\n";
            status = kOracleRefused;
            return;
        }
        std::cerr << "certificate " << to_string(d.certificate) << ", " << d.moves.size() << " zipper moves\n";
        emit(io::to_sset(d.quotient), out);
        if (!eta_out.empty())
            emit(io::to_smap(d.eta), eta_out);
        if (d.certificate == Certificate::Uncertified)
            status = kUncertified;
    });

    bool reduced = false, topological = false, bundle = false;
    auto* cyl_cmd = app.add_subcommand("cylinder", "mapping cylinders of the nerve of a monotone map");
    cyl_cmd->add_option("input", in, "PMAP file")->required();
    auto* r_flag = cyl_cmd->add_flag("--reduced", reduced, "the reduced cylinder M");
    auto* t_flag = cyl_cmd->add_flag("--topological", topological, "the topological cylinder T (default)");
    auto* b_flag = cyl_cmd->add_flag("--bundle", bundle, "T, M and cr : T -> M");
    r_flag->excludes(t_flag)->excludes(b_flag);
    t_flag->excludes(b_flag);
    cyl_cmd->add_option("-o,--output", out, "output file (default stdout)");
    cyl_cmd->callback([&] {
        const CylinderBundle c = cylinder_reduction(load_pmap(in));
        if (reduced)
            emit(io::to_sset(c.reduced()), out);
        else if (bundle)
            emit(io::to_sset(c.topological()) + io::to_sset(c.reduced()) + io::to_smap(c.cr), out);
        else
            emit(io::to_sset(c.topological()), out);
    });

    auto* dcr_cmd = app.add_subcommand("dcr", "degreewise injectivity and surjectivity of cr and dcr");
    dcr_cmd->add_option("input", in, "PMAP file")->required();
    dcr_cmd->add_option("--bound", bound, "oracle size gate in cells");
    dcr_cmd->callback([&] {
        const CylinderBundle c = cylinder_reduction(load_pmap(in));
        std::cout << "cr : T -> M\n" << degree_table(c.cr);
        try {
            const DcrResult d = dcr(c, bound);
            std::cout << "certificate " << to_string(d.desing.certificate) << "\n";
            std::cout << "dcr : DT -> M\n" << degree_table(d.dcr);
            std::cout << "sibling criterion\ndegree injective siblings-identified\n";
            for (const SiblingCheck& s : sibling_criterion(c, d))
                std::cout << s.degree << " " << (s.injective ? "yes" : "no") << " "
                          << (s.identified_up_to ? "yes" : "no") << "\n";
        } catch (const std::length_error& e) {
            std::cerr << "oracle refused: " << e.what() << "\n";
            status = kOracleRefused;
        } catch (const std::runtime_error& e) {
            std::cerr << e.what() << "\n";
            status = kUncertified;
        }
    });

    std::uint64_t seed = 0;
    std::string dir;
    auto* corpus_cmd = app.add_subcommand("corpus", "write a generated corpus as SSET files");
    corpus_cmd->add_option("--seed", seed, "random seed");
    corpus_cmd->add_option("-o,--output", dir, "directory")->required();
    corpus_cmd->callback([&] {
        const harness::Corpus c = harness::gen_corpus(seed);
        harness::write_corpus(c, dir);
        std::cerr << c.members.size() << " members written to " << dir << "\n";
    });

    std::string report_out, suite;
    bool timings = false;
    auto* verify_cmd = app.add_subcommand("verify", "run a verification campaign");
    verify_cmd->add_option("suite", suite, "main or lemmas")->required()->check(CLI::IsMember({"main", "lemmas"}));
    verify_cmd->add_option("--corpus", dir, "corpus directory (default: generate from --seed)");
    verify_cmd->add_option("--seed", seed, "seed for a generated corpus and for random instances");
    verify_cmd->add_option("--report", report_out, "report file (default stdout)");
    verify_cmd->add_option("--bound", bound, "oracle size gate in cells");
    verify_cmd->add_flag("--timings", timings, "include per-case seconds");
    verify_cmd->callback([&] {
        const harness::Corpus c = corpus_from(dir, seed);
        harness::CampaignParams params;
        params.oracle_bound = bound;
        const harness::Report r = suite == "main" ? harness::verify_main(c, params)
                                                  : harness::verify_lemma_suite(c, params);
        emit(r.to_text(timings), report_out);
        std::cerr << r.title << ": pass " << r.count(harness::Outcome::Pass) << " fail "
                  << r.count(harness::Outcome::Fail) << " skip " << r.count(harness::Outcome::Skip) << "\n";
        if (!r.ok())
            status = 1;
    });

    auto* ce_cmd = app.add_subcommand("counterexamples", "reproduce the two cylinder counterexamples");
    ce_cmd->add_option("--report", report_out, "report file (default stdout)");
    ce_cmd->callback([&] {
        const harness::Report r = harness::run_counterexamples();
        emit(r.to_text(), report_out);
        if (!r.ok())
            status = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "forge: " << e.what() << "\n";
        return 1;
    }
    return status;
}
