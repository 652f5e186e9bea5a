// A corpus on disk: one SSET file per member plus an index.
//
//   corpus.index
//     corpus seed <n>
//     member <file> <provenance> <name>
#pragma once

#include <cctype>
#include <filesystem>
#include <sstream>
#include <string>

#include "forge/harness/corpus.hpp"
#include "forge/io.hpp"

namespace forge::harness {

inline std::string member_file_name(std::size_t i, const std::string& name)
{
    std::string stem;
    for (char ch : name)
        stem += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
    std::string num = std::to_string(i);
    num.insert(0, num.size() < 3 ? 3 - num.size() : 0, '0');
    return num + "_" + stem + ".sset";
}

inline void write_corpus(const Corpus& corpus, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    std::string index = "corpus seed " + std::to_string(corpus.seed) + "\n";
    for (std::size_t i = 0; i < corpus.members.size(); ++i) {
        const CorpusEntry& e = corpus.members[i];
        const std::string file = member_file_name(i, e.name);
        io::write_file((dir / file).string(), io::to_sset(e.space));
        index += "member " + file + " " + to_string(e.provenance) + " " + e.name + "\n";
    }
    io::write_file((dir / "corpus.index").string(), index);
}

inline Corpus read_corpus(const std::filesystem::path& dir)
{
    std::istringstream in(io::read_file((dir / "corpus.index").string()));
    Corpus corpus;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ws(line);
        std::string kw;
        ws >> kw;
        if (kw == "corpus") {
            std::string seed_kw;
            ws >> seed_kw >> corpus.seed;
        } else if (kw == "member") {
            std::string file, prov, name;
            ws >> file >> prov;
            std::getline(ws >> std::ws, name);
            Provenance p = Provenance::Builtin;
            if (prov == to_string(Provenance::RandomQuotient))
                p = Provenance::RandomQuotient;
            else if (prov == to_string(Provenance::SdImage))
                p = Provenance::SdImage;
            else if (prov != to_string(Provenance::Builtin))
                throw std::invalid_argument("corpus index: unknown provenance '" + prov + "'");
            corpus.members.push_back({name, io::parse_sset(io::read_file((dir / file).string())), p});
        } else if (!kw.empty()) {
            throw std::invalid_argument("corpus index: unexpected '" + line + "'");
        }
    }
    return corpus;
}

}  // namespace forge::harness
