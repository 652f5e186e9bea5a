// Text formats.
//
//   sset <name>
//   cell <id> dim <d> faces [(<id>,degen <m> {..}), ...]
//
//   smap <source-name> <target-name>
//   send <id> -> (<id>, degen <m> {..})
//
//   poset <name>
//   elem <label>
//   rel <label> <= <label>
//
//   pmap <source-name> <target-name>     preceded by both poset documents
//   map <label> -> <label>
//
// Blank lines and lines starting with '#' are ignored. Vertices print an
// empty face list.
#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "forge/poset.hpp"
#include "forge/simplicial_set.hpp"

namespace forge::io {

namespace detail {

inline std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

/// Non-blank, non-comment lines, trimmed.
class Lines {
public:
    explicit Lines(std::string_view text)
    {
        std::istringstream in{std::string(text)};
        std::string line;
        int number = 0;
        while (std::getline(in, line)) {
            ++number;
            std::string t = trim(line);
            if (t.empty() || t[0] == '#')
                continue;
            lines_.push_back(std::move(t));
            numbers_.push_back(number);
        }
    }

    bool done() const { return pos_ >= lines_.size(); }
    const std::string& peek() const { return lines_.at(pos_); }
    const std::string& next() { return lines_.at(pos_++); }
    int line_number() const { return pos_ == 0 ? 0 : numbers_[pos_ - 1]; }

    bool peek_keyword(std::string_view kw) const
    {
        if (done())
            return false;
        const std::string& l = lines_[pos_];
        return l.size() >= kw.size() && l.compare(0, kw.size(), kw) == 0
               && (l.size() == kw.size() || l[kw.size()] == ' ' || l[kw.size()] == '\t');
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw std::invalid_argument("line " + std::to_string(line_number()) + ": " + what);
    }

private:
    std::vector<std::string> lines_;
    std::vector<int> numbers_;
    std::size_t pos_ = 0;
};

inline std::string rest_after(const std::string& line, std::string_view kw) { return trim(line.substr(kw.size())); }

inline void keyword(forge::detail::Lexer& lex, const char* kw)
{
    if (lex.word() != kw)
        lex.fail(std::string("expected '") + kw + "'");
}

inline void arrow(forge::detail::Lexer& lex)
{
    if (lex.word() != "->")
        lex.fail("expected '->'");
}

}  // namespace detail

// ---------------------------------------------------------------- sset

inline std::string to_sset(const SimplicialSet& x)
{
    std::string out = "sset " + x.name() + "\n";
    for (CellId c = 0; c < x.num_cells(); ++c) {
        out += "cell " + std::to_string(c) + " dim " + std::to_string(x.dim(c)) + " faces [";
        bool first = true;
        for (const Face& f : x.faces(c)) {
            if (!first)
                out += ", ";
            out += "(" + std::to_string(f.target) + "," + degen_to_string(f.degen) + ")";
            first = false;
        }
        out += "]\n";
    }
    return out;
}

inline SimplicialSet parse_sset(detail::Lines& in)
{
    if (!in.peek_keyword("sset"))
        in.fail("expected 'sset <name>'");
    const std::string name = detail::rest_after(in.next(), "sset");
    std::vector<std::pair<int, CellSpec>> cells;
    while (in.peek_keyword("cell")) {
        forge::detail::Lexer lex(in.next());
        lex.word();
        const int id = lex.integer();
        detail::keyword(lex, "dim");
        const int d = lex.integer();
        detail::keyword(lex, "faces");
        CellSpec spec{d, {}};
        lex.expect('[');
        if (!lex.accept(']')) {
            do {
                lex.expect('(');
                const int target = lex.integer();
                lex.expect(',');
                const Operator op = forge::detail::parse_operator(lex);
                lex.expect(')');
                spec.faces.push_back({target, op});
            } while (lex.accept(','));
            lex.expect(']');
        }
        if (!lex.at_end())
            lex.fail("trailing characters");
        cells.emplace_back(id, std::move(spec));
    }
    std::vector<CellSpec> specs(cells.size());
    std::vector<char> seen(cells.size(), 0);
    for (auto& [id, spec] : cells) {
        if (id < 0 || id >= static_cast<int>(cells.size()) || seen[id])
            in.fail("cell ids must be 0..n-1, each once");
        seen[id] = 1;
        specs[id] = std::move(spec);
    }
    return SimplicialSet::build(std::move(specs), name);
}

inline SimplicialSet parse_sset(std::string_view text)
{
    detail::Lines in(text);
    SimplicialSet x = parse_sset(in);
    if (!in.done())
        in.fail("unexpected '" + in.peek() + "'");
    return x;
}

// ---------------------------------------------------------------- smap

inline std::string to_smap(const SimplicialMap& f)
{
    std::string out = "smap " + f.source().name() + " " + f.target().name() + "\n";
    for (CellId c = 0; c < f.source().num_cells(); ++c) {
        const Simplex& s = f.image(c);
        out += "send " + std::to_string(c) + " -> (" + std::to_string(s.cell) + ", " + degen_to_string(s.degen)
               + ")\n";
    }
    return out;
}

inline SimplicialMap parse_smap(detail::Lines& in, const SimplicialSet& src, const SimplicialSet& dst)
{
    if (!in.peek_keyword("smap"))
        in.fail("expected 'smap <source> <target>'");
    in.next();
    std::vector<std::optional<Simplex>> a(src.num_cells());
    while (in.peek_keyword("send")) {
        forge::detail::Lexer lex(in.next());
        lex.word();
        const int c = lex.integer();
        detail::arrow(lex);
        lex.expect('(');
        const int cell = lex.integer();
        lex.expect(',');
        const Operator degen = forge::detail::parse_operator(lex);
        lex.expect(')');
        if (!lex.at_end())
            lex.fail("trailing characters");
        if (c < 0 || c >= src.num_cells() || a[c])
            in.fail("bad or repeated source cell " + std::to_string(c));
        a[c] = Simplex{cell, degen};
    }
    std::vector<Simplex> out;
    for (CellId c = 0; c < src.num_cells(); ++c) {
        if (!a[c])
            in.fail("no image for cell " + std::to_string(c));
        out.push_back(*a[c]);
    }
    return SimplicialMap::build(src, dst, std::move(out));
}

inline SimplicialMap parse_smap(std::string_view text, const SimplicialSet& src, const SimplicialSet& dst)
{
    detail::Lines in(text);
    SimplicialMap f = parse_smap(in, src, dst);
    if (!in.done())
        in.fail("unexpected '" + in.peek() + "'");
    return f;
}

// ---------------------------------------------------------------- poset

inline std::string to_poset(const FinPoset& p)
{
    std::string out = "poset " + p.name() + "\n";
    for (int a = 0; a < p.size(); ++a)
        out += "elem " + p.label(a) + "\n";
    for (auto [a, b] : p.covers())
        out += "rel " + p.label(a) + " <= " + p.label(b) + "\n";
    return out;
}

inline FinPoset parse_poset(detail::Lines& in)
{
    if (!in.peek_keyword("poset"))
        in.fail("expected 'poset <name>'");
    const std::string name = detail::rest_after(in.next(), "poset");
    std::vector<std::string> labels;
    while (in.peek_keyword("elem")) {
        std::istringstream ws(in.next());
        std::string kw, label, extra;
        ws >> kw >> label;
        if (label.empty() || (ws >> extra))
            in.fail("expected 'elem <label>'");
        if (std::find(labels.begin(), labels.end(), label) != labels.end())
            in.fail("duplicate element '" + label + "'");
        labels.push_back(label);
    }
    auto index = [&](const std::string& l) {
        auto it = std::find(labels.begin(), labels.end(), l);
        if (it == labels.end())
            in.fail("unknown element '" + l + "'");
        return static_cast<int>(it - labels.begin());
    };
    std::vector<std::pair<int, int>> rel;
    while (in.peek_keyword("rel")) {
        std::istringstream ws(in.next());
        std::string kw, a, le, b, extra;
        ws >> kw >> a >> le >> b;
        if (le != "<=" || b.empty() || (ws >> extra))
            in.fail("expected 'rel <a> <= <b>'");
        rel.emplace_back(index(a), index(b));
    }
    return FinPoset::build(std::move(labels), rel, name);
}

inline FinPoset parse_poset(std::string_view text)
{
    detail::Lines in(text);
    FinPoset p = parse_poset(in);
    if (!in.done())
        in.fail("unexpected '" + in.peek() + "'");
    return p;
}

// ---------------------------------------------------------------- pmap

inline std::string to_pmap(const MonotoneMap& f)
{
    std::string out = to_poset(f.source()) + to_poset(f.target());
    out += "pmap " + f.source().name() + " " + f.target().name() + "\n";
    for (int a = 0; a < f.source().size(); ++a)
        out += "map " + f.source().label(a) + " -> " + f.target().label(f(a)) + "\n";
    return out;
}

inline MonotoneMap parse_pmap(std::string_view text)
{
    detail::Lines in(text);
    const FinPoset p = parse_poset(in);
    const FinPoset r = parse_poset(in);
    if (!in.peek_keyword("pmap"))
        in.fail("expected 'pmap <source> <target>'");
    in.next();
    std::vector<int> a(p.size(), -1);
    while (in.peek_keyword("map")) {
        std::istringstream ws(in.next());
        std::string kw, x, arrow, y, extra;
        ws >> kw >> x >> arrow >> y;
        if (arrow != "->" || y.empty() || (ws >> extra))
            in.fail("expected 'map <a> -> <b>'");
        const int i = p.index_of(x), j = r.index_of(y);
        if (i < 0 || j < 0)
            in.fail("unknown element in '" + x + " -> " + y + "'");
        if (a[i] >= 0)
            in.fail("element '" + x + "' mapped twice");
        a[i] = j;
    }
    if (!in.done())
        in.fail("unexpected '" + in.peek() + "'");
    for (int i = 0; i < p.size(); ++i)
        if (a[i] < 0)
            throw std::invalid_argument("pmap: no image for '" + p.label(i) + "'");
    return MonotoneMap::build(p, r, std::move(a));
}

// ---------------------------------------------------------------- files

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << text;
}

}  // namespace forge::io
