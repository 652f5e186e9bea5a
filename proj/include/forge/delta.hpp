// Arithmetic in the simplex category: monotone operators [m] -> [n],
// composition, epi-mono (Eilenberg-Zilber) factorization and joins of faces.
#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace forge {

/// Largest rank an operator may have. Face operators into [n] are also
/// handled as bit masks over {0..n}, so n has to fit a 32-bit word.
inline constexpr int kMaxRank = 31;

using Mask = std::uint32_t;

inline Mask full_mask(int n) { return n >= 31 ? ~Mask{0} : ((Mask{1} << (n + 1)) - 1); }

/// A weakly increasing map [src] -> [dst], stored by its values.
class Operator {
public:
    Operator() = default;  // identity of [0]

    static Operator from_values(int dst, std::span<const int> values)
    {
        if (values.empty())
            throw std::invalid_argument("operator needs at least one value");
        const int src = static_cast<int>(values.size()) - 1;
        if (src > kMaxRank || dst < 0 || dst > kMaxRank)
            throw std::invalid_argument("operator rank out of range");
        Operator op;
        op.src_ = static_cast<std::uint8_t>(src);
        op.dst_ = static_cast<std::uint8_t>(dst);
        for (int i = 0; i <= src; ++i) {
            const int v = values[i];
            if (v < 0 || v > dst)
                throw std::invalid_argument("operator value out of range");
            if (i > 0 && v < values[i - 1])
                throw std::invalid_argument("operator values must be weakly increasing");
            op.values_[i] = static_cast<std::uint8_t>(v);
        }
        return op;
    }

    static Operator from_values(int dst, std::initializer_list<int> values)
    {
        return from_values(dst, std::span<const int>(values.begin(), values.size()));
    }

    int src() const { return src_; }
    int dst() const { return dst_; }
    int operator[](int i) const { return values_[i]; }

    std::vector<int> values() const { return {values_.begin(), values_.begin() + src_ + 1}; }

    /// Bit mask of the image in [dst].
    Mask image_mask() const
    {
        Mask m = 0;
        for (int i = 0; i <= src_; ++i)
            m |= Mask{1} << values_[i];
        return m;
    }

    /// Bit mask of { i : values(i) == values(i+1) }.
    Mask repeat_mask() const
    {
        Mask m = 0;
        for (int i = 0; i < src_; ++i)
            if (values_[i] == values_[i + 1])
                m |= Mask{1} << i;
        return m;
    }

    bool is_face() const { return repeat_mask() == 0; }
    bool is_degeneracy() const { return image_mask() == full_mask(dst_); }
    bool is_identity() const { return src_ == dst_ && is_face(); }

    friend bool operator==(const Operator& a, const Operator& b)
    {
        if (a.src_ != b.src_ || a.dst_ != b.dst_)
            return false;
        for (int i = 0; i <= a.src_; ++i)
            if (a.values_[i] != b.values_[i])
                return false;
        return true;
    }

    std::size_t hash() const
    {
        std::size_t h = (std::size_t{src_} << 8) | dst_;
        for (int i = 0; i <= src_; ++i)
            h = h * 1099511628211ull + values_[i] + 1;
        return h;
    }

private:
    std::uint8_t src_ = 0;
    std::uint8_t dst_ = 0;
    std::array<std::uint8_t, kMaxRank + 1> values_{};
};

struct OperatorHash {
    std::size_t operator()(const Operator& op) const { return op.hash(); }
};

inline void check_rank(int n)
{
    if (n < 0 || n > kMaxRank)
        throw std::out_of_range("rank out of range: " + std::to_string(n));
}

inline Operator identity(int n)
{
    check_rank(n);
    std::array<int, kMaxRank + 1> v{};
    for (int i = 0; i <= n; ++i)
        v[i] = i;
    return Operator::from_values(n, std::span<const int>(v.data(), n + 1));
}

/// The face operator [popcount-1] -> [n] with the given image.
inline Operator face_from_mask(int n, Mask image)
{
    check_rank(n);
    if (image == 0 || (image & ~full_mask(n)) != 0)
        throw std::invalid_argument("face image must be a non-empty subset of [n]");
    std::array<int, kMaxRank + 1> v{};
    int k = 0;
    for (int i = 0; i <= n; ++i)
        if (image >> i & 1u)
            v[k++] = i;
    return Operator::from_values(n, std::span<const int>(v.data(), k));
}

/// The degeneracy operator out of [m] that repeats exactly at the given
/// positions (bit i set means values(i) == values(i+1)).
inline Operator degen_from_repeats(int m, Mask repeats)
{
    check_rank(m);
    if (m > 0 ? (repeats & ~full_mask(m - 1)) != 0 : repeats != 0)
        throw std::invalid_argument("repeat positions out of range");
    std::array<int, kMaxRank + 1> v{};
    int cur = 0;
    for (int i = 0; i <= m; ++i) {
        if (i > 0 && !(repeats >> (i - 1) & 1u))
            ++cur;
        v[i] = cur;
    }
    return Operator::from_values(cur, std::span<const int>(v.data(), m + 1));
}

/// delta_i : [n-1] -> [n], skipping i.
inline Operator make_face(int i, int n)
{
    if (n < 1 || i < 0 || i > n)
        throw std::out_of_range("face index out of range");
    return face_from_mask(n, full_mask(n) & ~(Mask{1} << i));
}

/// sigma_i : [n+1] -> [n], hitting i twice.
inline Operator make_degen(int i, int n)
{
    if (n < 0 || i < 0 || i > n)
        throw std::out_of_range("degeneracy index out of range");
    return degen_from_repeats(n + 1, Mask{1} << i);
}

/// epsilon_j : [0] -> [n], the j-th vertex.
inline Operator make_vertex(int j, int n)
{
    if (j < 0 || j > n)
        throw std::out_of_range("vertex index out of range");
    return face_from_mask(n, Mask{1} << j);
}

/// second o first.
inline Operator compose(const Operator& first, const Operator& second)
{
    if (first.dst() != second.src())
        throw std::invalid_argument("compose: rank mismatch");
    std::array<int, kMaxRank + 1> v{};
    for (int i = 0; i <= first.src(); ++i)
        v[i] = second[first[i]];
    return Operator::from_values(second.dst(), std::span<const int>(v.data(), first.src() + 1));
}

struct EzFactors {
    Operator face;   // injective
    Operator degen;  // surjective; compose(degen, face) is the input
};

inline EzFactors ez_factor(const Operator& a)
{
    return {face_from_mask(a.dst(), a.image_mask()), degen_from_repeats(a.src(), a.repeat_mask())};
}

/// The face operator whose image is im(mu) u im(nu).
inline Operator join_faces(const Operator& mu, const Operator& nu)
{
    if (mu.dst() != nu.dst())
        throw std::invalid_argument("join_faces: rank mismatch");
    if (!mu.is_face() || !nu.is_face())
        throw std::invalid_argument("join_faces: arguments must be face operators");
    return face_from_mask(mu.dst(), mu.image_mask() | nu.image_mask());
}

/// Value of the section s of a degeneracy (degen o s == id) picking the
/// first preimage of each target index.
inline Operator first_section(const Operator& degen)
{
    std::array<int, kMaxRank + 1> v{};
    int k = 0;
    for (int i = 0; i <= degen.src(); ++i)
        if (i == 0 || degen[i] != degen[i - 1])
            v[k++] = i;
    return Operator::from_values(degen.src(), std::span<const int>(v.data(), k));
}

// Text encodings:
//   face n {i0,i1,...}    a face operator into [n], by its image
//   degen m {j0,...}      a degeneracy out of [m], by its repeat positions
//   op m n (v0 v1 ...)    any operator

namespace detail {

inline std::string mask_set(Mask m)
{
    std::string s = "{";
    bool first = true;
    for (int i = 0; i < 32; ++i)
        if (m >> i & 1u) {
            if (!first)
                s += ',';
            s += std::to_string(i);
            first = false;
        }
    return s + "}";
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    void skip_ws()
    {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t'))
            ++pos_;
    }
    bool at_end()
    {
        skip_ws();
        return pos_ >= text_.size();
    }
    char peek()
    {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    void expect(char c)
    {
        if (peek() != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    bool accept(char c)
    {
        if (peek() != c)
            return false;
        ++pos_;
        return true;
    }
    std::string word()
    {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != ' ' && text_[pos_] != '\t' && text_[pos_] != ','
               && text_[pos_] != '(' && text_[pos_] != ')' && text_[pos_] != '{' && text_[pos_] != '}'
               && text_[pos_] != '[' && text_[pos_] != ']')
            ++pos_;
        if (start == pos_)
            fail("expected a token");
        return std::string(text_.substr(start, pos_ - start));
    }
    int integer()
    {
        const std::string w = word();
        try {
            std::size_t used = 0;
            const int v = std::stoi(w, &used);
            if (used != w.size())
                fail("bad integer '" + w + "'");
            return v;
        } catch (const std::logic_error&) {
            fail("bad integer '" + w + "'");
        }
    }
    Mask int_set()
    {
        expect('{');
        Mask m = 0;
        if (accept('}'))
            return m;
        do {
            const int i = integer();
            if (i < 0 || i > kMaxRank)
                fail("set element out of range");
            m |= Mask{1} << i;
        } while (accept(','));
        expect('}');
        return m;
    }
    [[noreturn]] void fail(const std::string& what) const
    {
        throw std::invalid_argument("parse error at column " + std::to_string(pos_) + ": " + what
                                    + " in '" + std::string(text_) + "'");
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

inline Operator parse_operator(Lexer& lex)
{
    const std::string kind = lex.word();
    if (kind == "face") {
        const int n = lex.integer();
        return face_from_mask(n, lex.int_set());
    }
    if (kind == "degen") {
        const int m = lex.integer();
        return degen_from_repeats(m, lex.int_set());
    }
    if (kind == "op") {
        const int m = lex.integer();
        const int n = lex.integer();
        lex.expect('(');
        std::vector<int> v;
        while (!lex.accept(')'))
            v.push_back(lex.integer());
        if (static_cast<int>(v.size()) != m + 1)
            lex.fail("operator value count does not match its source rank");
        return Operator::from_values(n, v);
    }
    lex.fail("unknown operator kind '" + kind + "'");
}

}  // namespace detail

/// Canonical text of an operator: faces and degeneracies use their compact
/// encodings, everything else the explicit value list.
inline std::string to_string(const Operator& a)
{
    if (a.is_face() && !a.is_degeneracy())
        return "face " + std::to_string(a.dst()) + " " + detail::mask_set(a.image_mask());
    if (a.is_degeneracy())
        return "degen " + std::to_string(a.src()) + " " + detail::mask_set(a.repeat_mask());
    std::string s = "op " + std::to_string(a.src()) + " " + std::to_string(a.dst()) + " (";
    for (int i = 0; i <= a.src(); ++i) {
        if (i)
            s += ' ';
        s += std::to_string(a[i]);
    }
    return s + ")";
}

inline std::string degen_to_string(const Operator& degen)
{
    return "degen " + std::to_string(degen.src()) + " " + detail::mask_set(degen.repeat_mask());
}

inline Operator parse_operator(std::string_view text)
{
    detail::Lexer lex(text);
    Operator op = detail::parse_operator(lex);
    if (!lex.at_end())
        lex.fail("trailing characters");
    return op;
}

}  // namespace forge

template <>
struct std::hash<forge::Operator> {
    std::size_t operator()(const forge::Operator& op) const { return op.hash(); }
};
