#ifndef QKOSZUL_PARSE_HPP
#define QKOSZUL_PARSE_HPP

#include "qkoszul/errors.hpp"
#include "qkoszul/progroup.hpp"
#include "qkoszul/quadratic.hpp"

#include <cctype>
#include <map>
#include <string>
#include <vector>

namespace qkoszul {

namespace detail {

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;

    bool at_end() const { return pos >= s.size(); }
    char peek() const { return at_end() ? '\0' : s[pos]; }
    char get() { return at_end() ? '\0' : s[pos++]; }

    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    }

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ParseError(msg + " at offset " + std::to_string(pos) + " in '" + s + "'", pos);
    }

    void expect(char c)
    {
        skip_ws();
        if (peek() != c)
            fail(std::string("expected '") + c + "'");
        ++pos;
    }

    bool accept(char c)
    {
        skip_ws();
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    std::string identifier()
    {
        skip_ws();
        if (at_end() || !(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
            fail("expected a generator name");
        std::string id;
        while (!at_end() &&
               (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
            id += get();
        return id;
    }

    long long integer()
    {
        skip_ws();
        bool neg = accept('-');
        if (!neg)
            accept('+');
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected an integer");
        long long v = 0;
        int digits = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            if (++digits > 18)
                fail("integer literal too large");
            v = v * 10 + (get() - '0');
        }
        return neg ? -v : v;
    }

    bool looks_like_number()
    {
        skip_ws();
        return std::isdigit(static_cast<unsigned char>(peek()));
    }
};

inline std::map<std::string, unsigned> name_table(const std::vector<std::string>& names)
{
    std::map<std::string, unsigned> t;
    for (std::size_t i = 0; i < names.size(); ++i)
        t[names[i]] = static_cast<unsigned>(i);
    return t;
}

// --- polynomial grammar ---
//   poly   := ['-'] term (('+'|'-') term)*
//   term   := integer | [integer '*'] factor ('*' factor)*
//   factor := name ['^' k] | '[' poly ',' poly ']' ['^' k]

inline NcPoly parse_poly_expr(Cursor& c, unsigned p, const std::map<std::string, unsigned>& names);

inline NcPoly parse_poly_factor(Cursor& c, unsigned p, const std::map<std::string, unsigned>& names)
{
    c.skip_ws();
    NcPoly base(p);
    if (c.accept('[')) {
        NcPoly lhs = parse_poly_expr(c, p, names);
        c.expect(',');
        NcPoly rhs = parse_poly_expr(c, p, names);
        c.expect(']');
        base = nc_commutator(lhs, rhs);
    } else {
        std::size_t at = c.pos;
        std::string id = c.identifier();
        auto it = names.find(id);
        if (it == names.end())
            throw ParseError("unknown generator '" + id + "' at offset " + std::to_string(at), at);
        base.add_term(Monomial({it->second}), 1);
    }
    if (c.accept('^')) {
        long long e = c.integer();
        if (e < 0)
            c.fail("negative exponent in a polynomial");
        NcPoly pw(p);
        pw.add_term(Monomial{}, 1);
        for (long long k = 0; k < e; ++k)
            pw = nc_mul(pw, base);
        return pw;
    }
    return base;
}

inline NcPoly parse_poly_term(Cursor& c, unsigned p, const std::map<std::string, unsigned>& names)
{
    c.skip_ws();
    NcPoly acc(p);
    acc.add_term(Monomial{}, 1);
    bool have_factor = false;
    if (c.looks_like_number()) {
        long long coef = c.integer();
        acc = nc_scale(acc, coef);
        have_factor = true;
        if (!c.accept('*'))
            return acc;
    }
    for (;;) {
        acc = nc_mul(acc, parse_poly_factor(c, p, names));
        have_factor = true;
        if (!c.accept('*'))
            break;
    }
    if (!have_factor)
        c.fail("empty term");
    return acc;
}

inline NcPoly parse_poly_expr(Cursor& c, unsigned p, const std::map<std::string, unsigned>& names)
{
    c.skip_ws();
    bool neg = c.accept('-');
    NcPoly acc = parse_poly_term(c, p, names);
    if (neg)
        acc = nc_scale(acc, -1);
    for (;;) {
        c.skip_ws();
        if (c.accept('+'))
            acc.add(parse_poly_term(c, p, names));
        else if (c.accept('-'))
            acc.add(nc_scale(parse_poly_term(c, p, names), -1));
        else
            break;
    }
    return acc;
}

// --- group word grammar ---
//   word    := wfactor ('*' wfactor)*
//   wfactor := name ['^' k] | '[' word ',' word ']'     (k nonzero)

inline RelatorWord parse_word_expr(Cursor& c, const std::map<std::string, unsigned>& names);

inline RelatorWord parse_word_factor(Cursor& c, const std::map<std::string, unsigned>& names)
{
    c.skip_ws();
    if (c.accept('[')) {
        RelatorWord lhs = parse_word_expr(c, names);
        c.expect(',');
        RelatorWord rhs = parse_word_expr(c, names);
        c.expect(']');
        return RelatorWord::commutator(std::move(lhs), std::move(rhs));
    }
    std::size_t at = c.pos;
    std::string id = c.identifier();
    auto it = names.find(id);
    if (it == names.end())
        throw ParseError("unknown generator '" + id + "' at offset " + std::to_string(at), at);
    long long e = 1;
    if (c.accept('^')) {
        std::size_t eat = c.pos;
        e = c.integer();
        if (e == 0)
            throw ParseError("zero exponent at offset " + std::to_string(eat), eat);
    }
    return RelatorWord::letter(it->second, e);
}

inline RelatorWord parse_word_expr(Cursor& c, const std::map<std::string, unsigned>& names)
{
    std::vector<RelatorWord> parts;
    parts.push_back(parse_word_factor(c, names));
    while (c.accept('*'))
        parts.push_back(parse_word_factor(c, names));
    if (parts.size() == 1)
        return parts.front();
    return RelatorWord::concat(std::move(parts));
}

struct FileLines {
    unsigned p = 0;
    std::vector<std::string> generators;
    std::vector<std::pair<std::string, std::string>> entries; // residual key/value lines
};

inline FileLines split_key_value_file(const std::string& text, const std::string& what)
{
    FileLines out;
    std::size_t line_no = 0;
    std::size_t start = 0;
    bool saw_p = false, saw_gens = false;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos)
            end = text.size();
        std::string line = text.substr(start, end - start);
        ++line_no;
        start = end + 1;
        std::size_t h = line.find('#');
        if (h != std::string::npos)
            line = line.substr(0, h);
        auto nonspace = line.find_first_not_of(" \t\r");
        if (nonspace == std::string::npos)
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(what + " line " + std::to_string(line_no) + ": expected 'key = value'");
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "p") {
            Cursor c{value};
            long long pv = c.integer();
            c.skip_ws();
            if (!c.at_end() || pv < 2 || !is_prime(static_cast<unsigned>(pv)))
                throw ParseError(what + " line " + std::to_string(line_no) + ": p must be a prime");
            out.p = static_cast<unsigned>(pv);
            saw_p = true;
        } else if (key == "generators") {
            Cursor c{value};
            c.skip_ws();
            while (!c.at_end()) {
                out.generators.push_back(c.identifier());
                c.skip_ws();
            }
            for (std::size_t i = 0; i < out.generators.size(); ++i)
                for (std::size_t j = i + 1; j < out.generators.size(); ++j)
                    if (out.generators[i] == out.generators[j])
                        throw ParseError(what + " line " + std::to_string(line_no) +
                                         ": duplicate generator '" + out.generators[i] + "'");
            saw_gens = true;
        } else {
            if (!saw_p || !saw_gens)
                throw ParseError(what + " line " + std::to_string(line_no) +
                                 ": p and generators must come first");
            out.entries.emplace_back(key, value);
        }
    }
    if (!saw_p)
        throw ParseError(what + ": missing 'p = <prime>' line");
    if (!saw_gens)
        throw ParseError(what + ": missing 'generators = ...' line");
    return out;
}

} // namespace detail

inline NcPoly parse_polynomial(const std::string& text, unsigned p,
                               const std::vector<std::string>& names)
{
    detail::Cursor c{text};
    auto table = detail::name_table(names);
    NcPoly f = detail::parse_poly_expr(c, p, table);
    c.skip_ws();
    if (!c.at_end())
        c.fail("trailing input after polynomial");
    return f;
}

inline RelatorWord parse_relator_word(const std::string& text, const std::vector<std::string>& names)
{
    detail::Cursor c{text};
    auto table = detail::name_table(names);
    RelatorWord w = detail::parse_word_expr(c, table);
    c.skip_ws();
    if (!c.at_end())
        c.fail("trailing input after word");
    return w;
}

// Algebra file: `p = <prime>`, `generators = <names>`, then any number of
// `relation = <polynomial>` lines (degree-2 homogeneous).
inline QuadraticPresentation parse_algebra(const std::string& text)
{
    auto file = detail::split_key_value_file(text, "algebra file");
    std::vector<HomogeneousPoly> rels;
    for (const auto& [key, value] : file.entries) {
        if (key != "relation")
            throw ParseError("algebra file: unknown key '" + key + "'");
        NcPoly f = parse_polynomial(value, file.p, file.generators);
        if (f.is_zero())
            continue;
        if (!f.is_homogeneous() || f.max_degree() != 2)
            throw ParseError("algebra file: relation '" + value +
                             "' is not homogeneous of degree 2");
        rels.push_back(f.to_homogeneous(2));
    }
    return presentation_from_relations(file.p, file.generators.size(), rels, file.generators);
}

// Presentation file: `p = <prime>`, `generators = <names>`, `relator = <word>`.
inline GroupPresentation parse_presentation(const std::string& text)
{
    auto file = detail::split_key_value_file(text, "presentation file");
    std::optional<RelatorWord> relator;
    for (const auto& [key, value] : file.entries) {
        if (key != "relator")
            throw ParseError("presentation file: unknown key '" + key + "'");
        if (relator)
            throw ParseError("presentation file: more than one relator (one-relator only)");
        relator = parse_relator_word(value, file.generators);
    }
    if (!relator)
        throw ParseError("presentation file: missing 'relator = <word>' line");
    return GroupPresentation{file.p, file.generators.size(), file.generators, *relator};
}

inline std::string to_presentation_file(const GroupPresentation& g)
{
    std::string out = "p = " + std::to_string(g.p) + "\n";
    out += "generators =";
    for (const auto& n : g.names)
        out += " " + n;
    out += "\n";
    out += "relator = " + word_to_string(g.relator, g.names) + "\n";
    return out;
}

} // namespace qkoszul

#endif
