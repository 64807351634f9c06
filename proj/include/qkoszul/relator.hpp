#ifndef QKOSZUL_RELATOR_HPP
#define QKOSZUL_RELATOR_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qkoszul {

// Group word over generators x_0..x_{d-1}: tree of letters with integer
// exponents, concatenations, and commutator nodes [u,v] = u^-1 v^-1 u v.
// Commutators are first-class so that words like nested commutators do
// not blow up when expanded.
struct RelatorWord {
    enum class Kind { letter, concat, commutator };

    Kind kind = Kind::concat;
    unsigned gen = 0;       // letter
    long long exponent = 1; // letter; nonzero
    std::vector<RelatorWord> parts; // concat: any number; commutator: exactly 2

    static RelatorWord letter(unsigned g, long long e)
    {
        if (e == 0)
            throw std::invalid_argument("zero exponent in group word");
        RelatorWord w;
        w.kind = Kind::letter;
        w.gen = g;
        w.exponent = e;
        return w;
    }

    static RelatorWord concat(std::vector<RelatorWord> ps)
    {
        RelatorWord w;
        w.kind = Kind::concat;
        w.parts = std::move(ps);
        return w;
    }

    static RelatorWord commutator(RelatorWord u, RelatorWord v)
    {
        RelatorWord w;
        w.kind = Kind::commutator;
        w.parts.push_back(std::move(u));
        w.parts.push_back(std::move(v));
        return w;
    }

    bool is_empty() const { return kind == Kind::concat && parts.empty(); }
};

inline RelatorWord word_inverse(const RelatorWord& w)
{
    switch (w.kind) {
    case RelatorWord::Kind::letter:
        return RelatorWord::letter(w.gen, -w.exponent);
    case RelatorWord::Kind::commutator:
        // [u,v]^-1 = [v,u]
        return RelatorWord::commutator(w.parts[1], w.parts[0]);
    case RelatorWord::Kind::concat: {
        std::vector<RelatorWord> ps;
        ps.reserve(w.parts.size());
        for (auto it = w.parts.rbegin(); it != w.parts.rend(); ++it)
            ps.push_back(word_inverse(*it));
        return RelatorWord::concat(std::move(ps));
    }
    }
    throw std::logic_error("unreachable");
}

inline unsigned max_generator_index(const RelatorWord& w)
{
    unsigned m = 0;
    if (w.kind == RelatorWord::Kind::letter)
        return w.gen;
    for (const auto& part : w.parts)
        m = std::max(m, max_generator_index(part));
    return m;
}

namespace detail {
inline void accumulate_exponents(const RelatorWord& w, std::vector<long long>& e)
{
    switch (w.kind) {
    case RelatorWord::Kind::letter:
        e.at(w.gen) += w.exponent;
        return;
    case RelatorWord::Kind::commutator:
        return; // commutators die in the abelianization
    case RelatorWord::Kind::concat:
        for (const auto& part : w.parts)
            accumulate_exponents(part, e);
        return;
    }
}
} // namespace detail

// Integer exponent-sum vector of the word in Z^d.
inline std::vector<long long> exponent_vector(const RelatorWord& w, std::size_t d)
{
    std::vector<long long> e(d, 0);
    detail::accumulate_exponents(w, e);
    return e;
}

inline std::string word_to_string(const RelatorWord& w, const std::vector<std::string>& names)
{
    switch (w.kind) {
    case RelatorWord::Kind::letter: {
        std::string s = names.at(w.gen);
        if (w.exponent != 1)
            s += "^" + std::to_string(w.exponent);
        return s;
    }
    case RelatorWord::Kind::commutator:
        return "[" + word_to_string(w.parts[0], names) + "," + word_to_string(w.parts[1], names) + "]";
    case RelatorWord::Kind::concat: {
        if (w.parts.empty())
            return "1";
        std::string s;
        for (std::size_t i = 0; i < w.parts.size(); ++i) {
            if (i)
                s += "*";
            s += word_to_string(w.parts[i], names);
        }
        return s;
    }
    }
    throw std::logic_error("unreachable");
}

} // namespace qkoszul

#endif
