#ifndef QKOSZUL_MONOMIAL_HPP
#define QKOSZUL_MONOMIAL_HPP

#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

namespace qkoszul {

// Word in the free monoid on generators 0..d-1; the empty word is 1.
struct Monomial {
    std::vector<unsigned> word;

    Monomial() = default;
    explicit Monomial(std::vector<unsigned> w) : word(std::move(w)) {}

    std::size_t degree() const { return word.size(); }
    bool is_one() const { return word.empty(); }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.word == b.word; }
};

// Degree-lexicographic order: shorter degree first, equal degrees compared
// lexicographically by index sequence.  This is a monomial order (stable
// under multiplication by common factors), and on homogeneous polynomials
// it restricts to plain lex within each degree.
inline std::strong_ordering deglex_compare(const Monomial& a, const Monomial& b)
{
    if (a.degree() != b.degree())
        return a.degree() <=> b.degree();
    return a.word <=> b.word;
}

inline bool operator<(const Monomial& a, const Monomial& b)
{
    return deglex_compare(a, b) == std::strong_ordering::less;
}

inline Monomial concat(const Monomial& a, const Monomial& b)
{
    Monomial c = a;
    c.word.insert(c.word.end(), b.word.begin(), b.word.end());
    return c;
}

inline Monomial subword(const Monomial& m, std::size_t begin, std::size_t len)
{
    return Monomial(std::vector<unsigned>(m.word.begin() + begin, m.word.begin() + begin + len));
}

// First position where `factor` occurs as a contiguous subword, if any.
inline std::optional<std::size_t> find_factor(const Monomial& m, const Monomial& factor)
{
    if (factor.degree() == 0 || factor.degree() > m.degree())
        return std::nullopt;
    const std::size_t last = m.degree() - factor.degree();
    for (std::size_t pos = 0; pos <= last; ++pos) {
        bool hit = true;
        for (std::size_t k = 0; k < factor.degree(); ++k)
            if (m.word[pos + k] != factor.word[k]) {
                hit = false;
                break;
            }
        if (hit)
            return pos;
    }
    return std::nullopt;
}

} // namespace qkoszul

#endif
