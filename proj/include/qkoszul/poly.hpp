#ifndef QKOSZUL_POLY_HPP
#define QKOSZUL_POLY_HPP

#include "qkoszul/fp.hpp"
#include "qkoszul/monomial.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qkoszul {

// Homogeneous noncommutative polynomial over F_p.  Terms map monomials of
// one fixed degree to nonzero residues; the zero polynomial of any stated
// degree has an empty term map.
class HomogeneousPoly {
public:
    using Terms = std::map<Monomial, unsigned>;

    HomogeneousPoly(unsigned p, std::size_t degree) : p_(p), degree_(degree)
    {
        require_prime(p);
    }

    unsigned p() const { return p_; }
    std::size_t degree() const { return degree_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    unsigned coeff(const Monomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? 0u : it->second;
    }

    void add_term(const Monomial& m, long long c)
    {
        if (m.degree() != degree_)
            throw std::invalid_argument("term degree mismatch in homogeneous polynomial");
        const unsigned cc = fp_normalize(c, p_);
        if (cc == 0)
            return;
        auto [it, fresh] = terms_.emplace(m, cc);
        if (!fresh) {
            it->second = fp_add(it->second, cc, p_);
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    // Greatest monomial under deglex (lex within the fixed degree).
    const Monomial& leading_monomial() const
    {
        if (terms_.empty())
            throw std::domain_error("leading monomial of zero polynomial");
        return terms_.rbegin()->first;
    }
    unsigned leading_coeff() const { return terms_.rbegin()->second; }

    friend bool operator==(const HomogeneousPoly& a, const HomogeneousPoly& b)
    {
        return a.p_ == b.p_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

private:
    unsigned p_;
    std::size_t degree_;
    Terms terms_;
};

inline HomogeneousPoly hp_zero(unsigned p, std::size_t degree)
{
    return HomogeneousPoly(p, degree);
}

inline HomogeneousPoly hp_monomial(unsigned p, const Monomial& m, long long c = 1)
{
    HomogeneousPoly h(p, m.degree());
    h.add_term(m, c);
    return h;
}

inline HomogeneousPoly hp_add(const HomogeneousPoly& a, const HomogeneousPoly& b)
{
    if (a.p() != b.p() || a.degree() != b.degree())
        throw std::invalid_argument("adding incompatible homogeneous polynomials");
    HomogeneousPoly c = a;
    for (const auto& [m, v] : b.terms())
        c.add_term(m, v);
    return c;
}

inline HomogeneousPoly hp_scale(const HomogeneousPoly& a, long long c)
{
    HomogeneousPoly r(a.p(), a.degree());
    const unsigned cc = fp_normalize(c, a.p());
    for (const auto& [m, v] : a.terms())
        r.add_term(m, fp_mul(v, cc, a.p()));
    return r;
}

inline HomogeneousPoly hp_sub(const HomogeneousPoly& a, const HomogeneousPoly& b)
{
    return hp_add(a, hp_scale(b, -1));
}

inline HomogeneousPoly hp_mul(const HomogeneousPoly& a, const HomogeneousPoly& b)
{
    if (a.p() != b.p())
        throw std::invalid_argument("multiplying polynomials over different primes");
    HomogeneousPoly c(a.p(), a.degree() + b.degree());
    for (const auto& [ma, va] : a.terms())
        for (const auto& [mb, vb] : b.terms())
            c.add_term(concat(ma, mb), fp_mul(va, vb, a.p()));
    return c;
}

// u * a * v for monomials u, v.
inline HomogeneousPoly hp_sandwich(const Monomial& u, const HomogeneousPoly& a, const Monomial& v)
{
    HomogeneousPoly c(a.p(), u.degree() + a.degree() + v.degree());
    for (const auto& [m, coef] : a.terms())
        c.add_term(concat(concat(u, m), v), coef);
    return c;
}

// General (possibly inhomogeneous) noncommutative polynomial; mainly the
// target of the text grammar. Degrees are split out on demand.
class NcPoly {
public:
    using Terms = std::map<Monomial, unsigned>;

    explicit NcPoly(unsigned p) : p_(p) { require_prime(p); }

    unsigned p() const { return p_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Monomial& m, long long c)
    {
        const unsigned cc = fp_normalize(c, p_);
        if (cc == 0)
            return;
        auto [it, fresh] = terms_.emplace(m, cc);
        if (!fresh) {
            it->second = fp_add(it->second, cc, p_);
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    void add(const NcPoly& o)
    {
        for (const auto& [m, c] : o.terms_)
            add_term(m, c);
    }

    bool is_homogeneous() const
    {
        if (terms_.empty())
            return true;
        const std::size_t d = terms_.begin()->first.degree();
        for (const auto& [m, c] : terms_)
            if (m.degree() != d)
                return false;
        return true;
    }

    std::size_t max_degree() const
    {
        std::size_t d = 0;
        for (const auto& [m, c] : terms_)
            if (m.degree() > d)
                d = m.degree();
        return d;
    }

    // Requires all terms to share one degree; `expect` pins the degree of
    // the zero polynomial.
    HomogeneousPoly to_homogeneous(std::size_t expect) const
    {
        HomogeneousPoly h(p_, terms_.empty() ? expect : terms_.begin()->first.degree());
        for (const auto& [m, c] : terms_)
            h.add_term(m, c); // throws on mixed degrees
        return h;
    }

    friend bool operator==(const NcPoly& a, const NcPoly& b)
    {
        return a.p_ == b.p_ && a.terms_ == b.terms_;
    }

private:
    unsigned p_;
    Terms terms_;
};

inline NcPoly nc_mul(const NcPoly& a, const NcPoly& b)
{
    NcPoly c(a.p());
    for (const auto& [ma, va] : a.terms())
        for (const auto& [mb, vb] : b.terms())
            c.add_term(concat(ma, mb), fp_mul(va, vb, a.p()));
    return c;
}

inline NcPoly nc_scale(const NcPoly& a, long long c)
{
    NcPoly r(a.p());
    const unsigned cc = fp_normalize(c, a.p());
    for (const auto& [m, v] : a.terms())
        r.add_term(m, fp_mul(v, cc, a.p()));
    return r;
}

// [a, b] = a*b - b*a.
inline NcPoly nc_commutator(const NcPoly& a, const NcPoly& b)
{
    NcPoly c = nc_mul(a, b);
    c.add(nc_scale(nc_mul(b, a), -1));
    return c;
}

// --- printing (the text grammar also understood by the parser) ---

inline std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& names)
{
    if (m.is_one())
        return "1";
    std::string out;
    std::size_t i = 0;
    while (i < m.word.size()) {
        std::size_t j = i;
        while (j < m.word.size() && m.word[j] == m.word[i])
            ++j;
        if (!out.empty())
            out += "*";
        out += names.at(m.word[i]);
        if (j - i > 1)
            out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

namespace detail {
inline void append_terms(std::string& out, const std::map<Monomial, unsigned>& terms, unsigned p,
                         const std::vector<std::string>& names)
{
    bool first = true;
    // ascending deglex order; canonical relation rows then start with a
    // monic term instead of a leading minus
    for (auto it = terms.begin(); it != terms.end(); ++it) {
        unsigned c = it->second;
        bool neg = (p > 2 && c == p - 1);
        if (first) {
            if (neg)
                out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        unsigned shown = neg ? 1 : c;
        std::string mono = monomial_to_string(it->first, names);
        if (shown != 1 || mono == "1") {
            out += std::to_string(shown);
            if (mono != "1")
                out += "*";
        }
        if (mono != "1")
            out += mono;
    }
    if (first)
        out += "0";
}
} // namespace detail

inline std::string to_string(const HomogeneousPoly& h, const std::vector<std::string>& names)
{
    std::string out;
    detail::append_terms(out, h.terms(), h.p(), names);
    return out;
}

inline std::string to_string(const NcPoly& f, const std::vector<std::string>& names)
{
    std::string out;
    detail::append_terms(out, f.terms(), f.p(), names);
    return out;
}

inline std::vector<std::string> default_names(std::size_t d, const std::string& prefix = "X")
{
    std::vector<std::string> names;
    names.reserve(d);
    for (std::size_t i = 0; i < d; ++i)
        names.push_back(prefix + std::to_string(i + 1));
    return names;
}

} // namespace qkoszul

#endif
