#ifndef QKOSZUL_SERIES_HPP
#define QKOSZUL_SERIES_HPP

#include "qkoszul/poly.hpp"
#include "qkoszul/relator.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qkoszul {

// Power series in noncommuting indeterminates, truncated at a fixed total
// degree D: one homogeneous component per degree 0..D, everything above
// discarded by every operation.
class TruncatedSeries {
public:
    TruncatedSeries(unsigned p, std::size_t truncation)
        : p_(p), trunc_(truncation)
    {
        require_prime(p);
        comps_.reserve(trunc_ + 1);
        for (std::size_t n = 0; n <= trunc_; ++n)
            comps_.emplace_back(p, n);
    }

    static TruncatedSeries one(unsigned p, std::size_t truncation)
    {
        TruncatedSeries s(p, truncation);
        s.comps_[0].add_term(Monomial{}, 1);
        return s;
    }

    // 1 + X_i
    static TruncatedSeries one_plus_gen(unsigned p, std::size_t truncation, unsigned i)
    {
        TruncatedSeries s = one(p, truncation);
        if (truncation >= 1)
            s.comps_[1].add_term(Monomial({i}), 1);
        return s;
    }

    unsigned p() const { return p_; }
    std::size_t truncation() const { return trunc_; }
    const HomogeneousPoly& component(std::size_t n) const { return comps_.at(n); }
    HomogeneousPoly& component(std::size_t n) { return comps_.at(n); }

    unsigned constant_term() const { return comps_[0].coeff(Monomial{}); }

    bool is_one() const
    {
        if (constant_term() != 1 % p_)
            return false;
        for (std::size_t n = 1; n <= trunc_; ++n)
            if (!comps_[n].is_zero())
                return false;
        return true;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        return a.p_ == b.p_ && a.trunc_ == b.trunc_ && a.comps_ == b.comps_;
    }

private:
    unsigned p_;
    std::size_t trunc_;
    std::vector<HomogeneousPoly> comps_;
};

inline TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b)
{
    if (a.p() != b.p() || a.truncation() != b.truncation())
        throw std::invalid_argument("series shape mismatch");
    TruncatedSeries c(a.p(), a.truncation());
    for (std::size_t n = 0; n <= c.truncation(); ++n)
        for (std::size_t k = 0; k <= n; ++k)
            c.component(n) = hp_add(c.component(n), hp_mul(a.component(k), b.component(n - k)));
    return c;
}

// Inverse of a series with unit constant term, degree by degree:
// r_n = -a_0^{-1} * sum_{k>=1} a_k r_{n-k}.
inline TruncatedSeries series_inverse(const TruncatedSeries& a)
{
    const unsigned p = a.p();
    const unsigned c0 = a.constant_term();
    if (c0 == 0)
        throw std::domain_error("series with zero constant term has no inverse");
    const unsigned c0inv = fp_inv(c0, p);
    TruncatedSeries r(p, a.truncation());
    r.component(0).add_term(Monomial{}, c0inv);
    for (std::size_t n = 1; n <= a.truncation(); ++n) {
        HomogeneousPoly acc(p, n);
        for (std::size_t k = 1; k <= n; ++k)
            acc = hp_add(acc, hp_mul(a.component(k), r.component(n - k)));
        r.component(n) = hp_scale(acc, -static_cast<long long>(c0inv));
    }
    return r;
}

// a^e by binary powering; negative exponents go through the inverse.
inline TruncatedSeries series_pow(const TruncatedSeries& a, long long e)
{
    TruncatedSeries base = e < 0 ? series_inverse(a) : a;
    unsigned long long n = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1 : static_cast<unsigned long long>(e);
    TruncatedSeries r = TruncatedSeries::one(a.p(), a.truncation());
    while (n) {
        if (n & 1)
            r = series_mul(r, base);
        n >>= 1;
        if (n)
            base = series_mul(base, base);
    }
    return r;
}

// Image of a group word under x_i -> 1 + X_i (and x_i^-1 -> the truncated
// alternating geometric series), computed on the word tree so commutators
// stay compact.
inline TruncatedSeries magnus_expand(const RelatorWord& w, std::size_t d, std::size_t truncation,
                                     unsigned p)
{
    switch (w.kind) {
    case RelatorWord::Kind::letter: {
        if (w.gen >= d)
            throw std::out_of_range("generator index " + std::to_string(w.gen + 1) +
                                    " out of range (d = " + std::to_string(d) + ")");
        return series_pow(TruncatedSeries::one_plus_gen(p, truncation, w.gen), w.exponent);
    }
    case RelatorWord::Kind::concat: {
        TruncatedSeries r = TruncatedSeries::one(p, truncation);
        for (const auto& part : w.parts)
            r = series_mul(r, magnus_expand(part, d, truncation, p));
        return r;
    }
    case RelatorWord::Kind::commutator: {
        TruncatedSeries u = magnus_expand(w.parts[0], d, truncation, p);
        TruncatedSeries v = magnus_expand(w.parts[1], d, truncation, p);
        return series_mul(series_mul(series_inverse(u), series_inverse(v)), series_mul(u, v));
    }
    }
    throw std::logic_error("unreachable");
}

struct InitialForm {
    std::size_t degree;
    HomogeneousPoly form;
};

// Lowest nonzero homogeneous component of s - 1.  Empty result means the
// series is trivial up to its truncation degree.  The input must have
// constant term 1 (a Magnus image of a group element).
inline std::optional<InitialForm> series_initial_form(const TruncatedSeries& s)
{
    if (s.constant_term() != 1 % s.p())
        throw std::invalid_argument("series constant term is not 1");
    for (std::size_t n = 1; n <= s.truncation(); ++n)
        if (!s.component(n).is_zero())
            return InitialForm{n, s.component(n)};
    return std::nullopt;
}

// Zassenhaus depth of a group element through its Magnus image: the least
// n >= 1 with a nonzero degree-n component, or truncation+1 if trivial to
// the truncation degree.
inline std::size_t series_depth(const TruncatedSeries& s)
{
    auto init = series_initial_form(s);
    return init ? init->degree : s.truncation() + 1;
}

} // namespace qkoszul

#endif
