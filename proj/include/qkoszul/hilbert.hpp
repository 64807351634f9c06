#ifndef QKOSZUL_HILBERT_HPP
#define QKOSZUL_HILBERT_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qkoszul {

// Truncated integer power series a[0] + a[1] t + ... used for dimension
// bookkeeping (Hilbert series of graded algebras at desk scale).
using ZSeries = std::vector<long long>;

inline ZSeries zs_mul(const ZSeries& a, const ZSeries& b, std::size_t N)
{
    ZSeries c(N + 1, 0);
    for (std::size_t i = 0; i <= N && i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; i + j <= N && j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    }
    return c;
}

// Inverse of a series with constant term +-1 (all our Hilbert series have
// constant term 1, so the inverse stays integral).
inline ZSeries zs_inverse(const ZSeries& a, std::size_t N)
{
    if (a.empty() || (a[0] != 1 && a[0] != -1))
        throw std::invalid_argument("series inverse needs unit constant term");
    ZSeries r(N + 1, 0);
    r[0] = a[0];
    for (std::size_t n = 1; n <= N; ++n) {
        long long acc = 0;
        for (std::size_t k = 1; k <= n; ++k)
            acc += (k < a.size() ? a[k] : 0) * r[n - k];
        r[n] = -a[0] * acc;
    }
    return r;
}

// Hilbert series of a free product from the factor series:
// 1/h_C = 1/h_A + 1/h_B - 1.
inline ZSeries free_product_series(const ZSeries& ha, const ZSeries& hb, std::size_t N)
{
    ZSeries inv = zs_inverse(ha, N);
    ZSeries ib = zs_inverse(hb, N);
    for (std::size_t n = 0; n <= N; ++n)
        inv[n] += ib[n];
    inv[0] -= 1;
    return zs_inverse(inv, N);
}

// Dimension recursion of the one-relator algebra with d generators and one
// quadratic relation carrying a mixed monomial: coefficients of
// 1/(1 - d t + t^2), i.e. a_n = d a_{n-1} - a_{n-2}.
inline ZSeries demushkin_series(std::size_t d, std::size_t N)
{
    ZSeries s(N + 1, 0);
    s[0] = 1;
    if (N >= 1)
        s[1] = static_cast<long long>(d);
    for (std::size_t n = 2; n <= N; ++n)
        s[n] = static_cast<long long>(d) * s[n - 1] - s[n - 2];
    return s;
}

// Coefficients of 1/(1 - d t): the free associative algebra on d generators.
inline ZSeries free_series(std::size_t d, std::size_t N)
{
    ZSeries s(N + 1, 0);
    s[0] = 1;
    for (std::size_t n = 1; n <= N; ++n)
        s[n] = s[n - 1] * static_cast<long long>(d);
    return s;
}

} // namespace qkoszul

#endif
