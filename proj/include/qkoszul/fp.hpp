#ifndef QKOSZUL_FP_HPP
#define QKOSZUL_FP_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qkoszul {

// Residue arithmetic modulo a small prime p.  Residues are kept in [0, p)
// as plain unsigned integers; the modulus travels with the containers
// (matrices, polynomials), not with the scalars.

inline bool is_prime(unsigned n)
{
    if (n < 2)
        return false;
    for (unsigned q = 2; q * q <= n; ++q)
        if (n % q == 0)
            return false;
    return true;
}

inline void require_prime(unsigned p)
{
    if (!is_prime(p))
        throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
}

inline unsigned fp_normalize(long long a, unsigned p)
{
    long long r = a % static_cast<long long>(p);
    if (r < 0)
        r += p;
    return static_cast<unsigned>(r);
}

inline unsigned fp_add(unsigned a, unsigned b, unsigned p)
{
    unsigned s = a + b;
    return s >= p ? s - p : s;
}

inline unsigned fp_sub(unsigned a, unsigned b, unsigned p)
{
    return a >= b ? a - b : a + p - b;
}

inline unsigned fp_neg(unsigned a, unsigned p)
{
    return a == 0 ? 0u : p - a;
}

inline unsigned fp_mul(unsigned a, unsigned b, unsigned p)
{
    return static_cast<unsigned>(static_cast<std::uint64_t>(a) * b % p);
}

inline unsigned fp_pow(unsigned a, unsigned long long e, unsigned p)
{
    unsigned r = 1 % p;
    unsigned base = a % p;
    while (e) {
        if (e & 1)
            r = fp_mul(r, base, p);
        base = fp_mul(base, base, p);
        e >>= 1;
    }
    return r;
}

inline unsigned fp_inv(unsigned a, unsigned p)
{
    if (a % p == 0)
        throw std::domain_error("inverse of zero modulo " + std::to_string(p));
    return fp_pow(a, p - 2, p); // Fermat; p is prime
}

} // namespace qkoszul

#endif
