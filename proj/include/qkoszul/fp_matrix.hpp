#ifndef QKOSZUL_FP_MATRIX_HPP
#define QKOSZUL_FP_MATRIX_HPP

#include "qkoszul/fp.hpp"

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qkoszul {

// Dense exact matrix over F_p.  Dimensions at play never exceed a few
// hundred, so everything is row-major unsigned storage with Gauss-Jordan
// on top.  Values are immutable for callers once built; all operations
// below return fresh matrices.
class FpMatrix {
public:
    FpMatrix(unsigned p, std::size_t rows, std::size_t cols)
        : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0)
    {
        require_prime(p);
    }

    FpMatrix(unsigned p, std::initializer_list<std::initializer_list<long long>> rows)
        : p_(p), rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0)
    {
        require_prime(p);
        a_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_)
                throw std::invalid_argument("ragged initializer for FpMatrix");
            for (long long v : r)
                a_.push_back(fp_normalize(v, p_));
        }
    }

    static FpMatrix identity(unsigned p, std::size_t n)
    {
        FpMatrix m(p, n, n);
        for (std::size_t i = 0; i < n; ++i)
            m.at(i, i) = 1 % p;
        return m;
    }

    unsigned p() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    unsigned& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    unsigned at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    std::vector<unsigned> row(std::size_t r) const
    {
        return std::vector<unsigned>(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_);
    }

    void set_row(std::size_t r, const std::vector<unsigned>& v)
    {
        if (v.size() != cols_)
            throw std::invalid_argument("row length mismatch");
        for (std::size_t c = 0; c < cols_; ++c)
            a_[r * cols_ + c] = v[c] % p_;
    }

    bool operator==(const FpMatrix& o) const
    {
        return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const FpMatrix& o) const { return !(*this == o); }

private:
    unsigned p_;
    std::size_t rows_, cols_;
    std::vector<unsigned> a_;
};

struct RrefResult {
    FpMatrix mat;
    std::vector<std::size_t> pivots; // pivot column indices, increasing
    std::size_t rank;
};

// Reduced row-echelon form over F_p; row space is preserved.
inline RrefResult rref(const FpMatrix& m)
{
    FpMatrix a = m;
    const unsigned p = a.p();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t sel = r;
        while (sel < a.rows() && a.at(sel, c) == 0)
            ++sel;
        if (sel == a.rows())
            continue;
        if (sel != r)
            for (std::size_t k = 0; k < a.cols(); ++k)
                std::swap(a.at(sel, k), a.at(r, k));
        const unsigned inv = fp_inv(a.at(r, c), p);
        for (std::size_t k = c; k < a.cols(); ++k)
            a.at(r, k) = fp_mul(a.at(r, k), inv, p);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a.at(i, c) == 0)
                continue;
            const unsigned f = a.at(i, c);
            for (std::size_t k = c; k < a.cols(); ++k)
                a.at(i, k) = fp_sub(a.at(i, k), fp_mul(f, a.at(r, k), p), p);
        }
        pivots.push_back(c);
        ++r;
    }
    return RrefResult{std::move(a), std::move(pivots), r};
}

inline std::size_t rank(const FpMatrix& m) { return rref(m).rank; }

// Rows of the result form the canonical (RREF) basis of the row space.
inline FpMatrix row_space_basis(const FpMatrix& m)
{
    RrefResult r = rref(m);
    FpMatrix b(m.p(), r.rank, m.cols());
    for (std::size_t i = 0; i < r.rank; ++i)
        b.set_row(i, r.mat.row(i));
    return b;
}

inline bool same_row_space(const FpMatrix& a, const FpMatrix& b)
{
    return a.p() == b.p() && a.cols() == b.cols() && row_space_basis(a) == row_space_basis(b);
}

// Basis of the right kernel {v : m v = 0}, one vector per row, in RREF.
inline FpMatrix nullspace(const FpMatrix& m)
{
    const unsigned p = m.p();
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : r.pivots)
        is_pivot[c] = true;
    FpMatrix ker(p, m.cols() - r.rank, m.cols());
    std::size_t kr = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_pivot[c])
            continue;
        ker.at(kr, c) = 1;
        for (std::size_t i = 0; i < r.rank; ++i)
            ker.at(kr, r.pivots[i]) = fp_neg(r.mat.at(i, c), p);
        ++kr;
    }
    return row_space_basis(ker);
}

// Annihilator of a subspace under the standard dot-product pairing on
// F_p^ambient: all functionals vanishing on every row of `subspace`.
inline FpMatrix annihilator(const FpMatrix& subspace, std::size_t ambient_dim)
{
    if (subspace.cols() != ambient_dim)
        throw std::invalid_argument("subspace rows must have length ambient_dim");
    return nullspace(subspace);
}

inline FpMatrix transpose(const FpMatrix& m)
{
    FpMatrix t(m.p(), m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            t.at(j, i) = m.at(i, j);
    return t;
}

inline FpMatrix mat_mul(const FpMatrix& a, const FpMatrix& b)
{
    if (a.p() != b.p() || a.cols() != b.rows())
        throw std::invalid_argument("matrix product shape/modulus mismatch");
    const unsigned p = a.p();
    FpMatrix c(p, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const unsigned f = a.at(i, k);
            if (f == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c.at(i, j) = fp_add(c.at(i, j), fp_mul(f, b.at(k, j), p), p);
        }
    return c;
}

inline std::vector<unsigned> mat_apply(const FpMatrix& m, const std::vector<unsigned>& v)
{
    if (v.size() != m.cols())
        throw std::invalid_argument("vector length mismatch");
    std::vector<unsigned> out(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        unsigned acc = 0;
        for (std::size_t j = 0; j < m.cols(); ++j)
            acc = fp_add(acc, fp_mul(m.at(i, j), v[j], m.p()), m.p());
        out[i] = acc;
    }
    return out;
}

inline bool is_invertible(const FpMatrix& m)
{
    return m.rows() == m.cols() && rank(m) == m.rows();
}

inline FpMatrix inverse(const FpMatrix& m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = m.rows();
    FpMatrix aug(m.p(), n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    RrefResult r = rref(aug);
    if (r.rank != n || r.pivots[n - 1] != n - 1)
        throw std::domain_error("matrix is singular");
    FpMatrix inv(m.p(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv.at(i, j) = r.mat.at(i, n + j);
    return inv;
}

// Stack b's rows below a's.
inline FpMatrix vstack(const FpMatrix& a, const FpMatrix& b)
{
    if (a.p() != b.p() || a.cols() != b.cols())
        throw std::invalid_argument("vstack shape/modulus mismatch");
    FpMatrix c(a.p(), a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        c.set_row(i, a.row(i));
    for (std::size_t i = 0; i < b.rows(); ++i)
        c.set_row(a.rows() + i, b.row(i));
    return c;
}

} // namespace qkoszul

#endif
