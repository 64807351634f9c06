#ifndef QKOSZUL_QUADRATIC_HPP
#define QKOSZUL_QUADRATIC_HPP

#include "qkoszul/fp_matrix.hpp"
#include "qkoszul/rewriting.hpp"

#include <algorithm>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qkoszul {

// dims[n] = dim A_n for n = 0..N
using GradedDims = std::vector<unsigned long long>;

// Quadratic presentation T(V)/<Omega> over F_p: d generators spanning V,
// Omega a subspace of V (x) V held as the RREF basis of coefficient
// vectors of length d^2.  The coefficient of X_i X_j sits at slot i*d+j.
// Equality of presentations is equality of these canonical forms.
class QuadraticPresentation {
public:
    QuadraticPresentation(unsigned p, std::size_t d, const FpMatrix& omega,
                          std::vector<std::string> labels = {})
        : p_(p), d_(d), omega_(row_space_basis(omega)), labels_(std::move(labels))
    {
        require_prime(p);
        if (omega.p() != p || omega.cols() != d * d)
            throw std::invalid_argument("omega rows must have length d^2 over the same prime");
        if (labels_.empty())
            labels_ = default_names(d, "X");
        if (labels_.size() != d)
            throw std::invalid_argument("label count mismatch");
    }

    unsigned p() const { return p_; }
    std::size_t generator_count() const { return d_; }
    const FpMatrix& omega() const { return omega_; }
    std::size_t relation_count() const { return omega_.rows(); }
    const std::vector<std::string>& labels() const { return labels_; }

    QuadraticPresentation with_labels(std::vector<std::string> labels) const
    {
        return QuadraticPresentation(p_, d_, omega_, std::move(labels));
    }

    std::vector<HomogeneousPoly> relations() const
    {
        std::vector<HomogeneousPoly> rels;
        rels.reserve(omega_.rows());
        for (std::size_t r = 0; r < omega_.rows(); ++r) {
            HomogeneousPoly f(p_, 2);
            for (std::size_t i = 0; i < d_; ++i)
                for (std::size_t j = 0; j < d_; ++j) {
                    unsigned c = omega_.at(r, i * d_ + j);
                    if (c)
                        f.add_term(Monomial({static_cast<unsigned>(i), static_cast<unsigned>(j)}), c);
                }
            rels.push_back(std::move(f));
        }
        return rels;
    }

private:
    unsigned p_;
    std::size_t d_;
    FpMatrix omega_;
    std::vector<std::string> labels_;
};

// Labels are presentation metadata; equality compares p, d and the
// canonical relation subspace only.
inline bool equal_presentations(const QuadraticPresentation& a, const QuadraticPresentation& b)
{
    return a.p() == b.p() && a.generator_count() == b.generator_count() && a.omega() == b.omega();
}

inline FpMatrix omega_from_polys(unsigned p, std::size_t d, const std::vector<HomogeneousPoly>& rels)
{
    FpMatrix m(p, rels.size(), d * d);
    for (std::size_t r = 0; r < rels.size(); ++r) {
        if (rels[r].degree() != 2)
            throw std::invalid_argument("quadratic relations must have degree 2");
        for (const auto& [mono, c] : rels[r].terms()) {
            if (mono.word[0] >= d || mono.word[1] >= d)
                throw std::invalid_argument("relation mentions a generator beyond d");
            m.at(r, mono.word[0] * d + mono.word[1]) = c;
        }
    }
    return m;
}

inline QuadraticPresentation presentation_from_relations(unsigned p, std::size_t d,
                                                         const std::vector<HomogeneousPoly>& rels,
                                                         std::vector<std::string> labels = {})
{
    return QuadraticPresentation(p, d, omega_from_polys(p, d, rels), std::move(labels));
}

// --- catalog constructors ---

inline QuadraticPresentation free_presentation(unsigned p, std::size_t d)
{
    return QuadraticPresentation(p, d, FpMatrix(p, 0, d * d));
}

inline QuadraticPresentation trivial_presentation(unsigned p, std::size_t d)
{
    return QuadraticPresentation(p, d, FpMatrix::identity(p, d * d));
}

inline QuadraticPresentation symmetric_presentation(unsigned p, std::size_t d)
{
    std::vector<HomogeneousPoly> rels;
    for (unsigned i = 0; i < d; ++i)
        for (unsigned j = i + 1; j < d; ++j) {
            HomogeneousPoly f(p, 2);
            f.add_term(Monomial({i, j}), 1);
            f.add_term(Monomial({j, i}), -1);
            rels.push_back(std::move(f));
        }
    return presentation_from_relations(p, d, rels);
}

inline QuadraticPresentation exterior_presentation(unsigned p, std::size_t d)
{
    std::vector<HomogeneousPoly> rels;
    for (unsigned i = 0; i < d; ++i) {
        HomogeneousPoly sq(p, 2);
        sq.add_term(Monomial({i, i}), 1);
        rels.push_back(std::move(sq));
        for (unsigned j = i + 1; j < d; ++j) {
            HomogeneousPoly f(p, 2);
            f.add_term(Monomial({i, j}), 1);
            f.add_term(Monomial({j, i}), 1);
            rels.push_back(std::move(f));
        }
    }
    return presentation_from_relations(p, d, rels);
}

enum class DemushkinCase { a, b, c };

inline char demushkin_case_letter(DemushkinCase c)
{
    switch (c) {
    case DemushkinCase::a: return 'a';
    case DemushkinCase::b: return 'b';
    case DemushkinCase::c: return 'c';
    }
    return '?';
}

// The one-relator normal forms: (a) a sum of disjoint commutators,
// (b) X1^2 + [X1,X2] + disjoint commutators (p = 2, d even),
// (c) X1^2 + disjoint commutators on X2.. (p = 2, d odd).
// The degenerate one-generator algebra F_2[X1]/(X1^2) appears as d = 1.
inline HomogeneousPoly demushkin_relation(unsigned p, std::size_t d, DemushkinCase c)
{
    require_prime(p);
    HomogeneousPoly f(p, 2);
    auto add_comm = [&](unsigned i, unsigned j) {
        f.add_term(Monomial({i, j}), 1);
        f.add_term(Monomial({j, i}), -1);
    };
    switch (c) {
    case DemushkinCase::a:
        if (d == 1 && p == 2) {
            f.add_term(Monomial({0, 0}), 1);
            return f;
        }
        if (d == 0 || d % 2 != 0)
            throw std::invalid_argument("normal form (a) needs an even number of generators");
        for (unsigned k = 0; 2 * k + 1 < d; ++k)
            add_comm(2 * k, 2 * k + 1);
        return f;
    case DemushkinCase::b:
        if (p != 2)
            throw std::invalid_argument("normal form (b) needs p = 2");
        if (d == 0 || d % 2 != 0)
            throw std::invalid_argument("normal form (b) needs an even number of generators");
        f.add_term(Monomial({0, 0}), 1);
        for (unsigned k = 0; 2 * k + 1 < d; ++k)
            add_comm(2 * k, 2 * k + 1);
        return f;
    case DemushkinCase::c:
        if (p != 2)
            throw std::invalid_argument("normal form (c) needs p = 2");
        if (d % 2 != 1)
            throw std::invalid_argument("normal form (c) needs an odd number of generators");
        f.add_term(Monomial({0, 0}), 1);
        for (unsigned k = 1; 2 * k < d; ++k)
            add_comm(2 * k - 1, 2 * k);
        return f;
    }
    throw std::logic_error("unreachable");
}

inline QuadraticPresentation demushkin_normal(unsigned p, std::size_t d, DemushkinCase c)
{
    return presentation_from_relations(p, d, {demushkin_relation(p, d, c)});
}

// --- duality and products ---

inline QuadraticPresentation quadratic_dual(const QuadraticPresentation& a,
                                            const std::string& label_prefix = "a")
{
    const std::size_t d = a.generator_count();
    FpMatrix perp = annihilator(a.omega(), d * d);
    if (perp.rows() + a.omega().rows() != d * d)
        throw std::logic_error("annihilator dimension law violated");
    return QuadraticPresentation(a.p(), d, perp, default_names(d, label_prefix));
}

namespace detail {
inline void embed_block(FpMatrix& dst, std::size_t& row, const FpMatrix& omega, std::size_t da,
                        std::size_t d, std::size_t shift)
{
    for (std::size_t r = 0; r < omega.rows(); ++r) {
        for (std::size_t i = 0; i < da; ++i)
            for (std::size_t j = 0; j < da; ++j)
                dst.at(row, (i + shift) * d + (j + shift)) = omega.at(r, i * da + j);
        ++row;
    }
}

// Concatenate the factor labels, renaming right-hand collisions so the
// result is a valid generator list.
inline std::vector<std::string> joined_labels(const QuadraticPresentation& a,
                                              const QuadraticPresentation& b)
{
    std::vector<std::string> ls = a.labels();
    for (const auto& label : b.labels()) {
        std::string candidate = label;
        unsigned k = 2;
        while (std::find(ls.begin(), ls.end(), candidate) != ls.end())
            candidate = label + "_" + std::to_string(k++);
        ls.push_back(candidate);
    }
    return ls;
}
} // namespace detail

// Free product: relations of both factors, nothing mixing the two
// generator blocks.
inline QuadraticPresentation free_product(const QuadraticPresentation& a,
                                          const QuadraticPresentation& b)
{
    if (a.p() != b.p())
        throw std::invalid_argument("free product over different primes");
    const std::size_t da = a.generator_count(), db = b.generator_count(), d = da + db;
    FpMatrix omega(a.p(), a.relation_count() + b.relation_count(), d * d);
    std::size_t row = 0;
    detail::embed_block(omega, row, a.omega(), da, d, 0);
    detail::embed_block(omega, row, b.omega(), db, d, da);
    return QuadraticPresentation(a.p(), d, omega, detail::joined_labels(a, b));
}

// Direct product: additionally every mixed product of the two blocks dies.
inline QuadraticPresentation direct_product(const QuadraticPresentation& a,
                                            const QuadraticPresentation& b)
{
    if (a.p() != b.p())
        throw std::invalid_argument("direct product over different primes");
    const std::size_t da = a.generator_count(), db = b.generator_count(), d = da + db;
    FpMatrix omega(a.p(), a.relation_count() + b.relation_count() + 2 * da * db, d * d);
    std::size_t row = 0;
    detail::embed_block(omega, row, a.omega(), da, d, 0);
    detail::embed_block(omega, row, b.omega(), db, d, da);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j) {
            omega.at(row++, i * d + (da + j)) = 1;
            omega.at(row++, (da + j) * d + i) = 1;
        }
    return QuadraticPresentation(a.p(), d, omega, detail::joined_labels(a, b));
}

namespace detail {
inline QuadraticPresentation tensor_product(const QuadraticPresentation& a,
                                            const QuadraticPresentation& b, long long sign)
{
    if (a.p() != b.p())
        throw std::invalid_argument("tensor product over different primes");
    const unsigned p = a.p();
    const std::size_t da = a.generator_count(), db = b.generator_count(), d = da + db;
    FpMatrix omega(p, a.relation_count() + b.relation_count() + da * db, d * d);
    std::size_t row = 0;
    embed_block(omega, row, a.omega(), da, d, 0);
    embed_block(omega, row, b.omega(), db, d, da);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j) {
            omega.at(row, i * d + (da + j)) = 1;
            omega.at(row, (da + j) * d + i) = fp_normalize(-sign, p);
            ++row;
        }
    return QuadraticPresentation(p, d, omega, joined_labels(a, b));
}
} // namespace detail

// Commutative tensor product: mixed generators commute (a b - b a dies).
inline QuadraticPresentation tensor1(const QuadraticPresentation& a,
                                     const QuadraticPresentation& b)
{
    return detail::tensor_product(a, b, 1);
}

// Skew-commutative tensor product: mixed generators anticommute.
inline QuadraticPresentation tensor_minus1(const QuadraticPresentation& a,
                                           const QuadraticPresentation& b)
{
    return detail::tensor_product(a, b, -1);
}

// --- basis change ---

// Substitute X_i -> sum_k P[i][k] X_k in every relation: coefficient
// matrices transform as C -> P^T C P.  P must be invertible.
inline QuadraticPresentation apply_basis_change(const QuadraticPresentation& a, const FpMatrix& P)
{
    const std::size_t d = a.generator_count();
    if (P.p() != a.p() || P.rows() != d || P.cols() != d)
        throw std::invalid_argument("basis change matrix has wrong shape");
    if (!is_invertible(P))
        throw std::domain_error("basis change matrix is singular");
    const unsigned p = a.p();
    FpMatrix omega(p, a.relation_count(), d * d);
    const FpMatrix Pt = transpose(P);
    for (std::size_t r = 0; r < a.relation_count(); ++r) {
        FpMatrix C(p, d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                C.at(i, j) = a.omega().at(r, i * d + j);
        FpMatrix Cn = mat_mul(mat_mul(Pt, C), P);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                omega.at(r, i * d + j) = Cn.at(i, j);
    }
    return QuadraticPresentation(p, d, omega, a.labels());
}

// --- graded dimensions ---

inline RewritingSystem rewriting_of(const QuadraticPresentation& a, std::size_t max_degree)
{
    return RewritingSystem::complete(a.p(), a.generator_count(), a.relations(),
                                     std::max<std::size_t>(max_degree, 2));
}

inline GradedDims graded_dims(const QuadraticPresentation& a, std::size_t N)
{
    RewritingSystem rs = rewriting_of(a, N);
    GradedDims dims(N + 1, 0);
    for (std::size_t n = 0; n <= N; ++n)
        dims[n] = rs.normal_monomial_count(n);
    return dims;
}

// --- serialization (algebra file format) ---

inline std::string to_algebra_file(const QuadraticPresentation& a)
{
    std::string out = "p = " + std::to_string(a.p()) + "\n";
    out += "generators =";
    for (const auto& l : a.labels())
        out += " " + l;
    out += "\n";
    for (const auto& rel : a.relations())
        out += "relation = " + to_string(rel, a.labels()) + "\n";
    return out;
}

} // namespace qkoszul

#endif
